#pragma once

#include <unordered_map>

#include "hecke/farey.hpp"

namespace hecke {

/// A 2x2 matrix of residues with determinant 1, identified with its
/// negative; the stored representative is the lexicographically smaller of
/// the two residue encodings.
struct ProjectiveResidueMatrix {
    std::array<Residue, 4> e;

    bool operator==(const ProjectiveResidueMatrix& o) const { return e == o.e; }
    std::vector<std::int64_t> flatten() const;
};

struct PrmHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : v) h = hash_combine(h, std::hash<std::int64_t>()(static_cast<std::int64_t>(x)));
        return h;
    }
};

ProjectiveResidueMatrix canonical_prm(const FiniteRing& R, std::array<Residue, 4> e);
ProjectiveResidueMatrix reduce_matrix(const GroupElement& g, const FiniteRing& R);
ProjectiveResidueMatrix reduce_improper(const Mat2& m, const FiniteRing& R);
ProjectiveResidueMatrix prm_mul(const FiniteRing& R, const ProjectiveResidueMatrix& a, const ProjectiveResidueMatrix& b);
ProjectiveResidueMatrix prm_inverse(const FiniteRing& R, const ProjectiveResidueMatrix& a);
ProjectiveResidueMatrix prm_identity(const FiniteRing& R);
bool prm_is_identity(const FiniteRing& R, const ProjectiveResidueMatrix& a);

/// True iff g is congruent to +-I entrywise modulo (alpha).
bool is_congruence_member(const GroupElement& g, const RingElement& alpha);

/**
 * A finite group of projective residue matrices, closed under products,
 * built by breadth-first closure from its generators. Element order is the
 * deterministic discovery order.
 */
class FiniteMatrixGroup {
public:
    FiniteMatrixGroup(const FiniteRing& ring, std::vector<ProjectiveResidueMatrix> generators,
                      long long cap = -1);

    const FiniteRing& ring() const { return *ring_; }
    const std::vector<ProjectiveResidueMatrix>& elements() const { return elements_; }
    const std::vector<ProjectiveResidueMatrix>& generators() const { return gens_; }
    std::size_t order() const { return elements_.size(); }
    bool contains(const ProjectiveResidueMatrix& m) const;

private:
    const FiniteRing* ring_;
    std::vector<ProjectiveResidueMatrix> gens_;
    std::vector<ProjectiveResidueMatrix> elements_;
    std::unordered_map<std::vector<std::int64_t>, int, PrmHash> index_;
};

/// BFS closure of the reductions of `generators` modulo (alpha).
FiniteMatrixGroup image_group(const std::vector<GroupElement>& generators,
                              const FiniteRing& ring, long long cap = -1);

/// The congruence witness a of the mod-(lambda+2) level (with its defining
/// product form verified in tests), plus b = S a S^-1 and c = J a J^-1.
GroupElement witness_a_q5();
GroupElement witness_b_q5();
GroupElement witness_c_q5();

/// I + (lambda+2) U for an integer matrix U, as a canonical residue matrix
/// (mod-5 ring expected).
ProjectiveResidueMatrix shifted_identity_mod5(const FiniteRing& R, long long u11, long long u12,
                                              long long u21, long long u22);

struct KernelReport {
    std::size_t order = 0;
    bool abelian = false;
    int exponent = 0;
    bool generated_by_delta = false;
    std::vector<ProjectiveResidueMatrix> elements;
};

/// The kernel of Q5 -> Q_pi (reduction mod 5 followed by reduction mod
/// lambda+2): order 125, elementary abelian, generated by the images of
/// {a, b, c}.
KernelReport kernel_structure(const FiniteMatrixGroup& q5, const FiniteRing& mod_pi);

struct RstReport {
    ProjectiveResidueMatrix r, s, t;
    bool forms_match = false;      // the three displayed residue forms
    bool identities_hold = false;  // all nine conjugation identities as tabulated
    bool spans_kernel = false;     // <r,s,t> = <a,b,c> = kernel
    std::vector<std::string> failed;
    // The tabulated r^T entry does not follow from the a, b, c forms;
    // exact arithmetic gives r^T = r s t^2. Recorded separately so the
    // discrepancy is visible rather than silently corrected.
    bool corrected_rT_holds = false;
    std::string note;
};

RstReport rst_relations(const FiniteMatrixGroup& q5, const FiniteRing& mod_pi);

struct SubgroupScanResult {
    int candidates = 0;     // 64 = all subgroups of (Z/5)^3
    int invariant = 0;      // those closed under conjugation by S, T and J
    bool only_trivial_and_full = false;
    std::vector<std::string> invariant_descriptions;
    std::vector<std::string> candidate_descriptions; // all 64, scan order
};

/// Enumerates every subgroup of the order-125 kernel and tests invariance
/// under conjugation by the residues of S, T and the J twist.
SubgroupScanResult invariant_subgroup_scan(const FiniteMatrixGroup& q5, const FiniteRing& mod_pi);

struct AbelianizationScan {
    std::size_t group_order = 0;
    std::size_t commutator_order = 0;
    Int quotient_order = 0;
    bool no_normal_index5 = false; // abelianization order not divisible by 5
};

/// Brute force: closes the commutators of the generators into the normal
/// commutator subgroup and checks that the abelianization has order prime
/// to 5 (so no normal subgroup of index 5 exists).
AbelianizationScan no_normal_index5(const FiniteMatrixGroup& g);

struct PipelineLeg {
    std::string check;
    std::string status; // pass | fail | premise
    std::string details;
};

struct Prop52Report {
    std::vector<PipelineLeg> legs;
    std::string verdict;
    bool ok = false;
};

/// The chained non-congruence verdict for the index-5 power subgroup and
/// the commutator subgroup of G_5.
Prop52Report prop52_pipeline();

} // namespace hecke
