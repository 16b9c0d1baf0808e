#pragma once


#include "hecke/fp_enum.hpp"
#include "hecke/group.hpp"

namespace hecke {

/// A cusp of G_q: a fraction num/den over Z[lambda_q] in lowest terms with
/// positive denominator, or one of the symbolic endpoints -oo / oo
/// (den = 0, num = -1 or +1). Projectively the two endpoints are the same
/// point (1 : 0).
struct Cusp {
    RingElement num, den;

    static Cusp infinity(const MinPoly& p, int sign);
    static Cusp fraction(RingElement num, RingElement den); // reduced to lowest terms
    bool is_infinite() const { return den.is_zero(); }
    bool same_point(const Cusp& o) const; // projective equality (-oo == oo)
    std::string to_string() const;
};

/// Total order of symbol vertices: -oo < finite reals < oo.
int cusp_compare(const Cusp& a, const Cusp& b);

/// Image of a cusp under a matrix, in lowest terms.
Cusp apply_to_cusp(const GroupElement& g, const Cusp& c);

enum class PairingKind { Even, Odd, Free };

struct Pairing {
    PairingKind kind;
    int label; // free pairings only
    bool operator==(const Pairing& o) const { return kind == o.kind && label == o.label; }
};

/// Parse error with position information.
struct HfsParseError : std::runtime_error {
    HfsParseError(int line, const std::string& token, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line) + ", near '" + token + "': " + what_),
          line(line), token(token) {}
    int line;
    std::string token;
};

/**
 * A Hecke-Farey symbol: the vertex chain [-oo, x1, ..., x_{n-1}, oo] with
 * one pairing label per consecutive pair. Validated on construction:
 * strictly increasing interior vertices in lowest terms, one label per
 * edge, every free label used exactly twice.
 */
struct HeckeFareySymbol {
    int q = 0;
    std::vector<Cusp> vertices;
    std::vector<Pairing> pairings;

    int edges() const { return static_cast<int>(pairings.size()); }
    void validate() const;
};

HeckeFareySymbol parse_hfs(const std::string& text);
std::string serialize_hfs(const HeckeFareySymbol& f);

struct SidePairing {
    GroupElement generator;
    PairingKind kind;
    int edge_from, edge_to; // equal for even/odd; the paired sides for free
};

/// One generator per even/odd edge and one per free pair. The generator of
/// an edge (u, v) is V h V^-1 where V is the group element carrying the
/// base edge (oo, 0) to (u, v), h = S for even edges and h = (S T)^-1 for
/// odd edges; a free pair (i, j) is paired by V_j S V_i^-1.
std::vector<SidePairing> side_pairing_generators(const HeckeFareySymbol& f);

struct InvariantSet {
    long long d = 0, v2 = 0, vq = 0, v_inf = 0, r = 0, genus = 0;
    bool operator==(const InvariantSet& o) const {
        return d == o.d && v2 == o.v2 && vq == o.vq && v_inf == o.v_inf && r == o.r && genus == o.genus;
    }
};

/// (q-2) d = q v2 + 2(q-1) vq + 4q g + 2q v_inf - 4q, as an exact check.
bool riemann_hurwitz_holds(int q, const InvariantSet& inv);

struct CuspClassReport {
    std::vector<int> class_of;        // per vertex, class ids 0..n-1
    int num_classes = 0;
    std::vector<long long> widths;    // per class
    long long geometric_width = 0;    // lcm of the widths
};

/// Full analysis of a symbol: side pairings, the coset table of the
/// subgroup they generate, invariants, and the cusp partition with widths.
struct FareyAnalysis {
    HeckeFareySymbol symbol;
    std::vector<SidePairing> generators;
    CosetTable table;
    InvariantSet invariants;
    CuspClassReport cusps;
};

FareyAnalysis analyze(const HeckeFareySymbol& f);

/// The five order-2 side pairings of the index-q power subgroup for q = 5.
std::vector<GroupElement> power_subgroup_generators_q5();

/// Reconstructs the all-even pentagon symbol of the q = 5 power subgroup
/// from its involutions, by chaining edge images from -oo; validates that
/// each involution swaps its edge's endpoints.
HeckeFareySymbol derive_power_subgroup_symbol_q5();

} // namespace hecke
