#include "doctest.h"

#include "hecke/congruence.hpp"

#include <map>
#include <random>
#include <set>

using namespace hecke;

namespace {

struct Fixture {
    const MinPoly& p = MinPoly::get(5);
    RingElement five = RingElement::integer(MinPoly::get(5), 5);
    RingElement pi = RingElement(MinPoly::get(5), {Int(2), Int(1)});
    FiniteRing mod5{five};
    FiniteRing mod_pi{pi};
    FiniteMatrixGroup q5 = image_group({GroupElement::gen_S(5), GroupElement::gen_T(5)}, mod5);
    FiniteMatrixGroup q_pi = image_group({GroupElement::gen_S(5), GroupElement::gen_T(5)}, mod_pi);
};

Fixture& fx() {
    static Fixture f;
    return f;
}

Word random_word(std::mt19937& rng, int len) {
    std::uniform_int_distribution<int> d(0, 2);
    Word w;
    while (static_cast<int>(w.size()) < len) w.push(static_cast<Letter>(d(rng)));
    return w;
}

// representative of a kernel element congruent to +I mod (lambda+2);
// exactly one of +-m qualifies
std::array<Residue, 4> rep_congruent_to_identity(const ProjectiveResidueMatrix& m) {
    const FiniteRing& R5 = fx().mod5;
    const FiniteRing& Rpi = fx().mod_pi;
    auto is_plus = [&](const std::array<Residue, 4>& e) {
        return Rpi.reduce(R5.lift(e[0])) == Rpi.one() && Rpi.is_zero(Rpi.reduce(R5.lift(e[1]))) &&
               Rpi.is_zero(Rpi.reduce(R5.lift(e[2]))) && Rpi.reduce(R5.lift(e[3])) == Rpi.one();
    };
    if (is_plus(m.e)) return m.e;
    std::array<Residue, 4> neg = {R5.neg(m.e[0]), R5.neg(m.e[1]), R5.neg(m.e[2]), R5.neg(m.e[3])};
    REQUIRE(is_plus(neg));
    return neg;
}

} // namespace

TEST_CASE("matrix reduction examples") {
    const FiniteRing& R5 = fx().mod5;
    CHECK(prm_is_identity(R5, reduce_matrix(GroupElement::identity(5), R5)));

    GroupElement a = witness_a_q5();
    CHECK(reduce_matrix(a, R5) == shifted_identity_mod5(R5, 4, 0, 4, 1));
    CHECK(prm_is_identity(fx().mod_pi, reduce_matrix(a, fx().mod_pi)));

    // conjugates per the displayed residue forms
    CHECK(reduce_matrix(witness_b_q5(), R5) == shifted_identity_mod5(R5, 1, 1, 0, 4));
    CHECK(reduce_matrix(witness_c_q5(), R5) == shifted_identity_mod5(R5, 1, 4, 0, 4));
}

TEST_CASE("congruence membership") {
    GroupElement a = witness_a_q5();
    CHECK(is_congruence_member(a, fx().pi));
    CHECK(!is_congruence_member(a, fx().five));
    CHECK(is_congruence_member(GroupElement::identity(5), fx().five));
    CHECK(is_congruence_member(GroupElement::identity(5), fx().pi));
    CHECK(!is_congruence_member(GroupElement::gen_T(5), fx().five));
}

TEST_CASE("matrix reduction is a projective homomorphism") {
    std::mt19937 rng(2718);
    for (int i = 0; i < 1000; ++i) {
        GroupElement g = eval_word(random_word(rng, 10), 5);
        GroupElement h = eval_word(random_word(rng, 10), 5);
        for (const FiniteRing* R : {&fx().mod5, &fx().mod_pi}) {
            CHECK(reduce_matrix(g * h, *R) == prm_mul(*R, reduce_matrix(g, *R), reduce_matrix(h, *R)));
        }
    }
}

TEST_CASE("quotient orders by closure") {
    CHECK(fx().q_pi.order() == 60);
    CHECK(fx().q5.order() == 7500);

    FiniteRing triv(RingElement::one(fx().p));
    CHECK(image_group({GroupElement::gen_S(5), GroupElement::gen_T(5)}, triv).order() == 1);

    // the closure contains the generators and is closed under inverse
    CHECK(fx().q5.contains(reduce_matrix(GroupElement::gen_S(5), fx().mod5)));
    CHECK(fx().q5.contains(prm_inverse(fx().mod5, reduce_matrix(GroupElement::gen_T(5), fx().mod5))));
}

TEST_CASE("BFS cap is honored") {
    CHECK_THROWS_AS(image_group({GroupElement::gen_S(5), GroupElement::gen_T(5)}, fx().mod5, 100),
                    CapExceeded);
}

TEST_CASE("kernel structure") {
    KernelReport k = kernel_structure(fx().q5, fx().mod_pi);
    CHECK(k.order == 125);
    CHECK(k.abelian);
    CHECK(k.exponent == 5);
    CHECK(k.generated_by_delta);
    CHECK(fx().q5.order() == fx().q_pi.order() * k.order);

    // every kernel element has order dividing 5; the kernel is its own center
    const FiniteRing& R = fx().mod5;
    for (const auto& m : k.elements) {
        ProjectiveResidueMatrix pow = m;
        for (int i = 1; i < 5; ++i) pow = prm_mul(R, pow, m);
        CHECK(prm_is_identity(R, pow));
    }
}

TEST_CASE("multiplication of near-identity elements is addition of shifts") {
    // (I + pi U)(I + pi V) = I + pi (U + V) mod 5, checked on all kernel pairs
    KernelReport k = kernel_structure(fx().q5, fx().mod_pi);
    const FiniteRing& R = fx().mod5;
    auto id = prm_identity(R);
    for (const auto& x : k.elements) {
        auto xe = rep_congruent_to_identity(x);
        for (const auto& y : k.elements) {
            auto ye = rep_congruent_to_identity(y);
            // x y - I == (x - I) + (y - I), entrywise
            auto xy = prm_mul(R, x, y);
            auto xye = rep_congruent_to_identity(xy);
            bool ok = true;
            for (int i = 0; i < 4; ++i) {
                Residue sum = R.sub(R.add(xe[i], ye[i]), id.e[i]);
                if (!(xye[i] == sum)) ok = false;
            }
            CHECK(ok);
        }
    }
}

TEST_CASE("r, s, t relations and the conjugation table") {
    RstReport r = rst_relations(fx().q5, fx().mod_pi);
    CHECK(r.forms_match);
    CHECK(r.spans_kernel);

    // Exact arithmetic refutes exactly one tabulated identity: conjugating
    // r by T yields r s t^2, not r s^-1 t^2 (the remaining eight hold).
    CHECK(!r.identities_hold);
    CHECK(r.failed == std::vector<std::string>{"r^T = r s^-1 t^2"});
    CHECK(r.corrected_rT_holds);
    CHECK(!r.note.empty());

    // independent route for the corrected entry: exact conjugation in
    // Z[lambda] of the full product matrices, reduced once at the end
    const FiniteRing& R = fx().mod5;
    GroupElement a = witness_a_q5(), b = witness_b_q5(), c = witness_c_q5();
    GroupElement re = (a * c) * (a * b);
    GroupElement se = (a * c) * (a * b).inverse();
    GroupElement te = b * c;
    GroupElement T = GroupElement::gen_T(5);
    CHECK(reduce_matrix(T * re * T.inverse(), R) == reduce_matrix(re * se * te * te, R));
    CHECK(!(reduce_matrix(T * re * T.inverse(), R) == reduce_matrix(re * se.inverse() * te * te, R)));
}

TEST_CASE("invariant subgroup scan") {
    SubgroupScanResult s = invariant_subgroup_scan(fx().q5, fx().mod_pi);
    CHECK(s.candidates == 64);
    CHECK(static_cast<int>(s.candidate_descriptions.size()) == 64);
    CHECK(s.invariant == 2);
    CHECK(s.only_trivial_and_full);
}

TEST_CASE("the span of s and t is not invariant") {
    // order-25 subgroup <s, t>: conjugating s by S lands outside it
    const FiniteRing& R = fx().mod5;
    RstReport rst = rst_relations(fx().q5, fx().mod_pi);
    FiniteMatrixGroup st(R, {rst.s, rst.t}, 100000);
    CHECK(st.order() == 25);
    auto Sm = reduce_matrix(GroupElement::gen_S(5), R);
    auto img = prm_mul(R, prm_mul(R, Sm, rst.s), prm_inverse(R, Sm));
    CHECK(!st.contains(img)); // s^S = r^-1 introduces r
}

TEST_CASE("scan cross-check: all subgroups arise as closures of singletons and pairs") {
    KernelReport k = kernel_structure(fx().q5, fx().mod_pi);
    const FiniteRing& R = fx().mod5;
    std::set<std::set<std::vector<std::int64_t>>> subgroups;
    auto closure_set = [&](std::vector<ProjectiveResidueMatrix> gens) {
        FiniteMatrixGroup g(R, std::move(gens), 100000);
        std::set<std::vector<std::int64_t>> keys;
        for (const auto& m : g.elements()) keys.insert(m.flatten());
        return keys;
    };
    subgroups.insert(closure_set({}));
    for (const auto& x : k.elements) subgroups.insert(closure_set({x}));
    for (const auto& x : k.elements)
        for (const auto& y : k.elements) subgroups.insert(closure_set({x, y}));
    // (Z/5)^3 has 1 + 31 + 31 subgroups of order <= 25; with the full group,
    // pairs cannot generate more than order 25, so add it separately
    CHECK(subgroups.size() == 63);
    std::set<std::vector<std::int64_t>> full;
    for (const auto& m : k.elements) full.insert(m.flatten());
    subgroups.insert(full);
    CHECK(subgroups.size() == 64);
}

TEST_CASE("scan result is independent of the representative residues") {
    // conjugating by -S or -T (the other projective representatives) is the
    // same map; rerunning the scan with them must not change anything
    SubgroupScanResult s1 = invariant_subgroup_scan(fx().q5, fx().mod_pi);
    const FiniteRing& R = fx().mod5;
    auto Sm = reduce_matrix(GroupElement::gen_S(5), R);
    auto neg = canonical_prm(R, {R.neg(Sm.e[0]), R.neg(Sm.e[1]), R.neg(Sm.e[2]), R.neg(Sm.e[3])});
    CHECK(neg == Sm); // canonicalization identifies the representatives
    SubgroupScanResult s2 = invariant_subgroup_scan(fx().q5, fx().mod_pi);
    CHECK(s1.candidates == s2.candidates);
    CHECK(s1.invariant == s2.invariant);
    CHECK(s1.invariant_descriptions == s2.invariant_descriptions);
}

TEST_CASE("no normal subgroup of index 5") {
    AbelianizationScan q5scan = no_normal_index5(fx().q5);
    CHECK(q5scan.group_order == 7500);
    CHECK(q5scan.no_normal_index5);
    CHECK(q5scan.quotient_order % 5 != 0);
    CHECK((q5scan.quotient_order == 1 || q5scan.quotient_order == 2));

    // control: the order-60 quotient is perfect
    AbelianizationScan a5 = no_normal_index5(fx().q_pi);
    CHECK(a5.group_order == 60);
    CHECK(a5.quotient_order == 1);

    // control: a cyclic group of order 5 fails the same test
    FiniteMatrixGroup c5 = image_group({GroupElement::gen_T(5)}, fx().mod_pi);
    AbelianizationScan c5scan = no_normal_index5(c5);
    CHECK(c5scan.group_order == 5);
    CHECK(c5scan.quotient_order == 5);
    CHECK(!c5scan.no_normal_index5);
}

TEST_CASE("the witness matrix product identity holds exactly") {
    const MinPoly& p = fx().p;
    auto e = [&](long long a0, long long a1) { return RingElement(p, {Int(a0), Int(a1)}); };
    GroupElement rhs(p, {e(2, 3), e(-3, -2), e(3, 4), e(-2, -4)});
    auto T = GroupElement::gen_T(5);
    CHECK(T.inverse() * T.inverse() * rhs == witness_a_q5());
}

TEST_CASE("pipeline verdict") {
    Prop52Report rep = prop52_pipeline();
    CHECK(rep.ok);
    CHECK(rep.verdict == "not congruence");
    REQUIRE(rep.legs.size() == 4);
    std::map<std::string, std::string> status;
    for (const auto& leg : rep.legs) status[leg.check] = leg.status;
    CHECK(status.at("geometric-width") == "pass");
    CHECK(status.at("level-premise") == "premise");
    CHECK(status.at("full-image-mod-5") == "pass");
    CHECK(status.at("commutator-containment") == "pass");
}
