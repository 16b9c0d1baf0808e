#include "hecke/report.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace hecke {

using json = nlohmann::ordered_json;

std::string tool_version() { return "hecke 0.1.0"; }

std::string data_directory(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    const char* env = std::getenv("HECKE_DATA_DIR");
    if (env && *env) return env;
#ifdef HECKE_DEFAULT_DATA_DIR
    return HECKE_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

HeckeFareySymbol load_symbol(const std::string& dir, const std::string& name) {
    return parse_hfs(read_file(dir + "/catalog/" + name));
}

// Shared expensive objects, built once per process.
struct Context {
    const MinPoly& p5 = MinPoly::get(5);
    FiniteRing mod5{RingElement::integer(MinPoly::get(5), 5)};
    FiniteRing mod_pi{RingElement(MinPoly::get(5), {Int(2), Int(1)})};
    FiniteMatrixGroup q5 = image_group({GroupElement::gen_S(5), GroupElement::gen_T(5)}, mod5);
    FiniteMatrixGroup q_pi = image_group({GroupElement::gen_S(5), GroupElement::gen_T(5)}, mod_pi);
};

Context& ctx() {
    static Context c;
    return c;
}

struct Line {
    std::vector<std::string>& out;
    std::ostringstream os;
    Line(std::vector<std::string>& o) : out(o) {}
    ~Line() { out.push_back(os.str()); }
    template <typename T>
    Line& operator<<(const T& v) {
        os << v;
        return *this;
    }
};

struct CheckDef {
    std::string name;
    std::string anchor;
    // returns pass/fail; fills detail lines
    std::function<bool(const std::string& dir, std::vector<std::string>& out)> fn;
    bool premise = false;
};

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            r -= r / p;
            while (n % p == 0) n /= p;
        }
    if (n > 1) r -= r / n;
    return r;
}

RingElement rand_elem(std::mt19937& rng, int bound = 30) {
    std::uniform_int_distribution<int> d(-bound, bound);
    return RingElement(MinPoly::get(5), {Int(d(rng)), Int(d(rng))});
}

Word random_reduced_word(std::mt19937& rng, int len) {
    std::uniform_int_distribution<int> d(0, 2);
    Word w;
    while (static_cast<int>(w.size()) < len) w.push(static_cast<Letter>(d(rng)));
    return w;
}

std::vector<GroupElement> generator_matrices(const std::vector<SidePairing>& sp) {
    std::vector<GroupElement> out;
    for (const auto& s : sp) out.push_back(s.generator);
    return out;
}

bool same_element_set(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a)
        if (std::find(b.begin(), b.end(), x) == b.end()) return false;
    return true;
}

bool same_prm_set(const FiniteMatrixGroup& a, const FiniteMatrixGroup& b) {
    if (a.order() != b.order()) return false;
    for (const auto& m : a.elements())
        if (!b.contains(m)) return false;
    return true;
}

// --------------------------------------------------------------------------
// check bodies

bool check_minpoly(const std::string&, std::vector<std::string>& out) {
    bool ok = MinPoly::get(3).coeffs() == std::vector<Int>{Int(-1), Int(1)} &&
              MinPoly::get(5).coeffs() == std::vector<Int>{Int(-1), Int(-1), Int(1)} &&
              MinPoly::get(7).coeffs() == std::vector<Int>{Int(1), Int(-2), Int(-1), Int(1)};
    double worst = 0.0;
    for (int q = 3; q <= 23; ++q) {
        const MinPoly& p = MinPoly::get(q);
        if (p.degree() != euler_phi(2 * q) / 2) ok = false;
        double x = 2.0 * std::cos(M_PI / q);
        double v = 0.0;
        for (std::size_t i = p.coeffs().size(); i-- > 0;) v = v * x + p.coeffs()[i].convert_to<double>();
        worst = std::max(worst, std::abs(v));
    }
    Line(out) << "largest |P_q(2cos(pi/q))| for q=3..23: " << worst << " (tolerance 1e-9)";
    return ok && worst < 1e-9;
}

bool check_ring_props(const std::string&, std::vector<std::string>& out) {
    const MinPoly& p = ctx().p5;
    RingElement lam = RingElement::lambda(p);
    RingElement pi = RingElement(p, {Int(2), Int(1)});
    bool ok = (pi * pi == lam * lam * Int(5));
    Line(out) << "(lambda+2)^2 = 5 lambda^2: " << (ok ? "exact" : "FAILED");
    bool pi2zero = ctx().mod5.is_zero(ctx().mod5.reduce(pi * pi));
    Line(out) << "(lambda+2)^2 = 0 mod 5: " << (pi2zero ? "yes" : "FAILED");
    ok = ok && pi2zero;

    std::mt19937 rng(2024);
    int tried = 0;
    while (tried < 5) {
        RingElement a = rand_elem(rng, 15);
        if (a.is_zero()) continue;
        Int n = a.norm();
        if (n < 0) n = -n;
        if (n == 0 || n > 10000) continue;
        FiniteRing R(a);
        if (R.cardinality() != n) {
            Line(out) << "cardinality mismatch for modulus " << a.to_string();
            ok = false;
        }
        ++tried;
    }
    Line(out) << "5 random moduli: |ring| = |norm|";

    for (int i = 0; i < 200; ++i) {
        RingElement a = rand_elem(rng), b = rand_elem(rng);
        if (ctx().mod5.reduce(a * b) != ctx().mod5.mul(ctx().mod5.reduce(a), ctx().mod5.reduce(b))) ok = false;
        if (ctx().mod5.reduce(a + b) != ctx().mod5.add(ctx().mod5.reduce(a), ctx().mod5.reduce(b))) ok = false;
    }
    Line(out) << "200 random pairs: reduction is a ring homomorphism";
    return ok;
}

bool check_eq51(const std::string&, std::vector<std::string>& out) {
    auto T = GroupElement::gen_T(5);
    const MinPoly& p = ctx().p5;
    auto e = [&](long long a0, long long a1) { return RingElement(p, {Int(a0), Int(a1)}); };
    GroupElement rhs(p, {e(2, 3), e(-3, -2), e(3, 4), e(-2, -4)});
    GroupElement a = witness_a_q5();
    bool product = (T.inverse() * T.inverse() * rhs == a);
    Line(out) << "T^-2 [[3L+2,-2L-3],[4L+3,-4L-2]] = [[-11L-6,10L+5],[4L+3,-4L-2]]: "
              << (product ? "exact" : "FAILED");
    bool in_pi = is_congruence_member(a, e(2, 1));
    bool in_five = is_congruence_member(a, e(5, 0));
    Line(out) << "a in level-(lambda+2) subgroup: " << (in_pi ? "yes" : "NO");
    Line(out) << "a in level-5 subgroup: " << (in_five ? "YES (wrong)" : "no");
    return product && in_pi && !in_five;
}

bool check_eq52(const std::string&, std::vector<std::string>& out) {
    const FiniteRing& R = ctx().mod5;
    bool a_ok = reduce_matrix(witness_a_q5(), R) == shifted_identity_mod5(R, 4, 0, 4, 1);
    bool b_ok = reduce_matrix(witness_b_q5(), R) == shifted_identity_mod5(R, 1, 1, 0, 4);
    bool c_ok = reduce_matrix(witness_c_q5(), R) == shifted_identity_mod5(R, 1, 4, 0, 4);
    Line(out) << "a = I + (lambda+2)[[4,0],[4,1]] mod 5: " << (a_ok ? "yes" : "NO");
    Line(out) << "b = S a S^-1 = I + (lambda+2)[[1,1],[0,4]] mod 5: " << (b_ok ? "yes" : "NO");
    Line(out) << "c = J a J^-1 = I + (lambda+2)[[1,4],[0,4]] mod 5: " << (c_ok ? "yes" : "NO");
    return a_ok && b_ok && c_ok;
}

bool check_quotient_orders(const std::string& dir, std::vector<std::string>& out) {
    std::size_t o_pi = ctx().q_pi.order();
    std::size_t o_5 = ctx().q5.order();
    FiniteRing triv(RingElement::one(ctx().p5));
    std::size_t o_1 = image_group({GroupElement::gen_S(5), GroupElement::gen_T(5)}, triv).order();
    Line(out) << "order mod (lambda+2): " << o_pi;
    Line(out) << "order mod (5): " << o_5;
    Line(out) << "order mod (1): " << o_1;
    bool ok = o_pi == 60 && o_5 == 7500 && o_1 == 1;

    std::string golden = read_file(dir + "/golden/quotient_orders.txt");
    std::ostringstream recomputed;
    recomputed << "mod 2+1L " << o_pi << "\nmod 5 " << o_5 << "\nkernel "
               << kernel_structure(ctx().q5, ctx().mod_pi).order << "\n";
    bool golden_ok = golden == recomputed.str();
    Line(out) << "golden quotient_orders.txt: " << (golden_ok ? "matches" : "DIFFERS");
    return ok && golden_ok;
}

bool check_kernel(const std::string&, std::vector<std::string>& out) {
    KernelReport k = kernel_structure(ctx().q5, ctx().mod_pi);
    Line(out) << "kernel order: " << k.order;
    Line(out) << "abelian: " << (k.abelian ? "yes" : "NO") << ", exponent: " << k.exponent;
    Line(out) << "generated by {a, b, c}: " << (k.generated_by_delta ? "yes" : "NO");
    Line(out) << "order check: " << ctx().q5.order() << " = " << ctx().q_pi.order() << " * " << k.order;
    return k.order == 125 && k.abelian && k.exponent == 5 && k.generated_by_delta &&
           ctx().q5.order() == ctx().q_pi.order() * k.order;
}

bool check_a1_table(const std::string&, std::vector<std::string>& out) {
    RstReport r = rst_relations(ctx().q5, ctx().mod_pi);
    Line(out) << "displayed forms of r, s, t: " << (r.forms_match ? "match" : "FAILED");
    Line(out) << "nine conjugation identities as tabulated: "
              << (r.identities_hold ? "all hold" : std::to_string(9 - r.failed.size()) + "/9 hold");
    for (const std::string& f : r.failed) Line(out) << "does not hold: " << f;
    if (!r.note.empty()) Line(out) << "note: " << r.note;
    if (r.corrected_rT_holds && !r.identities_hold)
        Line(out) << "corrected identity r^T = r s t^2: verified exactly";
    Line(out) << "<r,s,t> = <a,b,c> = kernel: " << (r.spans_kernel ? "yes" : "NO");
    return r.forms_match && r.identities_hold && r.spans_kernel;
}

bool check_lemma_a1(const std::string&, std::vector<std::string>& out) {
    SubgroupScanResult s = invariant_subgroup_scan(ctx().q5, ctx().mod_pi);
    Line(out) << "subgroup candidates: " << s.candidates << " (1 + 31 + 31 + 1)";
    Line(out) << "invariant under S, T, J: " << s.invariant;
    for (const std::string& d : s.invariant_descriptions) Line(out) << "invariant subgroup: " << d;
    {
        Line l(out);
        l << "candidates:";
        for (const std::string& d : s.candidate_descriptions) l << " " << d;
    }
    return s.candidates == 64 && s.only_trivial_and_full;
}

bool check_no_index5(const std::string&, std::vector<std::string>& out) {
    AbelianizationScan q5scan = no_normal_index5(ctx().q5);
    Line(out) << "order-" << q5scan.group_order << " quotient: abelianization order " << q5scan.quotient_order
              << " (divides 2)";
    bool q5_ok = q5scan.no_normal_index5 &&
                 (q5scan.quotient_order == 1 || q5scan.quotient_order == 2);

    AbelianizationScan a5scan = no_normal_index5(ctx().q_pi);
    Line(out) << "control (order 60): abelianization order " << a5scan.quotient_order << " (perfect)";
    bool a5_ok = a5scan.quotient_order == 1;

    FiniteMatrixGroup c5 = image_group({GroupElement::gen_T(5)}, ctx().mod_pi);
    AbelianizationScan c5scan = no_normal_index5(c5);
    Line(out) << "control (cyclic of order " << c5scan.group_order << "): abelianization order "
              << c5scan.quotient_order << " -> index-5 test " << (c5scan.no_normal_index5 ? "true" : "false");
    bool c5_ok = c5scan.group_order == 5 && !c5scan.no_normal_index5;
    return q5_ok && a5_ok && c5_ok;
}

InvariantSet make_inv(long long d, long long v2, long long vq, long long v_inf, long long r, long long g) {
    InvariantSet i;
    i.d = d;
    i.v2 = v2;
    i.vq = vq;
    i.v_inf = v_inf;
    i.r = r;
    i.genus = g;
    return i;
}

bool check_eq31(const std::string& dir, std::vector<std::string>& out) {
    FareyAnalysis a = analyze(load_symbol(dir, "eq31_q5.hfs"));
    auto S = GroupElement::gen_S(5);
    auto T = GroupElement::gen_T(5);
    std::vector<GroupElement> expect = {S * T.inverse(), T.inverse() * S};
    bool gens_ok = same_element_set(generator_matrices(a.generators), expect);
    Line(out) << "generators {S T^-1, T^-1 S}: " << (gens_ok ? "yes" : "NO");
    bool inv_ok = a.invariants == make_inv(2, 0, 2, 1, 0, 0);
    Line(out) << "d=" << a.invariants.d << " v2=" << a.invariants.v2 << " vq=" << a.invariants.vq
              << " v_inf=" << a.invariants.v_inf << " g=" << a.invariants.genus;
    bool width_ok = a.cusps.widths == std::vector<long long>{2};
    Line(out) << "single cusp class of width " << (a.cusps.widths.empty() ? 0 : a.cusps.widths[0]);
    bool rh = riemann_hurwitz_holds(5, a.invariants);
    Line(out) << "area identity: " << (rh ? "holds exactly" : "FAILED");
    return gens_ok && inv_ok && width_ok && rh;
}

bool check_pentagon(const std::string& dir, std::vector<std::string>& out) {
    HeckeFareySymbol derived = derive_power_subgroup_symbol_q5();
    std::string golden = read_file(dir + "/catalog/pentagon_g55.hfs");
    bool golden_ok = serialize_hfs(derived) == golden;
    Line(out) << "derived symbol matches golden file: " << (golden_ok ? "yes" : "NO");
    Line(out) << "vertices: " << [&] {
        std::string s;
        for (std::size_t i = 0; i < derived.vertices.size(); ++i)
            s += (i ? "," : "") + derived.vertices[i].to_string();
        return s;
    }();

    FareyAnalysis a = analyze(derived);
    bool inv_ok = a.invariants == make_inv(5, 5, 0, 1, 0, 0);
    Line(out) << "d=" << a.invariants.d << " v2=" << a.invariants.v2 << " vq=" << a.invariants.vq
              << " v_inf=" << a.invariants.v_inf << " g=" << a.invariants.genus;
    bool width_ok = a.cusps.widths == std::vector<long long>{5} && a.cusps.geometric_width == 5;
    Line(out) << "geometric width: " << a.cusps.geometric_width;
    bool first_ok = a.generators[0].generator == GroupElement::gen_S(5);
    Line(out) << "first edge pairing is S: " << (first_ok ? "yes" : "NO");
    bool set_ok = same_element_set(generator_matrices(a.generators), power_subgroup_generators_q5());
    Line(out) << "edge pairings equal the five standard involutions: " << (set_ok ? "yes" : "NO");
    bool rh = riemann_hurwitz_holds(5, a.invariants);
    Line(out) << "area identity: " << (rh ? "holds exactly" : "FAILED");
    return golden_ok && inv_ok && width_ok && first_ok && set_ok && rh;
}

bool check_fullgroup(const std::string& dir, std::vector<std::string>& out) {
    FareyAnalysis a = analyze(load_symbol(dir, "full_group_q5.hfs"));
    bool inv_ok = a.invariants == make_inv(1, 1, 1, 1, 0, 0);
    Line(out) << "d=" << a.invariants.d << " v2=" << a.invariants.v2 << " vq=" << a.invariants.vq
              << " v_inf=" << a.invariants.v_inf << " g=" << a.invariants.genus;
    bool width_ok = a.cusps.widths == std::vector<long long>{1};
    Line(out) << "single cusp of width 1: " << (width_ok ? "yes" : "NO");
    auto S = GroupElement::gen_S(5);
    auto T = GroupElement::gen_T(5);
    bool gens_ok = same_element_set(generator_matrices(a.generators), {S, S * T.inverse()});
    Line(out) << "generators {S, S T^-1}: " << (gens_ok ? "yes" : "NO");
    bool rh = riemann_hurwitz_holds(5, a.invariants);
    return inv_ok && width_ok && gens_ok && rh;
}

bool check_example34(const std::string& dir, std::vector<std::string>& out) {
    auto gens = power_subgroup_generators_q5();
    bool traces = true, orders = true;
    std::vector<std::string> words;
    for (const auto& g : gens) {
        if (!g.trace().is_zero()) traces = false;
        auto c = classify(g);
        if (c.kind != ElementKind::Elliptic || c.order != 2) orders = false;
        auto d = decompose(g);
        if (!d.ok()) return false;
        if (eval_word(*d.word, 5) != g) return false;
        words.push_back(d.word->to_string());
    }
    Line(out) << "five involutions: trace 0, determinant 1, order 2: "
              << (traces && orders ? "yes" : "NO");

    std::ostringstream recomputed;
    for (const std::string& w : words) recomputed << w << "\n";
    std::string golden = read_file(dir + "/golden/example34_words.txt");
    bool golden_ok = golden == recomputed.str();
    Line(out) << "decomposed words match golden file: " << (golden_ok ? "yes" : "NO");
    for (const std::string& w : words) Line(out) << "word: " << w;

    std::vector<XYWord> xy;
    for (const auto& g : gens) xy.push_back(translate_to_xy(*decompose(g).word));
    int index = todd_coxeter(5, xy).index();
    Line(out) << "coset enumeration index: " << index;

    FiniteMatrixGroup image34 = image_group(gens, ctx().mod5);
    FareyAnalysis a = analyze(derive_power_subgroup_symbol_q5());
    FiniteMatrixGroup image_hfs = image_group(generator_matrices(a.generators), ctx().mod5);
    bool image_ok = image34.order() == 7500 && same_prm_set(image34, image_hfs);
    Line(out) << "image subgroup mod 5: order " << image34.order() << ", equal for both generator sets: "
              << (image_ok ? "yes" : "NO");
    return traces && orders && golden_ok && index == 5 && image_ok;
}

bool check_fp_index2(const std::string&, std::vector<std::string>& out) {
    int i2 = todd_coxeter(5, {parse_xy("y"), parse_xy("xyx")}).index();
    int i1 = todd_coxeter(5, {parse_xy("x"), parse_xy("y")}).index();
    Line(out) << "index of <y, xyx>: " << i2;
    Line(out) << "index of <x, y>: " << i1;
    return i2 == 2 && i1 == 1;
}

bool check_low_index(const std::string&, std::vector<std::string>& out) {
    auto q5_4 = low_index_subgroups(5, 4);
    std::set<int> indices4;
    for (const auto& s : q5_4) indices4.insert(s.table.index());
    bool no34 = indices4 == std::set<int>{1, 2};
    Line(out) << "q=5 up to index 4: only indices 1 and 2 occur: " << (no34 ? "yes" : "NO");

    auto q5_5 = low_index_subgroups(5, 5);
    int normal5 = 0, all5 = 0;
    for (const auto& s : q5_5)
        if (s.table.index() == 5) {
            ++all5;
            if (s.normal) ++normal5;
        }
    Line(out) << "q=5 index 5: " << all5 << " classes, " << normal5 << " normal";

    auto q3 = low_index_subgroups(3, 7);
    std::set<int> q3_indices;
    for (const auto& s : q3) q3_indices.insert(s.table.index());
    bool q3_all = true;
    for (int i = 1; i <= 7; ++i) q3_all = q3_all && q3_indices.count(i) > 0;
    Line(out) << "q=3 up to index 7: subgroups at every index: " << (q3_all ? "yes" : "NO");
    return no34 && normal5 == 1 && q3_all;
}

bool check_abelianization(const std::string&, std::vector<std::string>& out) {
    auto a = abelianization_subgroup({5, 5}, 0);
    auto b = abelianization_subgroup({2, 2, 2, 2, 2}, 0);
    auto c = abelianization_subgroup({2, 5}, 0);
    auto d = abelianization_subgroup({}, 1);
    Line(out) << "orders {5,5}: commutator index " << a.commutator_index;
    Line(out) << "orders {2 x5}: commutator index " << b.commutator_index;
    Line(out) << "orders {2,5}: commutator index " << c.commutator_index;
    Line(out) << "free rank 1: commutator index " << (d.commutator_index_finite ? "finite" : "infinite");
    return a.commutator_index == 25 && b.commutator_index == 32 && c.commutator_index == 10 &&
           !d.commutator_index_finite;
}

bool check_roundtrip(const std::string& dir, std::vector<std::string>& out) {
    std::mt19937 rng(4242);
    bool words_ok = true;
    for (int q : {3, 5}) {
        for (int i = 0; i < 200; ++i) {
            Word w = random_reduced_word(rng, 1 + static_cast<int>(rng() % 40));
            GroupElement g = eval_word(w, q);
            auto d = decompose(g);
            if (!d.ok() || eval_word(*d.word, q) != g) words_ok = false;
        }
    }
    Line(out) << "decompose then evaluate on 400 random words (q=3,5): " << (words_ok ? "stable" : "FAILED");

    bool hom_ok = true;
    for (int i = 0; i < 300; ++i) {
        GroupElement g = eval_word(random_reduced_word(rng, 12), 5);
        GroupElement h = eval_word(random_reduced_word(rng, 12), 5);
        for (const FiniteRing* R : {&ctx().mod5, &ctx().mod_pi}) {
            if (!(reduce_matrix(g * h, *R) == prm_mul(*R, reduce_matrix(g, *R), reduce_matrix(h, *R))))
                hom_ok = false;
        }
    }
    Line(out) << "matrix reduction is a projective homomorphism (300 pairs, both moduli): "
              << (hom_ok ? "yes" : "FAILED");

    bool files_ok = true;
    for (const char* name : {"eq31_q5.hfs", "full_group_q5.hfs", "pentagon_g55.hfs", "full_group_q3.hfs",
                             "gamma2_q3.hfs"}) {
        std::string text = read_file(dir + "/catalog/" + name);
        HeckeFareySymbol f = parse_hfs(text);
        if (serialize_hfs(f) != text) {
            files_ok = false;
            Line(out) << "round trip FAILED for " << name;
        }
        FareyAnalysis a = analyze(f);
        long long width_sum = 0;
        for (long long w : a.cusps.widths) width_sum += w;
        if (!riemann_hurwitz_holds(f.q, a.invariants) || width_sum != a.invariants.d) {
            files_ok = false;
            Line(out) << "invariants FAILED for " << name;
        }
    }
    Line(out) << "catalog: parse/serialize identity, area identity, widths sum to the index: "
              << (files_ok ? "all hold" : "FAILED");
    return words_ok && hom_ok && files_ok;
}

bool check_prop52(const std::string&, std::vector<std::string>& out) {
    Prop52Report rep = prop52_pipeline();
    for (const auto& leg : rep.legs)
        Line(out) << leg.check << " [" << leg.status << "] " << leg.details;
    Line(out) << "verdict: " << rep.verdict;
    return rep.ok;
}

const std::vector<CheckDef>& registry() {
    static std::vector<CheckDef> defs = {
        {"minpoly", "sec-1.1", check_minpoly, false},
        {"ring-props", "sec-5.1", check_ring_props, false},
        {"eq51", "eq-5.1", check_eq51, false},
        {"eq52", "eq-5.2", check_eq52, false},
        {"quotient-orders", "sec-4.i", check_quotient_orders, false},
        {"kernel", "sec-4.i", check_kernel, false},
        {"a1-table", "eq-a1", check_a1_table, false},
        {"lemma-a1", "lemma-a1", check_lemma_a1, false},
        {"no-index5", "sec-1.2.ii", check_no_index5, false},
        {"eq31", "eq-3.1", check_eq31, false},
        {"pentagon", "lemma-3.3", check_pentagon, false},
        {"fullgroup", "sec-3", check_fullgroup, false},
        {"example34", "example-3.4", check_example34, false},
        {"fp-index2", "lemma-3.2", check_fp_index2, false},
        {"low-index", "prop-3.1", check_low_index, false},
        {"abelianization", "prop-3.1", check_abelianization, false},
        {"roundtrip", "internal", check_roundtrip, false},
        {"level-premise", "sec-4.ii",
         [](const std::string&, std::vector<std::string>& out) {
             Line(out) << "external theorem: a congruence subgroup of odd geometric level r contains "
                          "the principal congruence subgroup of level r; used with r = 5";
             return true;
         },
         true},
        {"prop52", "prop-5.2", check_prop52, false},
    };
    return defs;
}

} // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& d : registry()) names.push_back(d.name);
    return names;
}

CheckOutcome run_check(const std::string& name, const std::string& data_dir) {
    for (const auto& def : registry()) {
        if (def.name != name) continue;
        CheckOutcome o;
        o.name = def.name;
        o.anchor = def.anchor;
        if (def.premise) {
            o.status = "premise";
            def.fn(data_dir, o.details);
            return o;
        }
        try {
            o.status = def.fn(data_dir, o.details) ? "pass" : "fail";
        } catch (const std::exception& e) {
            o.status = "fail";
            o.details.push_back(std::string("exception: ") + e.what());
        }
        return o;
    }
    throw std::invalid_argument("unknown check '" + name + "'");
}

VerificationReport run_all(const std::string& data_dir, const std::vector<std::string>& only) {
    VerificationReport rep;
    rep.tool_version = tool_version();
    rep.q = 5;
    for (const auto& def : registry()) {
        if (!only.empty() && std::find(only.begin(), only.end(), def.name) == only.end()) continue;
        CheckOutcome o = run_check(def.name, data_dir);
        if (o.status == "fail") ++rep.failures;
        rep.checks.push_back(std::move(o));
    }
    if (!only.empty() && rep.checks.empty())
        throw std::invalid_argument("no matching checks");
    bool full_run = rep.checks.size() == registry().size();
    if (!full_run)
        rep.verdict = rep.failures == 0 ? "subset passed" : "subset failed";
    else
        rep.verdict = rep.failures == 0 ? "not congruence" : "verification failed";
    return rep;
}

std::string explain(const std::string& name, const std::string& data_dir) {
    CheckOutcome o = run_check(name, data_dir);
    std::ostringstream os;
    os << o.name << " (" << o.anchor << "): " << o.status << "\n";
    for (const std::string& d : o.details) os << "  " << d << "\n";
    return os.str();
}

std::string VerificationReport::to_json() const {
    json j;
    j["toolVersion"] = tool_version;
    j["q"] = q;
    j["checks"] = json::array();
    for (const auto& c : checks) {
        json jc;
        jc["name"] = c.name;
        jc["anchor"] = c.anchor;
        jc["status"] = c.status;
        jc["details"] = c.details;
        j["checks"].push_back(jc);
    }
    j["failures"] = failures;
    j["verdict"] = verdict;
    return j.dump(2) + "\n";
}

VerificationReport VerificationReport::from_json(const std::string& text) {
    json j = json::parse(text);
    VerificationReport rep;
    rep.tool_version = j.at("toolVersion").get<std::string>();
    rep.q = j.at("q").get<int>();
    rep.failures = j.at("failures").get<int>();
    rep.verdict = j.at("verdict").get<std::string>();
    for (const auto& jc : j.at("checks")) {
        CheckOutcome c;
        c.name = jc.at("name").get<std::string>();
        c.anchor = jc.at("anchor").get<std::string>();
        c.status = jc.at("status").get<std::string>();
        for (const auto& d : jc.at("details")) c.details.push_back(d.get<std::string>());
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << tool_version << ", q = " << q << "\n";
    for (const auto& c : checks) {
        os << "[" << c.status << "] " << c.name << " (" << c.anchor << ")\n";
        for (const auto& d : c.details) os << "    " << d << "\n";
    }
    os << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << "\n";
    os << "verdict: " << verdict << "\n";
    return os.str();
}

} // namespace hecke
