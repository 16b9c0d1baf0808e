#include "hecke/farey.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace hecke {

// ---------------------------------------------------------------------------
// Cusps

Cusp Cusp::infinity(const MinPoly& p, int sign) {
    return Cusp{RingElement::integer(p, sign >= 0 ? 1 : -1), RingElement::zero(p)};
}

Cusp Cusp::fraction(RingElement num, RingElement den) {
    const MinPoly& p = num.poly();
    if (den.is_zero()) {
        if (num.is_zero()) throw std::domain_error("cusp: 0/0");
        return Cusp{RingElement::integer(p, sign_of(num)), std::move(den)};
    }
    int q = p.q();
    if ((q == 3 || q == 5) && !num.is_zero()) {
        RingElement g = euclid_gcd(num, den);
        num = *exact_divide(num, g);
        den = *exact_divide(den, g);
    }
    if (num.is_zero()) {
        num = RingElement::zero(p);
        den = RingElement::one(p);
    }
    if (sign_of(den) < 0) {
        num = -num;
        den = -den;
    }
    return Cusp{std::move(num), std::move(den)};
}

bool Cusp::same_point(const Cusp& o) const {
    return (num * o.den - o.num * den).is_zero();
}

std::string Cusp::to_string() const {
    if (is_infinite()) return sign_of(num) < 0 ? "-oo" : "oo";
    if (den.is_one()) return num.to_string();
    return num.to_string() + "/" + den.to_string();
}

int cusp_compare(const Cusp& a, const Cusp& b) {
    auto rank = [](const Cusp& c) {
        if (!c.is_infinite()) return 1;
        return sign_of(c.num) < 0 ? 0 : 2;
    };
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra != 1) return 0;
    return sign_of(a.num * b.den - b.num * a.den); // denominators positive
}

Cusp apply_to_cusp(const GroupElement& g, const Cusp& c) {
    return Cusp::fraction(g.a11() * c.num + g.a12() * c.den,
                          g.a21() * c.num + g.a22() * c.den);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Statement {
    int line;
    std::string key, value;
};

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Cusp parse_vertex(const MinPoly& p, const std::string& tok, int line) {
    std::string t = strip(tok);
    if (t == "-oo") return Cusp::infinity(p, -1);
    if (t == "oo") return Cusp::infinity(p, 1);
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos)
            return Cusp::fraction(RingElement::parse(p, t), RingElement::one(p));
        return Cusp::fraction(RingElement::parse(p, t.substr(0, slash)),
                              RingElement::parse(p, t.substr(slash + 1)));
    } catch (const std::invalid_argument& e) {
        throw HfsParseError(line, t, e.what());
    } catch (const std::domain_error& e) {
        throw HfsParseError(line, t, e.what());
    }
}

Pairing parse_pairing(const std::string& tok, int line) {
    std::string t = strip(tok);
    if (t == "even") return {PairingKind::Even, 0};
    if (t == "odd") return {PairingKind::Odd, 0};
    if (!t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        long v = std::stol(t);
        if (v <= 0) throw HfsParseError(line, t, "free label must be positive");
        return {PairingKind::Free, static_cast<int>(v)};
    }
    throw HfsParseError(line, t, "expected 'even', 'odd' or a positive integer");
}

} // namespace

HeckeFareySymbol parse_hfs(const std::string& text) {
    // statements are key=value terminated by ';', whitespace-insensitive
    std::vector<Statement> stmts;
    std::string cur;
    int line = 1, stmt_line = 1;
    bool in_stmt = false;
    for (char c : text) {
        if (c == '\n') ++line;
        if (c == ';') {
            std::string body = strip(cur);
            if (!body.empty()) {
                auto eq = body.find('=');
                if (eq == std::string::npos)
                    throw HfsParseError(stmt_line, body, "expected key=value");
                stmts.push_back({stmt_line, strip(body.substr(0, eq)), strip(body.substr(eq + 1))});
            }
            cur.clear();
            in_stmt = false;
        } else {
            if (!in_stmt && !std::isspace(static_cast<unsigned char>(c))) {
                in_stmt = true;
                stmt_line = line;
            }
            cur += c;
        }
    }
    if (!strip(cur).empty())
        throw HfsParseError(line, strip(cur), "missing terminating ';'");
    if (stmts.size() != 3 || stmts[0].key != "q" || stmts[1].key != "vertices" || stmts[2].key != "pairings")
        throw HfsParseError(stmts.empty() ? 1 : stmts[0].line, stmts.empty() ? "" : stmts[0].key,
                            "expected exactly q=...; vertices=...; pairings=...;");

    HeckeFareySymbol f;
    try {
        f.q = std::stoi(stmts[0].value);
    } catch (...) {
        throw HfsParseError(stmts[0].line, stmts[0].value, "q must be an integer");
    }
    if (f.q < 3) throw HfsParseError(stmts[0].line, stmts[0].value, "q must be >= 3");
    const MinPoly& p = MinPoly::get(f.q);

    for (const std::string& tok : split(stmts[1].value, ','))
        f.vertices.push_back(parse_vertex(p, tok, stmts[1].line));
    for (const std::string& tok : split(stmts[2].value, ','))
        f.pairings.push_back(parse_pairing(tok, stmts[2].line));

    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw HfsParseError(stmts[2].line, "", e.what());
    }
    return f;
}

void HeckeFareySymbol::validate() const {
    if (q < 3) throw std::invalid_argument("hfs: q must be >= 3");
    if (vertices.size() < 2) throw std::invalid_argument("hfs: need at least two vertices");
    if (!vertices.front().is_infinite() || sign_of(vertices.front().num) >= 0)
        throw std::invalid_argument("hfs: first vertex must be -oo");
    if (!vertices.back().is_infinite() || sign_of(vertices.back().num) <= 0)
        throw std::invalid_argument("hfs: last vertex must be oo");
    for (std::size_t i = 1; i + 1 < vertices.size(); ++i)
        if (vertices[i].is_infinite())
            throw std::invalid_argument("hfs: interior vertices must be finite");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (cusp_compare(vertices[i], vertices[i + 1]) >= 0)
            throw std::invalid_argument("hfs: vertices must be strictly increasing");
    if (pairings.size() != vertices.size() - 1)
        throw std::invalid_argument("hfs: pairing count must equal vertex gaps");
    std::map<int, int> uses;
    for (const Pairing& p : pairings)
        if (p.kind == PairingKind::Free) ++uses[p.label];
    for (auto& [label, n] : uses)
        if (n != 2)
            throw std::invalid_argument("hfs: free label " + std::to_string(label) +
                                        " used " + std::to_string(n) + " times (must be exactly twice)");
}

std::string serialize_hfs(const HeckeFareySymbol& f) {
    std::ostringstream os;
    os << "q=" << f.q << ";\n";
    os << "vertices=";
    for (std::size_t i = 0; i < f.vertices.size(); ++i)
        os << (i ? "," : "") << f.vertices[i].to_string();
    os << ";\npairings=";
    for (std::size_t i = 0; i < f.pairings.size(); ++i) {
        os << (i ? "," : "");
        switch (f.pairings[i].kind) {
            case PairingKind::Even: os << "even"; break;
            case PairingKind::Odd: os << "odd"; break;
            case PairingKind::Free: os << f.pairings[i].label; break;
        }
    }
    os << ";\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Side pairings

namespace {

// Group element carrying (oo, 0) to (left, right): V(oo) = left,
// V(0) = right. Unique up to sign; found by scaling the column matrix by
// units until the result lies in G_q.
GroupElement edge_transport(const HeckeFareySymbol& f, int edge) {
    const MinPoly& p = MinPoly::get(f.q);
    const Cusp& L = f.vertices[static_cast<std::size_t>(edge)];
    const Cusp& R = f.vertices[static_cast<std::size_t>(edge) + 1];
    RingElement det = L.num * R.den - R.num * L.den;
    Int n = det.norm();
    if (n != 1 && n != -1)
        throw std::domain_error("hfs: vertices of edge " + std::to_string(edge) +
                                " are not unimodularly adjacent");

    RingElement one = RingElement::one(p);
    std::vector<RingElement> units = {one};
    if (f.q == 5) {
        RingElement lam = RingElement::lambda(p);
        RingElement lam_inv = lam - one; // 1/lambda
        RingElement up = one, dn = one;
        for (int j = 1; j <= 64; ++j) {
            up = up * lam;
            dn = dn * lam_inv;
            units.push_back(up);
            units.push_back(dn);
        }
    }
    for (const RingElement& u : units) {
        RingElement v = *exact_divide(one, u * det); // (u det)^-1: unit, always divides
        std::array<RingElement, 4> m = {L.num * u, R.num * v, L.den * u, R.den * v};
        GroupElement cand(p, std::move(m));
        if (decompose(cand, 1024).ok()) return cand;
    }
    throw std::domain_error("hfs: no group transport found for edge " + std::to_string(edge) +
                            " (side pairings are supported for q in {3, 5})");
}

} // namespace

namespace {

std::vector<GroupElement> edge_transports(const HeckeFareySymbol& f) {
    std::vector<GroupElement> transport;
    for (int e = 0; e < f.edges(); ++e) transport.push_back(edge_transport(f, e));
    return transport;
}

std::vector<SidePairing> pairings_from_transports(const HeckeFareySymbol& f,
                                                  const std::vector<GroupElement>& transport) {
    GroupElement S = GroupElement::gen_S(f.q);
    GroupElement odd_flip = (S * GroupElement::gen_T(f.q)).inverse();

    std::vector<SidePairing> out;
    std::map<int, int> first_free; // label -> first edge
    for (int e = 0; e < f.edges(); ++e) {
        const Pairing& pr = f.pairings[static_cast<std::size_t>(e)];
        switch (pr.kind) {
            case PairingKind::Even:
                out.push_back({conjugate(S, transport[static_cast<std::size_t>(e)]), PairingKind::Even, e, e});
                break;
            case PairingKind::Odd:
                out.push_back({conjugate(odd_flip, transport[static_cast<std::size_t>(e)]), PairingKind::Odd, e, e});
                break;
            case PairingKind::Free: {
                auto it = first_free.find(pr.label);
                if (it == first_free.end()) {
                    first_free[pr.label] = e;
                } else {
                    int i = it->second;
                    GroupElement g = transport[static_cast<std::size_t>(e)] * S *
                                     transport[static_cast<std::size_t>(i)].inverse();
                    out.push_back({g, PairingKind::Free, i, e});
                }
                break;
            }
        }
    }
    return out;
}

} // namespace

std::vector<SidePairing> side_pairing_generators(const HeckeFareySymbol& f) {
    f.validate();
    return pairings_from_transports(f, edge_transports(f));
}

bool riemann_hurwitz_holds(int q, const InvariantSet& inv) {
    long long lhs = static_cast<long long>(q - 2) * inv.d;
    long long rhs = static_cast<long long>(q) * inv.v2 + 2LL * (q - 1) * inv.vq +
                    4LL * q * inv.genus + 2LL * q * inv.v_inf - 4LL * q;
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Analysis

FareyAnalysis analyze(const HeckeFareySymbol& f) {
    f.validate();
    FareyAnalysis a;
    a.symbol = f;
    std::vector<GroupElement> transport = edge_transports(f);
    a.generators = pairings_from_transports(f, transport);

    // subgroup words for the coset enumeration
    std::vector<XYWord> words;
    for (const SidePairing& sp : a.generators) {
        auto d = decompose(sp.generator);
        if (!d.ok())
            throw std::logic_error("hfs: side pairing generator failed membership decomposition");
        words.push_back(translate_to_xy(*d.word));
    }
    a.table = todd_coxeter(f.q, words);

    // counts
    InvariantSet inv;
    inv.d = a.table.index();
    for (const SidePairing& sp : a.generators) {
        if (sp.kind == PairingKind::Even) ++inv.v2;
        if (sp.kind == PairingKind::Odd) ++inv.vq;
        if (sp.kind == PairingKind::Free) ++inv.r;
    }

    // cusp partition: union vertices connected by any generator image
    std::size_t n = f.vertices.size();
    std::vector<int> uf(n);
    for (std::size_t i = 0; i < n; ++i) uf[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (uf[static_cast<std::size_t>(x)] != x) {
            uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
            x = uf[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) { uf[static_cast<std::size_t>(find(x))] = find(y); };
    unite(0, static_cast<int>(n) - 1); // -oo and oo name the same cusp
    for (const SidePairing& sp : a.generators) {
        for (const GroupElement& dir : {sp.generator, sp.generator.inverse()}) {
            for (std::size_t i = 0; i < n; ++i) {
                Cusp img = apply_to_cusp(dir, f.vertices[i]);
                for (std::size_t j = 0; j < n; ++j)
                    if (img.same_point(f.vertices[j])) unite(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    std::map<int, int> class_ids;
    CuspClassReport cusps;
    for (std::size_t i = 0; i < n; ++i) {
        int root = find(static_cast<int>(i));
        if (!class_ids.count(root)) class_ids[root] = static_cast<int>(class_ids.size());
        cusps.class_of.push_back(class_ids[root]);
    }
    cusps.num_classes = static_cast<int>(class_ids.size());
    inv.v_inf = cusps.num_classes;

    // widths: size of the T-orbit of the coset reached by a transport of a
    // vertex of the class (the least power of T conjugated back into the
    // subgroup at that cusp)
    Word t_word;
    t_word.push(Letter::T);
    XYWord t_xy = translate_to_xy(t_word);
    auto orbit_of = [&](int coset) {
        std::vector<int> orbit = {coset};
        int c = a.table.apply_word(coset, t_xy);
        while (c != coset) {
            orbit.push_back(c);
            c = a.table.apply_word(c, t_xy);
        }
        return orbit;
    };
    cusps.widths.assign(static_cast<std::size_t>(cusps.num_classes), 0);
    std::vector<int> class_coset(static_cast<std::size_t>(cusps.num_classes), -1);
    for (std::size_t i = 0; i < n; ++i) {
        GroupElement g = GroupElement::identity(f.q);
        if (i + 1 < n) g = transport[i]; // V_i(oo) = vertex i; last vertex is oo itself
        auto d = decompose(g);
        if (!d.ok()) throw std::logic_error("hfs: transport failed membership decomposition");
        int coset = a.table.apply_word(0, translate_to_xy(*d.word));
        int cls = cusps.class_of[i];
        auto orbit = orbit_of(coset);
        long long w = static_cast<long long>(orbit.size());
        if (cusps.widths[static_cast<std::size_t>(cls)] == 0) {
            cusps.widths[static_cast<std::size_t>(cls)] = w;
            class_coset[static_cast<std::size_t>(cls)] = coset;
        } else if (cusps.widths[static_cast<std::size_t>(cls)] != w ||
                   std::find(orbit.begin(), orbit.end(), class_coset[static_cast<std::size_t>(cls)]) == orbit.end()) {
            throw std::logic_error("hfs: cusp class does not match its coset orbit");
        }
    }
    long long width_sum = 0;
    for (long long w : cusps.widths) width_sum += w;
    if (width_sum != inv.d)
        throw std::logic_error("hfs: cusp widths do not sum to the index");
    cusps.geometric_width = 1;
    for (long long w : cusps.widths) cusps.geometric_width = std::lcm(cusps.geometric_width, w);

    // genus from the area identity; must come out a non-negative integer
    long long num = static_cast<long long>(f.q - 2) * inv.d - f.q * inv.v2 -
                    2LL * (f.q - 1) * inv.vq - 2LL * f.q * inv.v_inf + 4LL * f.q;
    if (num < 0 || num % (4LL * f.q) != 0)
        throw std::domain_error("hfs: genus is not a non-negative integer (invalid symbol)");
    inv.genus = num / (4LL * f.q);

    a.invariants = inv;
    a.cusps = cusps;
    return a;
}

// ---------------------------------------------------------------------------
// The q = 5 power subgroup

std::vector<GroupElement> power_subgroup_generators_q5() {
    const MinPoly& p = MinPoly::get(5);
    auto e = [&](long long a0, long long a1) { return RingElement(p, {Int(a0), Int(a1)}); };
    auto m = [&](long long a0, long long a1, long long b0, long long b1,
                 long long c0, long long c1, long long d0, long long d1) {
        return GroupElement(p, {e(a0, a1), e(b0, b1), e(c0, c1), e(d0, d1)});
    };
    return {
        m(0, 0, 1, 0, -1, 0, 0, 0),       // [[0, 1], [-1, 0]]
        m(0, 1, -1, 0, 2, 1, 0, -1),      // [[L, -1], [L+2, -L]]
        m(1, 2, -2, -2, 2, 1, -1, -2),    // [[2L+1, -2L-2], [L+2, -2L-1]]
        m(1, 2, -2, -1, 2, 2, -1, -2),    // [[2L+1, -L-2], [2L+2, -2L-1]]
        m(0, 1, -2, -1, 1, 0, 0, -1),     // [[L, -L-2], [1, -L]]
    };
}

HeckeFareySymbol derive_power_subgroup_symbol_q5() {
    const MinPoly& p = MinPoly::get(5);
    std::vector<GroupElement> gens = power_subgroup_generators_q5();
    std::size_t n = gens.size();

    Cusp start = Cusp::infinity(p, 1);
    std::vector<int> order;           // generator index per edge
    std::vector<Cusp> interior;       // x1..x4
    std::vector<bool> used(n, false);
    std::vector<std::vector<int>> solutions;
    std::vector<std::vector<Cusp>> solution_vertices;

    std::function<void(const Cusp&, std::size_t)> search = [&](const Cusp& cur, std::size_t depth) {
        if (depth == n) return; // handled by the last-edge case below
        for (std::size_t k = 0; k < n; ++k) {
            if (used[k]) continue;
            Cusp img = apply_to_cusp(gens[k], cur);
            if (depth + 1 == n) {
                if (img.is_infinite()) {
                    std::vector<int> sol = order;
                    sol.push_back(static_cast<int>(k));
                    solutions.push_back(sol);
                    solution_vertices.push_back(interior);
                }
                continue;
            }
            if (img.is_infinite()) continue;
            if (!interior.empty() && cusp_compare(interior.back(), img) >= 0) continue;
            used[k] = true;
            order.push_back(static_cast<int>(k));
            interior.push_back(img);
            search(img, depth + 1);
            interior.pop_back();
            order.pop_back();
            used[k] = false;
        }
    };
    search(start, 0);

    if (solutions.size() != 1)
        throw std::logic_error("power subgroup symbol derivation: expected a unique increasing chain, found " +
                               std::to_string(solutions.size()));

    HeckeFareySymbol f;
    f.q = 5;
    f.vertices.push_back(Cusp::infinity(p, -1));
    for (const Cusp& c : solution_vertices[0]) f.vertices.push_back(c);
    f.vertices.push_back(Cusp::infinity(p, 1));
    for (std::size_t e = 0; e < n; ++e) f.pairings.push_back({PairingKind::Even, 0});
    f.validate();

    // oracle: each involution swaps its edge's endpoints
    for (std::size_t e = 0; e < n; ++e) {
        const GroupElement& g = gens[static_cast<std::size_t>(solutions[0][e])];
        if (!apply_to_cusp(g, f.vertices[e]).same_point(f.vertices[e + 1]) ||
            !apply_to_cusp(g, f.vertices[e + 1]).same_point(f.vertices[e]))
            throw std::logic_error("power subgroup symbol derivation: edge endpoints not swapped");
    }
    return f;
}

} // namespace hecke
