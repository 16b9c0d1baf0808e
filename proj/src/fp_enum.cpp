#include "hecke/fp_enum.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace hecke {

XYWord translate_to_xy(const Word& w) {
    XYWord out;
    for (Letter l : w.letters()) {
        switch (l) {
            case Letter::S: out.push_back(GEN_x); break;
            case Letter::T: out.push_back(GEN_Y); out.push_back(GEN_x); break;
            case Letter::Tinv: out.push_back(GEN_X); out.push_back(GEN_y); break;
        }
    }
    return out;
}

GroupElement eval_xy(const XYWord& w, int q) {
    GroupElement x = GroupElement::gen_S(q);
    GroupElement y = x * GroupElement::gen_T(q).inverse();
    GroupElement acc = GroupElement::identity(q);
    for (int l : w) {
        switch (l) {
            case GEN_x: acc = acc * x; break;
            case GEN_X: acc = acc * x.inverse(); break;
            case GEN_y: acc = acc * y; break;
            case GEN_Y: acc = acc * y.inverse(); break;
            default: throw std::invalid_argument("eval_xy: bad letter");
        }
    }
    return acc;
}

XYWord parse_xy(const std::string& text) {
    XYWord w;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        switch (c) {
            case 'x': w.push_back(GEN_x); break;
            case 'X': w.push_back(GEN_X); break;
            case 'y': w.push_back(GEN_y); break;
            case 'Y': w.push_back(GEN_Y); break;
            default:
                throw std::invalid_argument(std::string("xy parse: unexpected character '") + c + "'");
        }
    }
    return w;
}

std::string xy_to_string(const XYWord& w) {
    std::string s;
    for (int l : w) s += "xXyY"[l];
    return s;
}

// ---------------------------------------------------------------------------
// Todd-Coxeter

namespace {

constexpr int UNDEF = -1;

struct Enumerator {
    std::vector<std::array<int, 4>> tab;
    std::vector<int> rep; // union-find over cosets
    long long cap;
    int live_count = 0;

    explicit Enumerator(long long cap_) : cap(cap_) { new_coset(); }

    int find(int c) {
        while (rep[static_cast<std::size_t>(c)] != c) {
            rep[static_cast<std::size_t>(c)] = rep[static_cast<std::size_t>(rep[static_cast<std::size_t>(c)])];
            c = rep[static_cast<std::size_t>(c)];
        }
        return c;
    }

    bool live(int c) { return find(c) == c; }

    int new_coset() {
        if (static_cast<long long>(tab.size()) >= cap)
            throw CapExceeded("todd_coxeter: coset cap exceeded");
        tab.push_back({UNDEF, UNDEF, UNDEF, UNDEF});
        rep.push_back(static_cast<int>(tab.size()) - 1);
        ++live_count;
        return static_cast<int>(tab.size()) - 1;
    }

    int& at(int c, int g) { return tab[static_cast<std::size_t>(c)][g]; }

    void merge(int a, int b, std::deque<int>& queue) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        rep[static_cast<std::size_t>(b)] = a;
        --live_count;
        queue.push_back(b);
    }

    void coincidence(int a, int b) {
        std::deque<int> queue;
        merge(a, b, queue);
        while (!queue.empty()) {
            int dead = queue.front();
            queue.pop_front();
            for (int g = 0; g < 4; ++g) {
                int d = at(dead, g);
                if (d == UNDEF) continue;
                at(dead, g) = UNDEF;
                at(d, xy_inverse(g)) = UNDEF;
                int mu = find(dead);
                int nu = find(d);
                if (at(mu, g) != UNDEF) {
                    merge(nu, at(mu, g), queue);
                } else if (at(nu, xy_inverse(g)) != UNDEF) {
                    merge(mu, at(nu, xy_inverse(g)), queue);
                } else {
                    at(mu, g) = nu;
                    at(nu, xy_inverse(g)) = mu;
                }
            }
        }
    }

    void scan_and_fill(int start, const XYWord& w) {
        if (w.empty()) return;
        int f = find(start);
        std::size_t i = 0;
        int b = f;
        std::size_t j = w.size();
        while (true) {
            while (i < j && at(f, w[i]) != UNDEF) {
                f = find(at(f, w[i]));
                ++i;
            }
            if (i == j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j > i && at(b, xy_inverse(w[j - 1])) != UNDEF) {
                b = find(at(b, xy_inverse(w[j - 1])));
                --j;
            }
            if (j == i) {
                coincidence(f, b);
                return;
            }
            if (j == i + 1) {
                at(f, w[i]) = b;
                at(b, xy_inverse(w[i])) = f;
                return;
            }
            int n = new_coset();
            at(f, w[i]) = n;
            at(n, xy_inverse(w[i])) = f;
        }
    }
};

std::vector<XYWord> relators_for(int q) {
    XYWord xx = {GEN_x, GEN_x};
    XYWord yq;
    for (int i = 0; i < q; ++i) yq.push_back(GEN_y);
    return {xx, yq};
}

// BFS renumbering from the given root; the result forgets dead cosets.
CosetTable standardize(const std::vector<std::array<int, 4>>& tab, int root) {
    std::vector<int> order = {root};
    std::map<int, int> number = {{root, 0}};
    for (std::size_t head = 0; head < order.size(); ++head) {
        int c = order[head];
        for (int g = 0; g < 4; ++g) {
            int d = tab[static_cast<std::size_t>(c)][g];
            if (d != UNDEF && !number.count(d)) {
                number[d] = static_cast<int>(order.size());
                order.push_back(d);
            }
        }
    }
    CosetTable out;
    out.row.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int g = 0; g < 4; ++g) {
            int d = tab[static_cast<std::size_t>(order[i])][g];
            out.row[i][g] = d == UNDEF ? UNDEF : number.at(d);
        }
    return out;
}

} // namespace

CosetTable todd_coxeter(int q, const std::vector<XYWord>& subgroup_words, long long coset_cap) {
    if (q < 3) throw std::invalid_argument("todd_coxeter: q must be >= 3");
    if (coset_cap <= 0) coset_cap = env_cap("HECKE_TC_CAP", 1000000);

    Enumerator en(coset_cap);
    auto relators = relators_for(q);

    for (const XYWord& w : subgroup_words) en.scan_and_fill(en.find(0), w);

    for (int c = 0; c < static_cast<int>(en.tab.size()); ++c) {
        if (!en.live(c)) continue;
        for (const XYWord& rel : relators) {
            en.scan_and_fill(c, rel);
            if (!en.live(c)) break;
        }
    }

    // normalize entries to representatives; the action must be complete
    for (int c = 0; c < static_cast<int>(en.tab.size()); ++c) {
        if (!en.live(c)) continue;
        for (int g = 0; g < 4; ++g) {
            if (en.at(c, g) == UNDEF)
                throw std::logic_error("todd_coxeter: incomplete table after enumeration");
            en.at(c, g) = en.find(en.at(c, g));
        }
    }
    return standardize(en.tab, en.find(0));
}

// ---------------------------------------------------------------------------
// Low-index subgroups

namespace {

struct LowIndexSearcher {
    int q;
    int max_index;
    std::vector<XYWord> relators;
    std::vector<std::array<int, 4>> tab;
    std::vector<CosetTable> found;

    LowIndexSearcher(int q_, int n) : q(q_), max_index(n), relators(relators_for(q_)) {}

    // Scans relator w at coset c without defining new cosets.
    // Returns false on contradiction; fills single gaps (recording in trail).
    bool scan(int c, const XYWord& w, std::vector<std::pair<int, int>>& trail, bool& progressed) {
        int f = c;
        std::size_t i = 0;
        int b = c;
        std::size_t j = w.size();
        while (i < j && tab[static_cast<std::size_t>(f)][w[i]] != UNDEF) {
            f = tab[static_cast<std::size_t>(f)][w[i]];
            ++i;
        }
        if (i == j) return f == b;
        while (j > i && tab[static_cast<std::size_t>(b)][xy_inverse(w[j - 1])] != UNDEF) {
            b = tab[static_cast<std::size_t>(b)][xy_inverse(w[j - 1])];
            --j;
        }
        if (j == i) return f == b;
        if (j == i + 1) {
            int g = w[i];
            if (tab[static_cast<std::size_t>(f)][g] != UNDEF || tab[static_cast<std::size_t>(b)][xy_inverse(g)] != UNDEF)
                return false;
            tab[static_cast<std::size_t>(f)][g] = b;
            tab[static_cast<std::size_t>(b)][xy_inverse(g)] = f;
            trail.emplace_back(f, g);
            trail.emplace_back(b, xy_inverse(g));
            progressed = true;
        }
        return true;
    }

    bool close_deductions(std::vector<std::pair<int, int>>& trail) {
        bool progressed = true;
        while (progressed) {
            progressed = false;
            for (int c = 0; c < static_cast<int>(tab.size()); ++c)
                for (const XYWord& rel : relators)
                    if (!scan(c, rel, trail, progressed)) return false;
        }
        return true;
    }

    void undo(std::vector<std::pair<int, int>>& trail, std::size_t mark, std::size_t rows_mark) {
        while (trail.size() > mark) {
            auto [c, g] = trail.back();
            trail.pop_back();
            tab[static_cast<std::size_t>(c)][g] = UNDEF;
        }
        while (tab.size() > rows_mark) tab.pop_back();
    }

    void dfs(std::vector<std::pair<int, int>>& trail) {
        int c = -1, g = -1;
        for (int cc = 0; cc < static_cast<int>(tab.size()) && c < 0; ++cc)
            for (int gg = 0; gg < 4; ++gg)
                if (tab[static_cast<std::size_t>(cc)][gg] == UNDEF) {
                    c = cc;
                    g = gg;
                    break;
                }
        if (c < 0) {
            CosetTable t;
            t.row = tab;
            found.push_back(std::move(t));
            return;
        }
        int n = static_cast<int>(tab.size());
        for (int d = 0; d <= n; ++d) {
            if (d == n && n >= max_index) break;
            std::size_t mark = trail.size();
            std::size_t rows_mark = tab.size();
            if (d == n) tab.push_back({UNDEF, UNDEF, UNDEF, UNDEF});
            if (tab[static_cast<std::size_t>(d)][xy_inverse(g)] != UNDEF) {
                undo(trail, mark, rows_mark);
                continue;
            }
            tab[static_cast<std::size_t>(c)][g] = d;
            tab[static_cast<std::size_t>(d)][xy_inverse(g)] = c;
            trail.emplace_back(c, g);
            trail.emplace_back(d, xy_inverse(g));
            if (close_deductions(trail)) dfs(trail);
            undo(trail, mark, rows_mark);
        }
    }
};

std::vector<int> flatten(const CosetTable& t) {
    std::vector<int> v;
    for (const auto& r : t.row)
        for (int g = 0; g < 4; ++g) v.push_back(r[g]);
    return v;
}

// Conjugacy-canonical form: the least standardized table over all roots.
std::vector<int> conjugacy_canonical(const CosetTable& t) {
    std::vector<int> best;
    std::vector<std::array<int, 4>> raw = t.row;
    for (int root = 0; root < t.index(); ++root) {
        std::vector<int> cand = flatten(standardize(raw, root));
        if (best.empty() || cand < best) best = cand;
    }
    return best;
}

bool is_normal_table(const CosetTable& t) {
    int n = t.index();
    // spanning tree words from coset 0
    std::vector<XYWord> rep_word(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<int> bfs = {0};
    seen[0] = true;
    while (!bfs.empty()) {
        int c = bfs.front();
        bfs.pop_front();
        for (int g = 0; g < 4; ++g) {
            int d = t.apply(c, g);
            if (!seen[static_cast<std::size_t>(d)]) {
                seen[static_cast<std::size_t>(d)] = true;
                rep_word[static_cast<std::size_t>(d)] = rep_word[static_cast<std::size_t>(c)];
                rep_word[static_cast<std::size_t>(d)].push_back(g);
                bfs.push_back(d);
            }
        }
    }
    auto inverse_word = [](const XYWord& w) {
        XYWord r;
        for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(xy_inverse(*it));
        return r;
    };
    // Schreier generators of the coset-0 stabilizer, conjugated by x and y,
    // must still stabilize coset 0.
    for (int c = 0; c < n; ++c) {
        for (int g = 0; g < 4; ++g) {
            XYWord u = rep_word[static_cast<std::size_t>(c)];
            u.push_back(g);
            XYWord back = inverse_word(rep_word[static_cast<std::size_t>(t.apply(c, g))]);
            u.insert(u.end(), back.begin(), back.end());
            for (int conj : {GEN_x, GEN_y}) {
                int pt = t.apply(0, conj);
                pt = t.apply_word(pt, u);
                pt = t.apply(pt, xy_inverse(conj));
                if (pt != 0) return false;
            }
        }
    }
    return true;
}

} // namespace

std::vector<LowIndexEntry> low_index_subgroups(int q, int max_index) {
    if (q < 3) throw std::invalid_argument("low_index_subgroups: q must be >= 3");
    if (max_index < 1) return {};
    if (max_index > 12) throw std::invalid_argument("low_index_subgroups: max index capped at 12");

    LowIndexSearcher s(q, max_index);
    s.tab.push_back({UNDEF, UNDEF, UNDEF, UNDEF});
    std::vector<std::pair<int, int>> trail;
    s.dfs(trail);

    std::vector<LowIndexEntry> out;
    std::vector<std::vector<int>> seen;
    for (const CosetTable& t : s.found) {
        std::vector<int> canon = conjugacy_canonical(t);
        if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
        seen.push_back(std::move(canon));
        out.push_back({t, is_normal_table(t)});
    }
    std::sort(out.begin(), out.end(), [](const LowIndexEntry& a, const LowIndexEntry& b) {
        if (a.table.index() != b.table.index()) return a.table.index() < b.table.index();
        return flatten(a.table) < flatten(b.table);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Abelianization

AbelianizationResult abelianization_subgroup(std::vector<int> elliptic_orders, int free_rank) {
    for (int o : elliptic_orders)
        if (o < 2) throw std::invalid_argument("abelianization: orders must be >= 2");

    std::map<long long, std::vector<int>> parts; // prime -> exponents, descending
    for (int o : elliptic_orders) {
        long long rest = o;
        for (long long p = 2; p * p <= rest; ++p) {
            int e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            if (e) parts[p].push_back(e);
        }
        if (rest > 1) parts[rest].push_back(1);
    }
    std::size_t k = 0;
    for (auto& [p, es] : parts) {
        std::sort(es.rbegin(), es.rend());
        k = std::max(k, es.size());
    }
    std::vector<Int> factors(k, Int(1));
    for (auto& [p, es] : parts)
        for (std::size_t i = 0; i < es.size(); ++i) {
            Int pe = 1;
            for (int e = 0; e < es[i]; ++e) pe *= p;
            factors[i] *= pe;
        }
    std::reverse(factors.begin(), factors.end()); // divisibility order d1 | d2 | ...

    AbelianizationResult r;
    r.invariant_factors = std::move(factors);
    r.free_rank = free_rank;
    r.commutator_index_finite = free_rank == 0;
    r.commutator_index = 1;
    if (r.commutator_index_finite)
        for (int o : elliptic_orders) r.commutator_index *= o;
    return r;
}

} // namespace hecke
