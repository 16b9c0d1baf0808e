#include "hecke/ring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace hecke {

long long env_cap(const char* name, long long fallback) {
    const char* s = std::getenv(name);
    if (!s || !*s) return fallback;
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end == s || v <= 0) return fallback;
    return v;
}

namespace {

using Poly = std::vector<Int>; // constant term first

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// Exact division of integer polynomials; throws if not exact.
Poly poly_divexact(Poly num, const Poly& den) {
    Poly d = den;
    trim(d);
    trim(num);
    if (d.empty()) throw std::domain_error("poly_divexact: zero divisor");
    if (num.empty()) return {};
    if (num.size() < d.size()) throw std::domain_error("poly_divexact: not divisible");
    Poly q(num.size() - d.size() + 1, Int(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        Int lead = num[k + d.size() - 1];
        if (lead % d.back() != 0) throw std::domain_error("poly_divexact: not divisible");
        Int c = lead / d.back();
        q[k] = c;
        if (c != 0)
            for (std::size_t i = 0; i < d.size(); ++i)
                num[k + i] -= c * d[i];
    }
    trim(num);
    if (!num.empty()) throw std::domain_error("poly_divexact: nonzero remainder");
    return q;
}

const Poly& cyclotomic(int n) {
    static std::map<int, Poly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<Poly(int)> compute = [&](int m) -> Poly {
        auto c = cache.find(m);
        if (c != cache.end()) return c->second;
        Poly num(static_cast<std::size_t>(m) + 1, Int(0)); // x^m - 1
        num[0] = -1;
        num[static_cast<std::size_t>(m)] = 1;
        for (int d = 1; d < m; ++d) {
            if (m % d == 0) num = poly_divexact(num, compute(d));
        }
        cache[m] = num;
        return num;
    };
    compute(n);
    return cache[n];
}

// Folds a palindromic polynomial of even degree 2m into a degree-m
// polynomial in x = y + 1/y, using y^k + y^-k = V_k(x) with
// V_0 = 2, V_1 = x, V_{k+1} = x V_k - V_{k-1}.
Poly fold_palindromic(const Poly& c) {
    std::size_t deg = c.size() - 1;
    if (deg % 2 != 0) throw std::domain_error("fold: odd degree");
    std::size_t m = deg / 2;
    for (std::size_t i = 0; i <= deg; ++i)
        if (c[i] != c[deg - i]) throw std::domain_error("fold: not palindromic");

    Poly acc(m + 1, Int(0));
    acc[0] = c[m];
    Poly vk_prev = {Int(2)};       // V_0
    Poly vk = {Int(0), Int(1)};    // V_1
    for (std::size_t k = 1; k <= m; ++k) {
        for (std::size_t i = 0; i < vk.size(); ++i) acc[i] += c[m + k] * vk[i];
        if (k < m) {
            Poly next(vk.size() + 1, Int(0));
            for (std::size_t i = 0; i < vk.size(); ++i) next[i + 1] = vk[i];
            for (std::size_t i = 0; i < vk_prev.size(); ++i) next[i] -= vk_prev[i];
            vk_prev = std::move(vk);
            vk = std::move(next);
        }
    }
    return acc;
}

double poly_eval_double(const Poly& p, double x) {
    double r = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i].convert_to<double>();
    return r;
}

Rat poly_eval_rat(const Poly& p, const Rat& x) {
    Rat r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + Rat(p[i]);
    return r;
}

int sgn_rat(const Rat& r) {
    if (r == 0) return 0;
    return r > 0 ? 1 : -1;
}

int sgn_int(const Int& r) {
    if (r == 0) return 0;
    return r > 0 ? 1 : -1;
}

// Reduce an integer polynomial modulo the (monic) minimal polynomial.
void reduce_mod(Poly& p, const Poly& minpoly) {
    std::size_t d = minpoly.size() - 1;
    while (p.size() > d) {
        Int lead = p.back();
        std::size_t shift = p.size() - 1 - d;
        if (lead != 0)
            for (std::size_t i = 0; i < d; ++i) p[shift + i] -= lead * minpoly[i];
        p.pop_back();
    }
    p.resize(d, Int(0));
}

// Determinant by fraction-free (Bareiss) elimination.
Int bareiss_det(std::vector<std::vector<Int>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Resultant of the minimal polynomial and g via the Sylvester matrix.
Int resultant_with_minpoly(const Poly& minpoly, const Poly& gin) {
    Poly g = gin;
    trim(g);
    std::size_t m = minpoly.size() - 1;
    if (g.empty()) return 0;
    if (g.size() == 1) {
        Int r = 1;
        for (std::size_t i = 0; i < m; ++i) r *= g[0];
        return r;
    }
    std::size_t n = g.size() - 1;
    std::size_t dim = m + n;
    std::vector<std::vector<Int>> s(dim, std::vector<Int>(dim, Int(0)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = minpoly[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
    return bareiss_det(std::move(s));
}

} // namespace

// ---------------------------------------------------------------------------
// MinPoly

MinPoly::MinPoly(int q) : q_(q) {
    if (q < 3) throw std::invalid_argument("MinPoly: q must be >= 3");
    coeffs_ = fold_palindromic(cyclotomic(2 * q));
    root_ = 2.0 * std::cos(M_PI / q);

    // Rational bracket around the largest root; the gap to the next root
    // 2cos(3*pi/q) dwarfs the 1e-6 slack for any reasonable q.
    double eps = 1e-6;
    lo_ = Rat(static_cast<long long>((root_ - eps) * 1e12), 1000000000000LL);
    hi_ = Rat(static_cast<long long>((root_ + eps) * 1e12), 1000000000000LL);
    if (sgn_rat(poly_eval_rat(coeffs_, lo_)) * sgn_rat(poly_eval_rat(coeffs_, hi_)) >= 0)
        throw std::logic_error("MinPoly: failed to bracket the root");
    double check = poly_eval_double(coeffs_, root_);
    if (std::abs(check) > 1e-9)
        throw std::logic_error("MinPoly: numeric root check failed");
}

const MinPoly& MinPoly::get(int q) {
    static std::map<int, std::unique_ptr<MinPoly>> registry;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = registry.find(q);
    if (it == registry.end())
        it = registry.emplace(q, std::unique_ptr<MinPoly>(new MinPoly(q))).first;
    return *it->second;
}

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement(const MinPoly& p, std::vector<Int> coeffs) : poly_(&p), c_(std::move(coeffs)) {
    reduce_mod(c_, p.coeffs());
}

RingElement RingElement::zero(const MinPoly& p) { return RingElement(p, {}); }
RingElement RingElement::one(const MinPoly& p) { return RingElement(p, {Int(1)}); }
RingElement RingElement::integer(const MinPoly& p, Int n) { return RingElement(p, {std::move(n)}); }
RingElement RingElement::lambda(const MinPoly& p) { return RingElement(p, {Int(0), Int(1)}); }

bool RingElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

bool RingElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Int& x) { return x == 0; });
}

static void check_same_ring(const RingElement& a, const RingElement& b) {
    if (&a.poly() != &b.poly())
        throw std::invalid_argument("ring op: elements over different q");
}

RingElement RingElement::operator+(const RingElement& o) const {
    check_same_ring(*this, o);
    std::vector<Int> r(c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return RingElement(*poly_, std::move(r));
}

RingElement RingElement::operator-(const RingElement& o) const {
    check_same_ring(*this, o);
    std::vector<Int> r(c_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
    return RingElement(*poly_, std::move(r));
}

RingElement RingElement::operator*(const RingElement& o) const {
    check_same_ring(*this, o);
    return RingElement(*poly_, poly_mul(c_, o.c_));
}

RingElement RingElement::operator-() const {
    std::vector<Int> r(c_);
    for (auto& x : r) x = -x;
    return RingElement(*poly_, std::move(r));
}

RingElement RingElement::operator*(const Int& k) const {
    std::vector<Int> r(c_);
    for (auto& x : r) x *= k;
    return RingElement(*poly_, std::move(r));
}

bool RingElement::operator==(const RingElement& o) const {
    return poly_ == o.poly_ && c_ == o.c_;
}

Int RingElement::norm() const {
    return resultant_with_minpoly(poly_->coeffs(), c_);
}

std::string RingElement::to_string() const {
    for (std::size_t i = 2; i < c_.size(); ++i)
        if (c_[i] != 0)
            throw std::domain_error("RingElement::to_string: element not representable in a0+a1L form");
    std::ostringstream out;
    out << (c_.empty() ? Int(0) : c_[0]);
    if (c_.size() >= 2 && c_[1] != 0) {
        out << (c_[1] > 0 ? "+" : "-");
        Int a = c_[1] > 0 ? c_[1] : Int(-c_[1]);
        out << a << "L";
    }
    return out.str();
}

RingElement RingElement::parse(const MinPoly& p, const std::string& text) {
    std::size_t i = 0;
    auto skip_ws = [&]() { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto parse_int = [&](bool sign_required) -> Int {
        skip_ws();
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        } else if (sign_required) {
            throw std::invalid_argument("ring parse: expected sign in '" + text + "'");
        }
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw std::invalid_argument("ring parse: expected digits in '" + text + "'");
        Int v(text.substr(start, i - start));
        return neg ? Int(-v) : v;
    };
    Int a0 = parse_int(false);
    skip_ws();
    Int a1 = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        a1 = parse_int(true);
        skip_ws();
        if (i >= text.size() || (text[i] != 'L' && text[i] != 'l'))
            throw std::invalid_argument("ring parse: expected 'L' in '" + text + "'");
        ++i;
    }
    skip_ws();
    if (i != text.size())
        throw std::invalid_argument("ring parse: trailing characters in '" + text + "'");
    std::vector<Int> c = {a0};
    if (p.degree() >= 2) {
        c.push_back(a1);
    } else if (a1 != 0) {
        throw std::invalid_argument("ring parse: lambda coefficient not supported for this q");
    }
    return RingElement(p, std::move(c));
}

// ---------------------------------------------------------------------------
// Signs

namespace {

// Exact sign of a0 + a1 * (1+sqrt(5))/2.
int sign_q5(const Int& a0, const Int& a1) {
    Int p = 2 * a0 + a1; // value = (p + a1 sqrt 5) / 2
    if (a1 == 0) return sgn_int(p);
    if (a1 > 0) {
        if (p >= 0) return 1;
        return sgn_int(5 * a1 * a1 - p * p);
    }
    if (p <= 0) return -1;
    return sgn_int(p * p - 5 * a1 * a1);
}

struct Interval {
    Rat lo, hi;
};

Interval iv_mul(const Interval& a, const Interval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

Interval iv_eval(const std::vector<Int>& c, const Interval& x) {
    Interval r{Rat(0), Rat(0)};
    for (std::size_t i = c.size(); i-- > 0;) {
        r = iv_mul(r, x);
        r.lo += Rat(c[i]);
        r.hi += Rat(c[i]);
    }
    return r;
}

int sign_by_interval(const RingElement& a) {
    const MinPoly& p = a.poly();
    Rat lo = p.root_lo(), hi = p.root_hi();
    int s_lo = sgn_rat(poly_eval_rat(p.coeffs(), lo));
    const int max_refine = 256;
    for (int step = 0; step < max_refine; ++step) {
        Interval v = iv_eval(a.coeffs(), {lo, hi});
        if (sgn_rat(v.lo) > 0) return 1;
        if (sgn_rat(v.hi) < 0) return -1;
        Rat mid = (lo + hi) / 2;
        // mid can never be the irrational root, so s_mid is +-1
        int s_mid = sgn_rat(poly_eval_rat(p.coeffs(), mid));
        if (s_mid == s_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw PrecisionExhausted("sign_of: interval refinement cap reached");
}

} // namespace

int sign_of(const RingElement& a) {
    if (a.is_zero()) return 0;
    int q = a.q();
    if (a.poly().degree() == 1) {
        // lambda is rational (q = 3): value is just a0 after reduction
        return sgn_int(a.coeff(0));
    }
    if (q == 5) return sign_q5(a.coeff(0), a.coeff(1));
    return sign_by_interval(a);
}

int compare(const RingElement& a, const RingElement& b) {
    return sign_of(a - b);
}

// ---------------------------------------------------------------------------
// Division, gcd

std::pair<RingElement, Int> field_div(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    if (b.is_zero()) throw std::domain_error("field_div: division by zero");
    const MinPoly& mp = a.poly();

    // Extended Euclid over Q[x]: u * minpoly + v * b = 1, so b^{-1} = v.
    using QP = std::vector<Rat>;
    auto qtrim = [](QP& p) { while (!p.empty() && p.back() == 0) p.pop_back(); };
    auto qdivmod = [&](QP num, const QP& den) {
        QP q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
        for (std::size_t k = q.size(); k-- > 0;) {
            Rat c = num[k + den.size() - 1] / den.back();
            q[k] = c;
            for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= c * den[i];
        }
        qtrim(num);
        return std::make_pair(q, num);
    };

    QP r0, r1, v0 = {Rat(0)}, v1 = {Rat(1)};
    for (const Int& c : mp.coeffs()) r0.push_back(Rat(c));
    for (const Int& c : b.coeffs()) r1.push_back(Rat(c));
    qtrim(r1);
    while (true) {
        qtrim(r1);
        if (r1.empty()) throw std::domain_error("field_div: divisor not invertible");
        if (r1.size() == 1) break;
        auto [q, r] = qdivmod(r0, r1);
        QP vnext = v0;
        // v_next = v0 - q * v1
        QP qv1(q.size() + v1.size(), Rat(0));
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < v1.size(); ++j) qv1[i + j] += q[i] * v1[j];
        if (vnext.size() < qv1.size()) vnext.resize(qv1.size(), Rat(0));
        for (std::size_t i = 0; i < qv1.size(); ++i) vnext[i] -= qv1[i];
        r0 = std::move(r1);
        r1 = std::move(r);
        v0 = std::move(v1);
        v1 = std::move(vnext);
        qtrim(v1);
    }
    // r1 is a nonzero constant c: inverse of b is v1 / c.
    Rat c = r1[0];
    QP inv = v1;
    for (auto& x : inv) x /= c;

    // a * inv, reduced mod minpoly over Q, then cleared to (num, den).
    QP prod(a.coeffs().size() + inv.size(), Rat(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < inv.size(); ++j) prod[i + j] += Rat(a.coeff(static_cast<int>(i))) * inv[j];
    // reduce mod monic minpoly
    std::size_t d = static_cast<std::size_t>(mp.degree());
    while (prod.size() > d) {
        Rat lead = prod.back();
        std::size_t shift = prod.size() - 1 - d;
        if (lead != 0)
            for (std::size_t i = 0; i < d; ++i) prod[shift + i] -= lead * Rat(mp.coeffs()[i]);
        prod.pop_back();
    }
    prod.resize(d, Rat(0));

    Int den = 1;
    for (const Rat& x : prod) den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(x)));
    std::vector<Int> num(d, Int(0));
    for (std::size_t i = 0; i < d; ++i) {
        Rat scaled = prod[i] * Rat(den);
        num[i] = Int(boost::multiprecision::numerator(scaled));
    }
    return {RingElement(mp, std::move(num)), den};
}

std::optional<RingElement> exact_divide(const RingElement& a, const RingElement& b) {
    if (b.is_zero()) return std::nullopt;
    auto [num, den] = field_div(a, b);
    std::vector<Int> c = num.coeffs();
    for (auto& x : c) {
        if (x % den != 0) return std::nullopt;
        x /= den;
    }
    return RingElement(a.poly(), std::move(c));
}

namespace {

// Nearest-integer division in Z[lambda_5] (norm-Euclidean): returns q with
// |N(a - q b)| < |N(b)|.
RingElement divmod_round(const RingElement& a, const RingElement& b) {
    auto [num, den] = field_div(a, b);
    std::vector<Int> c = num.coeffs();
    for (auto& x : c) {
        // round x / den to nearest integer
        Int twice = 2 * x + den;
        Int q = twice / (2 * den);
        if (twice < 0 && twice % (2 * den) != 0) q -= 1;
        x = q;
    }
    return RingElement(a.poly(), std::move(c));
}

} // namespace

RingElement euclid_gcd(const RingElement& a0, const RingElement& b0) {
    check_same_ring(a0, b0);
    int q = a0.q();
    if (q != 3 && q != 5)
        throw std::invalid_argument("euclid_gcd: only q in {3,5} supported");
    if (a0.is_zero() && b0.is_zero())
        throw std::invalid_argument("euclid_gcd: gcd(0, 0) undefined");
    RingElement a = a0, b = b0;
    while (!b.is_zero()) {
        RingElement qq = divmod_round(a, b);
        RingElement r = a - qq * b;
        a = b;
        b = r;
    }
    if (sign_of(a) < 0) a = -a;
    return a;
}

// ---------------------------------------------------------------------------
// FiniteRing

namespace {

struct SnfResult {
    std::vector<Int> diag;
    std::vector<std::vector<Int>> u; // row transform, unimodular
};

// Smith normal form of a square integer matrix, tracking row operations.
SnfResult smith_normal_form(std::vector<std::vector<Int>> m) {
    std::size_t n = m.size();
    std::vector<std::vector<Int>> u(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(m[i], m[j]);
        std::swap(u[i], u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) std::swap(m[r][i], m[r][j]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t c = 0; c < n; ++c) m[dst][c] += f * m[src][c];
        for (std::size_t c = 0; c < n; ++c) u[dst][c] += f * u[src][c];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t r = 0; r < n; ++r) m[r][dst] += f * m[r][src];
    };

    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // locate the minimal nonzero entry in the trailing block
            std::size_t pr = t, pc = t;
            Int best = 0;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (m[i][j] != 0 && (best == 0 || boost::multiprecision::abs(m[i][j]) < best)) {
                        best = boost::multiprecision::abs(m[i][j]);
                        pr = i;
                        pc = j;
                    }
            if (best == 0) break;
            if (pr != t) swap_rows(t, pr);
            if (pc != t) swap_cols(t, pc);
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i)
                if (m[i][t] != 0) {
                    add_row(i, t, -(m[i][t] / m[t][t]));
                    if (m[i][t] != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (m[t][j] != 0) {
                    add_col(j, t, -(m[t][j] / m[t][t]));
                    if (m[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            // pivot divides everything below-right? if not, mix that row in
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        add_row(t, i, Int(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (m[t][t] < 0) {
            for (std::size_t c = 0; c < n; ++c) m[t][c] = -m[t][c];
            for (std::size_t c = 0; c < n; ++c) u[t][c] = -u[t][c];
        }
    }

    SnfResult r;
    r.u = std::move(u);
    for (std::size_t i = 0; i < n; ++i) r.diag.push_back(m[i][i]);
    return r;
}

// Inverse of a unimodular integer matrix (det = +-1) via adjugate.
std::vector<std::vector<Int>> unimodular_inverse(const std::vector<std::vector<Int>>& m) {
    std::size_t n = m.size();
    Int det = bareiss_det(m);
    if (det != 1 && det != -1) throw std::logic_error("unimodular_inverse: det not a unit");
    std::vector<std::vector<Int>> inv(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<Int>> minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<Int> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            Int cof = bareiss_det(std::move(minor));
            if ((i + j) % 2 == 1) cof = -cof;
            inv[i][j] = det == 1 ? cof : Int(-cof);
        }
    return inv;
}

} // namespace

FiniteRing::FiniteRing(const RingElement& alpha) : alpha_(alpha) {
    if (alpha.is_zero()) throw std::invalid_argument("quotient_ring: modulus must be nonzero");
    const MinPoly& mp = alpha.poly();
    std::size_t d = static_cast<std::size_t>(mp.degree());

    // Column j = coefficients of alpha * lambda^j.
    std::vector<std::vector<Int>> m(d, std::vector<Int>(d, Int(0)));
    RingElement pow = RingElement::one(mp);
    RingElement lam = RingElement::lambda(mp);
    for (std::size_t j = 0; j < d; ++j) {
        RingElement col = alpha * pow;
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coeff(static_cast<int>(i));
        pow = pow * lam;
    }

    SnfResult snf = smith_normal_form(std::move(m));
    diag_ = std::move(snf.diag);
    u_ = std::move(snf.u);
    uinv_ = unimodular_inverse(u_);

    card_ = 1;
    for (const Int& x : diag_) card_ *= x;
    if (card_ == 0) throw std::logic_error("quotient_ring: singular multiplication lattice");

    for (const Int& x : diag_) {
        if (x > Int("4611686018427387904"))
            throw std::domain_error("quotient_ring: invariant factor too large for residue arithmetic");
        mod_.push_back(x.convert_to<std::int64_t>());
    }

    // structure constants for multiplication directly on residue vectors
    fast_mul_ = std::all_of(mod_.begin(), mod_.end(), [](std::int64_t x) { return x < (1LL << 31); });
    if (fast_mul_) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Residue ei, ej;
                ei.v.assign(d, 0);
                ej.v.assign(d, 0);
                ei.v[i] = 1;
                ej.v[j] = 1;
                basis_prod_.push_back(reduce(lift(ei) * lift(ej)));
            }
    }
}

Residue FiniteRing::reduce(const RingElement& a) const {
    if (&a.poly() != &alpha_.poly())
        throw std::invalid_argument("reduce: element over different q");
    std::size_t d = mod_.size();
    Residue r;
    r.v.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < d; ++j) acc += u_[i][j] * a.coeff(static_cast<int>(j));
        Int m = acc % diag_[i];
        if (m < 0) m += diag_[i];
        r.v[i] = m.convert_to<std::int64_t>();
    }
    return r;
}

RingElement FiniteRing::lift(const Residue& r) const {
    std::size_t d = mod_.size();
    std::vector<Int> c(d, Int(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) c[i] += uinv_[i][j] * Int(r.v[j]);
    return RingElement(alpha_.poly(), std::move(c));
}

Residue FiniteRing::zero() const {
    Residue r;
    r.v.assign(mod_.size(), 0);
    return r;
}

Residue FiniteRing::one() const { return reduce(RingElement::one(alpha_.poly())); }

Residue FiniteRing::add(const Residue& a, const Residue& b) const {
    Residue r;
    r.v.resize(mod_.size());
    for (std::size_t i = 0; i < mod_.size(); ++i) {
        std::int64_t s = a.v[i] + b.v[i];
        if (s >= mod_[i]) s -= mod_[i];
        r.v[i] = s;
    }
    return r;
}

Residue FiniteRing::sub(const Residue& a, const Residue& b) const {
    Residue r;
    r.v.resize(mod_.size());
    for (std::size_t i = 0; i < mod_.size(); ++i) {
        std::int64_t s = a.v[i] - b.v[i];
        if (s < 0) s += mod_[i];
        r.v[i] = s;
    }
    return r;
}

Residue FiniteRing::neg(const Residue& a) const {
    Residue r;
    r.v.resize(mod_.size());
    for (std::size_t i = 0; i < mod_.size(); ++i)
        r.v[i] = a.v[i] == 0 ? 0 : mod_[i] - a.v[i];
    return r;
}

Residue FiniteRing::mul(const Residue& a, const Residue& b) const {
    if (!fast_mul_) return reduce(lift(a) * lift(b));
    std::size_t d = mod_.size();
    Residue r;
    r.v.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (a.v[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b.v[j] == 0) continue;
            const Residue& m = basis_prod_[i * d + j];
            for (std::size_t k = 0; k < d; ++k) {
                if (m.v[k] == 0) continue;
                __int128 term = static_cast<__int128>(a.v[i]) * b.v[j] % mod_[k];
                term = term * m.v[k] % mod_[k];
                r.v[k] = static_cast<std::int64_t>((r.v[k] + term) % mod_[k]);
            }
        }
    }
    return r;
}

bool FiniteRing::is_zero(const Residue& a) const {
    return std::all_of(a.v.begin(), a.v.end(), [](std::int64_t x) { return x == 0; });
}

} // namespace hecke
