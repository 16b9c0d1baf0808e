#include "hecke/group.hpp"

#include <sstream>

namespace hecke {

// ---------------------------------------------------------------------------
// Word

void Word::push(Letter l) {
    if (!letters_.empty()) {
        Letter last = letters_.back();
        bool cancels = (last == Letter::S && l == Letter::S) ||
                       (last == Letter::T && l == Letter::Tinv) ||
                       (last == Letter::Tinv && l == Letter::T);
        if (cancels) {
            letters_.pop_back();
            return;
        }
    }
    letters_.push_back(l);
}

void Word::push_T_power(long long k) {
    Letter l = k >= 0 ? Letter::T : Letter::Tinv;
    for (long long i = 0; i < (k >= 0 ? k : -k); ++i) push(l);
}

void Word::append(const Word& w) {
    for (Letter l : w.letters_) push(l);
}

std::string Word::to_string() const {
    std::string s;
    for (Letter l : letters_) {
        switch (l) {
            case Letter::S: s += 'S'; break;
            case Letter::T: s += 'T'; break;
            case Letter::Tinv: s += 't'; break;
        }
    }
    return s;
}

Word Word::parse(const std::string& text) {
    Word w;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        switch (c) {
            case 'S': case 's': w.push(Letter::S); break;
            case 'T': w.push(Letter::T); break;
            case 't': w.push(Letter::Tinv); break;
            default:
                throw std::invalid_argument(std::string("word parse: unexpected character '") + c + "'");
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(const MinPoly& p, std::array<RingElement, 4> entries) : e_(std::move(entries)) {
    for (const auto& x : e_)
        if (&x.poly() != &p) throw std::invalid_argument("GroupElement: mixed rings");
    RingElement det = e_[0] * e_[3] - e_[1] * e_[2];
    if (!det.is_one()) throw std::invalid_argument("GroupElement: determinant must be 1");
    // canonical projective representative
    for (const auto& x : e_) {
        int s = sign_of(x);
        if (s > 0) break;
        if (s < 0) {
            for (auto& y : e_) y = -y;
            break;
        }
    }
}

static std::array<RingElement, 4> mat_of(int q, long long a, long long b, long long c, long long d) {
    const MinPoly& p = MinPoly::get(q);
    return {RingElement::integer(p, a), RingElement::integer(p, b),
            RingElement::integer(p, c), RingElement::integer(p, d)};
}

GroupElement GroupElement::identity(int q) {
    return GroupElement(MinPoly::get(q), mat_of(q, 1, 0, 0, 1));
}

GroupElement GroupElement::gen_S(int q) {
    return GroupElement(MinPoly::get(q), mat_of(q, 0, 1, -1, 0));
}

GroupElement GroupElement::gen_T(int q) {
    const MinPoly& p = MinPoly::get(q);
    return GroupElement(p, {RingElement::one(p), RingElement::lambda(p),
                            RingElement::zero(p), RingElement::one(p)});
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return GroupElement(e_[0].poly(),
                        {e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                         e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]});
}

GroupElement GroupElement::inverse() const {
    return GroupElement(e_[0].poly(), {e_[3], -e_[1], -e_[2], e_[0]});
}

bool GroupElement::is_identity() const {
    return e_[0].is_one() && e_[1].is_zero() && e_[2].is_zero() && e_[3].is_one();
}

std::string GroupElement::to_string() const {
    std::ostringstream os;
    os << "[[" << e_[0].to_string() << "," << e_[1].to_string() << "],["
       << e_[2].to_string() << "," << e_[3].to_string() << "]]";
    return os.str();
}

GroupElement GroupElement::parse(const MinPoly& p, const std::string& text) {
    // grammar: [[a,b],[c,d]] with ring-element entries, whitespace-insensitive
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]")
        throw std::invalid_argument("matrix parse: expected [[a,b],[c,d]]");
    std::string inner = s.substr(2, s.size() - 4);
    auto mid = inner.find("],[");
    if (mid == std::string::npos)
        throw std::invalid_argument("matrix parse: expected [[a,b],[c,d]]");
    auto split = [](const std::string& row) {
        auto comma = row.find(',');
        if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos)
            throw std::invalid_argument("matrix parse: each row needs exactly two entries");
        return std::make_pair(row.substr(0, comma), row.substr(comma + 1));
    };
    auto [a, b] = split(inner.substr(0, mid));
    auto [c, d] = split(inner.substr(mid + 3));
    return GroupElement(p, {RingElement::parse(p, a), RingElement::parse(p, b),
                            RingElement::parse(p, c), RingElement::parse(p, d)});
}

Mat2 improper_J(int q) {
    const MinPoly& p = MinPoly::get(q);
    return Mat2{{RingElement::zero(p), RingElement::one(p), RingElement::one(p), RingElement::zero(p)}};
}

GroupElement conjugate(const GroupElement& g, const GroupElement& h) {
    return h * g * h.inverse();
}

GroupElement conjugate(const GroupElement& g, const Mat2& h) {
    RingElement det = h.det();
    bool proper = det.is_one();
    if (!proper && !(-det).is_one())
        throw std::invalid_argument("conjugate: conjugator must have determinant +-1");
    // inverse of h scaled by det: [[d,-b],[-c,a]]; for det = -1 negate.
    std::array<RingElement, 4> hi = {h.e[3], -h.e[1], -h.e[2], h.e[0]};
    if (!proper)
        for (auto& x : hi) x = -x;
    const auto& m = h.e;
    std::array<RingElement, 4> hg = {m[0] * g.a11() + m[1] * g.a21(), m[0] * g.a12() + m[1] * g.a22(),
                                     m[2] * g.a11() + m[3] * g.a21(), m[2] * g.a12() + m[3] * g.a22()};
    std::array<RingElement, 4> r = {hg[0] * hi[0] + hg[1] * hi[2], hg[0] * hi[1] + hg[1] * hi[3],
                                    hg[2] * hi[0] + hg[3] * hi[2], hg[2] * hi[1] + hg[3] * hi[3]};
    return GroupElement(g.a11().poly(), std::move(r));
}

// ---------------------------------------------------------------------------
// Classification

Classification classify(const GroupElement& g) {
    if (g.is_identity()) return {ElementKind::Identity, 1};
    const MinPoly& p = g.a11().poly();
    RingElement tr = g.trace();
    RingElement two = RingElement::integer(p, 2);
    if (tr == two || tr == -two) return {ElementKind::Parabolic, 0};
    int q = g.q();
    GroupElement pow = g;
    for (int n = 2; n <= 2 * q; ++n) {
        pow = pow * g;
        if (pow.is_identity()) return {ElementKind::Elliptic, n};
    }
    return {ElementKind::Hyperbolic, 0};
}

// ---------------------------------------------------------------------------
// Words and decomposition

GroupElement eval_word(const Word& w, int q) {
    GroupElement acc = GroupElement::identity(q);
    GroupElement S = GroupElement::gen_S(q);
    GroupElement T = GroupElement::gen_T(q);
    GroupElement Ti = T.inverse();
    for (Letter l : w.letters()) {
        switch (l) {
            case Letter::S: acc = acc * S; break;
            case Letter::T: acc = acc * T; break;
            case Letter::Tinv: acc = acc * Ti; break;
        }
    }
    return acc;
}

namespace {

// |a| under the real embedding, as an element with nonnegative sign.
RingElement embed_abs(const RingElement& a) {
    return sign_of(a) < 0 ? -a : a;
}

// Nearest integer to the embedding value of num/den (den a positive integer),
// exact-half ties broken toward the even integer.
long long nearest_integer(const RingElement& num, const Int& den) {
    const MinPoly& p = num.poly();

    // floor by exponential bracket + bisection on exact signs
    auto cmp_with = [&](long long n) {
        // sign of num - n*den
        return sign_of(num - RingElement::integer(p, Int(n) * den));
    };
    long long lo = 0, hi = 0;
    if (cmp_with(0) >= 0) {
        hi = 1;
        while (cmp_with(hi) >= 0) {
            lo = hi;
            hi *= 2;
        }
    } else {
        lo = -1;
        hi = 0;
        while (cmp_with(lo) < 0) {
            hi = lo;
            lo *= 2;
        }
    }
    while (hi - lo > 1) {
        long long mid = lo + (hi - lo) / 2;
        if (cmp_with(mid) >= 0) lo = mid;
        else hi = mid;
    }
    long long fl = lo; // floor(num/den)

    // fractional part vs 1/2: sign of 2*(num - fl*den) - den
    RingElement frac2 = (num - RingElement::integer(p, Int(fl) * den)) * Int(2) -
                        RingElement::integer(p, den);
    int s = sign_of(frac2);
    if (s < 0) return fl;
    if (s > 0) return fl + 1;
    return fl % 2 == 0 ? fl : fl + 1; // tie: prefer the even candidate
}

} // namespace

DecomposeResult decompose(const GroupElement& g0, long long step_cap) {
    const MinPoly& p = g0.a11().poly();
    RingElement lam = RingElement::lambda(p);
    GroupElement S = GroupElement::gen_S(g0.q());
    GroupElement T = GroupElement::gen_T(g0.q());

    GroupElement g = g0;
    std::vector<long long> pivots;
    for (long long step = 0;; ++step) {
        if (g.a21().is_zero()) {
            // g = +-T^m requires unit diagonal +-1 and upper entry m*lambda
            const RingElement& d11 = g.a11();
            bool plus = d11.is_one();
            bool minus = (-d11).is_one();
            if (!plus && !minus)
                return {std::nullopt, "reduced to an upper-triangular matrix with unit diagonal != +-1"};
            RingElement b = plus ? g.a12() : -g.a12();
            // b must be an integer multiple of lambda
            long long m = 0;
            if (!b.is_zero()) {
                auto ratio = exact_divide(b, lam);
                if (!ratio.has_value())
                    return {std::nullopt, "translation part is not an integer multiple of lambda"};
                const RingElement& r = *ratio;
                for (std::size_t i = 1; i < r.coeffs().size(); ++i)
                    if (r.coeffs()[i] != 0)
                        return {std::nullopt, "translation part is not an integer multiple of lambda"};
                if (r.coeff(0) > 1000000 || r.coeff(0) < -1000000)
                    return {std::nullopt, "member, but the word is too long to materialize"};
                m = r.coeff(0).convert_to<long long>();
            }
            long long total = m >= 0 ? m : -m;
            for (long long k : pivots) total += (k >= 0 ? k : -k) + 1;
            if (total > 2000000)
                return {std::nullopt, "member, but the word is too long to materialize"};
            Word w;
            for (long long k : pivots) {
                w.push_T_power(k);
                w.push(Letter::S);
            }
            w.push_T_power(m);
            return {std::move(w), ""};
        }

        if (step >= step_cap)
            return {std::nullopt, "step cap exceeded (element is likely not in the group)"};

        // k = nearest integer to (a11/a21)/lambda under the real embedding
        auto [num, den] = field_div(g.a11(), g.a21() * lam);
        long long k = nearest_integer(num, den);

        GroupElement t_minus_k(p, {RingElement::one(p), lam * Int(-k),
                                   RingElement::zero(p), RingElement::one(p)});
        GroupElement next = S * (t_minus_k * g);
        // the measure |a21| must strictly decrease
        if (sign_of(embed_abs(next.a21()) - embed_abs(g.a21())) >= 0)
            return {std::nullopt, "reduction measure failed to decrease"};
        pivots.push_back(k);
        g = next;
    }
}

} // namespace hecke
