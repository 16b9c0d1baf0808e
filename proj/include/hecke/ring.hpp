#pragma once

#include <optional>
#include <vector>

#include "hecke/common.hpp"

namespace hecke {

/**
 * Minimal polynomial of lambda_q = 2 cos(pi/q), q >= 3.
 *
 * Computed by folding the 2q-th cyclotomic polynomial with the
 * substitution x = y + 1/y; the result is monic of degree phi(2q)/2.
 * Instances are interned, so pointer equality means "same q".
 */
class MinPoly {
public:
    static const MinPoly& get(int q);

    int q() const { return q_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Monic coefficient vector, constant term first.
    const std::vector<Int>& coeffs() const { return coeffs_; }
    /// Double approximation of the root 2 cos(pi/q).
    double root_approx() const { return root_; }
    /// Rational bracket [lo, hi] isolating the root (used by interval signs).
    const Rat& root_lo() const { return lo_; }
    const Rat& root_hi() const { return hi_; }

    MinPoly(const MinPoly&) = delete;
    MinPoly& operator=(const MinPoly&) = delete;

private:
    explicit MinPoly(int q);

    int q_;
    std::vector<Int> coeffs_;
    double root_;
    Rat lo_, hi_;
};

/**
 * Exact element of Z[lambda_q]: an integer coefficient vector of length
 * deg(MinPoly), meaning sum coeffs[i] * lambda^i, always kept reduced
 * modulo the minimal polynomial. Reduced vectors are canonical, so
 * equality is coefficient-wise.
 */
class RingElement {
public:
    RingElement(const MinPoly& p, std::vector<Int> coeffs);

    static RingElement zero(const MinPoly& p);
    static RingElement one(const MinPoly& p);
    static RingElement integer(const MinPoly& p, Int n);
    static RingElement lambda(const MinPoly& p);

    const MinPoly& poly() const { return *poly_; }
    int q() const { return poly_->q(); }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& coeff(int i) const { return c_.at(static_cast<std::size_t>(i)); }

    bool is_zero() const;
    bool is_one() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const Int& k) const;
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    /// Field norm N(x) = prod of the conjugates, computed as the resultant
    /// of the minimal polynomial with the coefficient polynomial.
    Int norm() const;

    /// Serializes per the grammar INT (("+"|"-") UINT "L")?, e.g. "-6-11L"
    /// for -6 - 11 lambda. Only elements supported by the grammar (degree
    /// <= 1 in lambda) are printable.
    std::string to_string() const;
    static RingElement parse(const MinPoly& p, const std::string& text);

private:
    const MinPoly* poly_;
    std::vector<Int> c_;
};

/// Sign of the image of `a` under the real embedding lambda -> 2 cos(pi/q).
/// Exact integer arithmetic for q in {3, 5}; refinable interval evaluation
/// otherwise (throws PrecisionExhausted after the refinement cap).
int sign_of(const RingElement& a);

/// sign_of(a - b).
int compare(const RingElement& a, const RingElement& b);

/// A gcd of a and b, up to units; normalized so its real embedding is
/// positive. Requires q in {3, 5} (norm-Euclidean cases used here).
RingElement euclid_gcd(const RingElement& a, const RingElement& b);

/// Exact quotient a / b when b divides a in Z[lambda_q]; nullopt otherwise.
std::optional<RingElement> exact_divide(const RingElement& a, const RingElement& b);

/// Writes a/b as (num, den) with den a positive rational integer:
/// a * b^{-1} = num / den in Q(lambda). Requires b != 0.
std::pair<RingElement, Int> field_div(const RingElement& a, const RingElement& b);

/// Residue of a FiniteRing: one entry per basis direction, each reduced
/// modulo the per-direction modulus.
struct Residue {
    std::vector<std::int64_t> v;
    bool operator==(const Residue& o) const { return v == o.v; }
    bool operator!=(const Residue& o) const { return v != o.v; }
};

/**
 * The finite quotient Z[lambda_q]/(alpha) for alpha != 0, realized as the
 * quotient of the coefficient lattice Z^d by the image of the
 * multiplication-by-alpha map. The lattice quotient is diagonalized once
 * (Smith normal form), after which residues are vectors modulo the
 * invariant factors and the reduction map is a ring homomorphism.
 */
class FiniteRing {
public:
    explicit FiniteRing(const RingElement& alpha);

    const RingElement& modulus() const { return alpha_; }
    const MinPoly& poly() const { return alpha_.poly(); }
    const Int& cardinality() const { return card_; }
    const std::vector<Int>& invariant_factors() const { return diag_; }

    Residue reduce(const RingElement& a) const;
    /// Some preimage of r under reduce (the canonical lattice lift).
    RingElement lift(const Residue& r) const;

    Residue zero() const;
    Residue one() const;
    Residue add(const Residue& a, const Residue& b) const;
    Residue sub(const Residue& a, const Residue& b) const;
    Residue neg(const Residue& a) const;
    Residue mul(const Residue& a, const Residue& b) const;
    bool is_zero(const Residue& a) const;

private:
    RingElement alpha_;
    Int card_;
    std::vector<Int> diag_;              // invariant factors d_1 | d_2 | ...
    std::vector<std::int64_t> mod_;      // diag_ as int64 (guarded)
    std::vector<std::vector<Int>> u_;    // row transform: residue = U x mod diag
    std::vector<std::vector<Int>> uinv_; // lattice lift
    bool fast_mul_ = false;              // structure constants fit in int64
    std::vector<Residue> basis_prod_;    // encode(lift(e_i) * lift(e_j)), row major
};

} // namespace hecke
