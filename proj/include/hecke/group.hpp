#pragma once

#include <array>
#include <optional>
#include <string>

#include "hecke/ring.hpp"

namespace hecke {

enum class Letter : std::int8_t { S = 0, T = 1, Tinv = 2 };

/// A freely reduced word over {S, T, T^-1}. S is its own inverse
/// projectively, so SS and TT^-1 / T^-1T are cancelled as letters arrive.
class Word {
public:
    Word() = default;

    void push(Letter l);
    void push_T_power(long long k);
    void append(const Word& w);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    bool operator==(const Word& o) const { return letters_ == o.letters_; }

    /// Serialized over the alphabet S, T, t (t denotes T^-1).
    std::string to_string() const;
    static Word parse(const std::string& text);

private:
    std::vector<Letter> letters_;
};

/// Raw 2x2 matrix over Z[lambda_q]; no canonicalization, determinant +-1.
/// Used for the improper automorphism J and as scratch for conjugation.
struct Mat2 {
    std::array<RingElement, 4> e; // row major: a11 a12 a21 a22
    RingElement det() const { return e[0] * e[3] - e[1] * e[2]; }
};

/**
 * Determinant-1 projective matrix over Z[lambda_q]: M and -M are the same
 * element. The representative is canonical: the first nonzero entry in
 * row-major order has positive real embedding.
 */
class GroupElement {
public:
    GroupElement(const MinPoly& p, std::array<RingElement, 4> entries);

    static GroupElement identity(int q);
    static GroupElement gen_S(int q);
    static GroupElement gen_T(int q);

    const RingElement& a11() const { return e_[0]; }
    const RingElement& a12() const { return e_[1]; }
    const RingElement& a21() const { return e_[2]; }
    const RingElement& a22() const { return e_[3]; }
    const std::array<RingElement, 4>& entries() const { return e_; }
    int q() const { return e_[0].q(); }

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const;
    RingElement trace() const { return e_[0] + e_[3]; }
    bool is_identity() const;
    bool operator==(const GroupElement& o) const { return e_ == o.e_; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

    std::string to_string() const;
    static GroupElement parse(const MinPoly& p, const std::string& text);

private:
    std::array<RingElement, 4> e_;
};

/// The improper involution J = [[0,1],[1,0]] (determinant -1); it acts on
/// the group only by conjugation.
Mat2 improper_J(int q);

/// h g h^-1 for h of determinant +-1.
GroupElement conjugate(const GroupElement& g, const GroupElement& h);
GroupElement conjugate(const GroupElement& g, const Mat2& h);

enum class ElementKind { Identity, Elliptic, Parabolic, Hyperbolic };

struct Classification {
    ElementKind kind;
    int order; // projective order for elliptic elements, 1 for identity, 0 otherwise
};

/// Exact classification: identity, parabolic (trace +-2), elliptic with its
/// order found by powering up to 2q, hyperbolic otherwise.
Classification classify(const GroupElement& g);

GroupElement eval_word(const Word& w, int q);

struct DecomposeResult {
    std::optional<Word> word;
    std::string diagnostic; // set when word is empty

    bool ok() const { return word.has_value(); }
};

/// Decomposes g into a word over {S, T, T^-1} by nearest-lambda-multiple
/// continued fractions. Guaranteed to terminate on group elements for
/// q in {3, 5}; otherwise bounded by step_cap and reported as not-in-group.
DecomposeResult decompose(const GroupElement& g, long long step_cap = 10000);

} // namespace hecke
