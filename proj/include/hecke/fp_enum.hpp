#pragma once

#include <vector>

#include "hecke/group.hpp"

namespace hecke {

// Generators of the presentation <x, y | x^2, y^q> of G_q, with x = S and
// y = S T^-1. Words are sequences of these letter codes.
enum XYLetter : int { GEN_x = 0, GEN_X = 1, GEN_y = 2, GEN_Y = 3 };

using XYWord = std::vector<int>;

inline int xy_inverse(int g) { return g ^ 1; }

/// Translates a word over {S, T, T^-1} into the x/y alphabet via
/// S -> x, T -> y^-1 x, T^-1 -> x^-1 y.
XYWord translate_to_xy(const Word& w);

/// Evaluates an x/y word back into matrices (x = S, y = S T^-1); the
/// translation is a homomorphism, so translate-then-evaluate agrees with
/// direct evaluation.
GroupElement eval_xy(const XYWord& w, int q);

XYWord parse_xy(const std::string& text);
std::string xy_to_string(const XYWord& w);

/**
 * A complete coset table for <x, y | x^2, y^q> acting on right cosets.
 * Rows are cosets (0-based), columns follow XYLetter order. Tables are
 * standardized: cosets are numbered in scan order from coset 0.
 */
struct CosetTable {
    std::vector<std::array<int, 4>> row;

    int index() const { return static_cast<int>(row.size()); }
    int apply(int coset, int letter) const { return row[static_cast<std::size_t>(coset)][letter]; }
    int apply_word(int coset, const XYWord& w) const {
        for (int l : w) coset = apply(coset, l);
        return coset;
    }
    bool operator==(const CosetTable& o) const { return row == o.row; }
};

/// Todd-Coxeter coset enumeration (HLT with immediate coincidence
/// handling). Throws CapExceeded if more than `coset_cap` cosets are
/// needed; the default may be overridden by HECKE_TC_CAP.
CosetTable todd_coxeter(int q, const std::vector<XYWord>& subgroup_words,
                        long long coset_cap = -1);

struct LowIndexEntry {
    CosetTable table;
    bool normal;
};

/// All subgroups of G_q = <x, y | x^2, y^q> of index <= max_index, one
/// coset table per conjugacy class. max_index is capped at 12.
std::vector<LowIndexEntry> low_index_subgroups(int q, int max_index);

struct AbelianizationResult {
    std::vector<Int> invariant_factors; // of the torsion part, divisibility order
    int free_rank;
    bool commutator_index_finite;
    Int commutator_index; // valid when finite
};

/// Abelianization of the free product Z^r * (*_i Z_{o_i}): the direct sum
/// Z^r + sum Z_{o_i}. The commutator subgroup has index prod o_i when
/// r = 0 and infinite index otherwise.
AbelianizationResult abelianization_subgroup(std::vector<int> elliptic_orders, int free_rank);

} // namespace hecke
