#include "doctest.h"

#include "hecke/fp_enum.hpp"

#include <map>
#include <random>
#include <set>

using namespace hecke;

namespace {

Word random_word(std::mt19937& rng, int len) {
    std::uniform_int_distribution<int> d(0, 2);
    Word w;
    while (static_cast<int>(w.size()) < len) w.push(static_cast<Letter>(d(rng)));
    return w;
}

// every relator acts trivially; subgroup words fix coset 0
void check_table_consistency(int q, const CosetTable& t, const std::vector<XYWord>& subgroup_words) {
    XYWord xx = {GEN_x, GEN_x};
    XYWord yq(static_cast<std::size_t>(q), GEN_y);
    for (int c = 0; c < t.index(); ++c) {
        CHECK(t.apply_word(c, xx) == c);
        CHECK(t.apply_word(c, yq) == c);
        for (int g = 0; g < 4; ++g) {
            int d = t.apply(c, g);
            CHECK(d >= 0);
            CHECK(d < t.index());
            CHECK(t.apply(d, xy_inverse(g)) == c);
        }
    }
    for (const XYWord& w : subgroup_words) CHECK(t.apply_word(0, w) == 0);
}

} // namespace

TEST_CASE("translation to the x/y alphabet is a homomorphism") {
    std::mt19937 rng(77);
    for (int q : {3, 5, 7}) {
        for (int i = 0; i < 100; ++i) {
            Word w = random_word(rng, 1 + static_cast<int>(rng() % 20));
            CHECK(eval_xy(translate_to_xy(w), q) == eval_word(w, q));
        }
    }
}

TEST_CASE("coset enumeration: known indices") {
    {
        auto words = std::vector<XYWord>{parse_xy("y"), parse_xy("xyx")};
        CosetTable t = todd_coxeter(5, words);
        CHECK(t.index() == 2);
        check_table_consistency(5, t, words);
    }
    {
        auto words = std::vector<XYWord>{parse_xy("x"), parse_xy("y")};
        CosetTable t = todd_coxeter(5, words);
        CHECK(t.index() == 1);
        check_table_consistency(5, t, words);
    }
    {
        // normal closure of x: conjugates y^k x y^-k generate an index-q subgroup
        std::vector<XYWord> words;
        for (int k = 0; k < 5; ++k) {
            XYWord w;
            for (int i = 0; i < k; ++i) w.push_back(GEN_y);
            w.push_back(GEN_x);
            for (int i = 0; i < k; ++i) w.push_back(GEN_Y);
            words.push_back(w);
        }
        CosetTable t = todd_coxeter(5, words);
        CHECK(t.index() == 5);
        check_table_consistency(5, t, words);
    }
}

TEST_CASE("coset enumeration is deterministic") {
    auto words = std::vector<XYWord>{parse_xy("y"), parse_xy("xyx")};
    CosetTable a = todd_coxeter(5, words);
    CosetTable b = todd_coxeter(5, words);
    CHECK(a == b);
}

TEST_CASE("enumeration cap") {
    // the trivial subgroup of an infinite group cannot complete
    CHECK_THROWS_AS(todd_coxeter(5, {}, 2000), CapExceeded);
}

TEST_CASE("low-index scan for q = 5") {
    auto upto4 = low_index_subgroups(5, 4);
    std::set<int> indices;
    for (const auto& s : upto4) indices.insert(s.table.index());
    CHECK(indices == std::set<int>{1, 2});

    auto upto5 = low_index_subgroups(5, 5);
    int normal5 = 0, any5 = 0;
    for (const auto& s : upto5) {
        if (s.table.index() == 5) {
            ++any5;
            if (s.normal) ++normal5;
        }
    }
    CHECK(normal5 == 1);
    CHECK(any5 >= 1);

    // index 1 and 2 are normal
    for (const auto& s : upto5)
        if (s.table.index() <= 2) CHECK(s.normal);
}

TEST_CASE("low-index scan for q = 3 reaches every index") {
    auto subs = low_index_subgroups(3, 7);
    std::set<int> indices;
    std::map<int, int> classes, normal;
    for (const auto& s : subs) {
        indices.insert(s.table.index());
        ++classes[s.table.index()];
        if (s.normal) ++normal[s.table.index()];
    }
    for (int i = 1; i <= 7; ++i) CHECK(indices.count(i) == 1);

    // conjugacy-class counts of the modular group by index
    CHECK(classes == std::map<int, int>({{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 1}, {6, 8}, {7, 6}}));
    // two normal subgroups of index 6 (the commutator and the level-2 one)
    CHECK(normal[2] == 1);
    CHECK(normal[3] == 1);
    CHECK(normal[6] == 2);
    CHECK(normal[7] == 0);
}

TEST_CASE("low-index output is duplicate-free under conjugacy") {
    auto subs = low_index_subgroups(5, 5);
    // re-rooting any table at any coset must not produce another listed table
    auto standardize_at = [](const CosetTable& t, int root) {
        std::vector<int> number(static_cast<std::size_t>(t.index()), -1);
        std::vector<int> order = {root};
        number[static_cast<std::size_t>(root)] = 0;
        for (std::size_t h = 0; h < order.size(); ++h)
            for (int g = 0; g < 4; ++g) {
                int d = t.apply(order[h], g);
                if (number[static_cast<std::size_t>(d)] < 0) {
                    number[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
                    order.push_back(d);
                }
            }
        CosetTable out;
        out.row.resize(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int g = 0; g < 4; ++g)
                out.row[i][g] = number[static_cast<std::size_t>(t.apply(order[i], g))];
        return out;
    };
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = i + 1; j < subs.size(); ++j) {
            if (subs[i].table.index() != subs[j].table.index()) continue;
            for (int root = 0; root < subs[i].table.index(); ++root)
                CHECK(!(standardize_at(subs[i].table, root) == subs[j].table));
        }
}

TEST_CASE("abelianization of free products of cyclic groups") {
    auto a = abelianization_subgroup({5, 5}, 0);
    CHECK(a.commutator_index_finite);
    CHECK(a.commutator_index == 25);
    CHECK(a.invariant_factors == std::vector<Int>{Int(5), Int(5)});

    auto b = abelianization_subgroup({2, 2, 2, 2, 2}, 0);
    CHECK(b.commutator_index == 32);
    CHECK(b.invariant_factors.size() == 5);

    auto c = abelianization_subgroup({2, 5}, 0);
    CHECK(c.commutator_index == 10);
    CHECK(c.invariant_factors == std::vector<Int>{Int(10)}); // Z_2 x Z_5 = Z_10

    auto d = abelianization_subgroup({3, 6, 4}, 1);
    CHECK(!d.commutator_index_finite);
    CHECK(d.free_rank == 1);
    // p-parts: 2 -> {2, 1}, 3 -> {1, 1}; factors 12 and 6
    CHECK(d.invariant_factors == std::vector<Int>{Int(6), Int(12)});
}
