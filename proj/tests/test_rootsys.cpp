#include "littelpath/rootsys.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace littelpath;

namespace {

Vec rv(std::initializer_list<long> coords) {
    Vec v;
    for (long c : coords) v.push_back(Rat(c));
    return v;
}

Vec random_rational_vec(std::mt19937_64& rng, int dim) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 6);
    Vec v(dim);
    for (auto& c : v) c = Rat(num(rng), den(rng));
    return v;
}

}  // namespace

TEST_CASE("C2 realization matches the sp4 standard coordinates") {
    RootSystem rs = build_root_system(Family::C, 2);
    CHECK(rs.ambient_dim == 2);
    CHECK(rs.fundamental(1) == rv({1, 0}));
    CHECK(rs.fundamental(2) == rv({1, 1}));
    CHECK(rs.root(1) == rv({1, -1}));
    CHECK(rs.root(2) == rv({0, 2}));
    CHECK(rs.coroot(1) == rv({1, -1}));
    CHECK(rs.coroot(2) == rv({0, 1}));

    std::set<Vec> pos(rs.positive_roots.begin(), rs.positive_roots.end());
    std::set<Vec> expected{rv({1, -1}), rv({0, 2}), rv({1, 1}), rv({2, 0})};
    CHECK(pos == expected);

    CHECK(rs.w0_word.size() == 4);
    CHECK(rs.w0_word == std::vector<int>{1, 2, 1, 2});
    CHECK(weyl_order(rs) == 8);

    // w0 = -id on C2
    Vec x = rv({3, 1});
    CHECK(w0_action(rs, x) == -x);
    CHECK(rs.star == std::vector<int>{1, 2});
}

TEST_CASE("rank-1 and A2 degenerate data") {
    RootSystem a1 = build_root_system(Family::A, 1);
    CHECK(a1.simple_roots.size() == 1);
    CHECK(a1.w0_word == std::vector<int>{1});
    CHECK(a1.star == std::vector<int>{1});

    RootSystem a2 = build_root_system(Family::A, 2);
    CHECK(a2.w0_word.size() == 3);
    CHECK(a2.star == std::vector<int>{2, 1});  // diagram flip
    CHECK(weyl_order(a2) == 6);
}

TEST_CASE("reflections act as stated on C2") {
    RootSystem rs = build_root_system(Family::C, 2);
    Vec b = rv({5, 7});
    CHECK(reflect(rs, 1, b) == rv({7, 5}));   // s1 swaps coordinates
    CHECK(reflect(rs, 2, b) == rv({5, -7}));  // s2 flips the second sign
    CHECK(reflect(rs, 1, zero_vec(2)) == zero_vec(2));
    CHECK_THROWS_AS(reflect(rs, 3, b), std::out_of_range);
}

TEST_CASE("reflection involution and W-invariant inner product on random vectors") {
    std::mt19937_64 rng(20240811);
    for (auto name : {"A2", "B2", "C2", "A3", "D4", "G2"}) {
        RootSystem rs = parse_root_system(name);
        for (int trial = 0; trial < 25; ++trial) {
            Vec x = random_rational_vec(rng, rs.ambient_dim);
            Vec y = random_rational_vec(rng, rs.ambient_dim);
            for (int i = 1; i <= rs.rank; ++i) {
                CHECK(reflect(rs, i, reflect(rs, i, x)) == x);
                CHECK(dot(reflect(rs, i, x), reflect(rs, i, y)) == dot(x, y));
            }
        }
    }
}

TEST_CASE("longest word is reduced and regenerates the positive roots") {
    for (auto name : {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5",
                      "C2", "C3", "C4", "C5", "D4", "D5", "G2"}) {
        RootSystem rs = parse_root_system(name);
        INFO(name);
        CHECK(rs.w0_word.size() == rs.positive_roots.size());
        auto regen = positive_roots_from_word(rs, rs.w0_word);
        std::set<Vec> a(regen.begin(), regen.end());
        std::set<Vec> b(rs.positive_roots.begin(), rs.positive_roots.end());
        CHECK(a == b);

        // acting on a strictly dominant vector lands strictly anti-dominant
        Vec rho = zero_vec(rs.ambient_dim);
        for (int i = 1; i <= rs.rank; ++i) rho += rs.fundamental(i);
        Vec img = w0_action(rs, rho);
        CHECK(in_chamber(rs, -img, true));
    }
}

TEST_CASE("alternative reduced words for C2 and A2") {
    RootSystem c2 = build_root_system(Family::C, 2);
    auto roots = positive_roots_from_word(c2, {2, 1, 2, 1});
    std::set<Vec> a(roots.begin(), roots.end());
    std::set<Vec> b(c2.positive_roots.begin(), c2.positive_roots.end());
    CHECK(a == b);

    RootSystem a2 = build_root_system(Family::A, 2);
    auto r121 = positive_roots_from_word(a2, {1, 2, 1});
    auto r212 = positive_roots_from_word(a2, {2, 1, 2});
    CHECK(std::set<Vec>(r121.begin(), r121.end()) == std::set<Vec>(r212.begin(), r212.end()));
}

TEST_CASE("non-reduced words are rejected") {
    RootSystem rs = build_root_system(Family::C, 2);
    CHECK_THROWS_AS(positive_roots_from_word(rs, {1, 1, 2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(positive_roots_from_word(rs, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(positive_roots_from_word(rs, {1, 2, 1, 1}), std::invalid_argument);
}

TEST_CASE("chamber membership") {
    RootSystem rs = build_root_system(Family::C, 2);
    CHECK(in_chamber(rs, rv({2, 1}), true));
    CHECK_FALSE(in_chamber(rs, rv({1, 1}), true));
    CHECK(in_chamber(rs, rv({1, 1}), false));
    CHECK_FALSE(in_chamber(rs, rv({0, -1}), false));
}

TEST_CASE("weyl group orders match the classical values") {
    CHECK(weyl_order(build_root_system(Family::A, 2)) == 6);
    CHECK(weyl_order(build_root_system(Family::B, 2)) == 8);
    CHECK(weyl_order(build_root_system(Family::C, 3)) == 48);
    CHECK(weyl_order(build_root_system(Family::D, 4)) == 192);
    CHECK(weyl_order(build_root_system(Family::G2, 2)) == 12);
}

TEST_CASE("invalid family/rank pairs raise construction errors") {
    CHECK_THROWS_AS(build_root_system(Family::A, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_root_system(Family::B, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_root_system(Family::C, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_root_system(Family::D, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_root_system(Family::G2, 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_root_system("E6"), std::invalid_argument);
    CHECK_THROWS_AS(parse_root_system("Cx"), std::invalid_argument);
}

TEST_CASE("coordinate systems are mutually consistent") {
    for (auto name : {"A2", "B2", "C2", "G2", "D4"}) {
        RootSystem rs = parse_root_system(name);
        INFO(name);
        // fundamental weights: delta pairings and exact root-coordinate roundtrip
        // (in the type-A gl realization the omega_i lie outside the root span)
        for (int i = 1; i <= rs.rank; ++i) {
            auto f = fundamental_coords(rs, rs.fundamental(i));
            for (int j = 1; j <= rs.rank; ++j) CHECK(f[j - 1] == Rat(i == j ? 1 : 0));
            auto beta = root_coords(rs, rs.fundamental(i));
            CHECK(beta.has_value() == (rs.family != Family::A));
            if (beta) {
                Vec back = zero_vec(rs.ambient_dim);
                for (int j = 1; j <= rs.rank; ++j) back += (*beta)[j - 1] * rs.root(j);
                CHECK(back == rs.fundamental(i));
            }
        }
        // roots always have (integer) root coordinates
        for (const auto& r : rs.positive_roots) {
            auto beta = root_coords(rs, r);
            REQUIRE(beta.has_value());
            for (const auto& c : *beta) CHECK((is_integer(c) && c >= 0));
        }
        // Cartan matrix relates the two bases: coords_fund(alpha_j) = column j
        for (int j = 1; j <= rs.rank; ++j) {
            auto f = fundamental_coords(rs, rs.root(j));
            for (int i = 1; i <= rs.rank; ++i) CHECK(f[i - 1] == Rat(rs.cartan[i - 1][j - 1]));
        }
    }
}

TEST_CASE("weight lattice membership per family") {
    RootSystem c2 = build_root_system(Family::C, 2);
    CHECK(in_weight_lattice(c2, rv({3, -2})));
    CHECK_FALSE(in_weight_lattice(c2, Vec{Rat(1, 2), Rat(1, 2)}));

    RootSystem b2 = build_root_system(Family::B, 2);
    CHECK(in_weight_lattice(b2, Vec{Rat(1, 2), Rat(1, 2)}));  // spin weight
    CHECK_FALSE(in_weight_lattice(b2, Vec{Rat(1, 2), Rat(1)}));

    RootSystem g2 = build_root_system(Family::G2, 2);
    CHECK(in_weight_lattice(g2, g2.fundamental(1)));
    CHECK_FALSE(in_weight_lattice(g2, rv({1, 0, 0})));  // nonzero trace
}
