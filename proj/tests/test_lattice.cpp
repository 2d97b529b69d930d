#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "momc/lattice.hpp"
#include "oracles.hpp"

using namespace momc;

namespace {

Character chr(std::initializer_list<long long> xs) {
    VecI v;
    for (long long x : xs) v.push_back(Int(x));
    return Character(v);
}

Cocharacter cochr(std::initializer_list<long long> xs) {
    VecI v;
    for (long long x : xs) v.push_back(Int(x));
    return Cocharacter(v);
}

std::vector<VecI> random_matrix(std::mt19937_64& rng, int rows, int cols, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<VecI> m(rows, VecI(cols));
    for (auto& r : m)
        for (auto& x : r) x = d(rng);
    return m;
}

} // namespace

TEST_CASE("pairing") {
    CHECK(pair(chr({1, 0}), cochr({0, 1})) == 0);
    CHECK(pair(chr({1, 0}), cochr({1, 0})) == 1);
    CHECK(pair(chr({2, 3}), cochr({1, -1})) == -1);
    CHECK_THROWS_AS(pair(chr({1, 0}), cochr({1})), InputError);
}

TEST_CASE("smith normal form examples") {
    {
        SmithResult s = smith_normal_form(IntegerMatrix({{Int(1), Int(0)}, {Int(0), Int(1)}}));
        CHECK(s.diag == std::vector<Int>{1, 1});
        CHECK(s.rank == 2);
    }
    {
        SmithResult s = smith_normal_form(IntegerMatrix({{Int(2)}}));
        CHECK(s.diag == std::vector<Int>{2});
        CHECK(s.rank == 1);
    }
    {
        // columns (1,1), (1,-1)
        SmithResult s = smith_normal_form(IntegerMatrix({{Int(1), Int(1)}, {Int(1), Int(-1)}}));
        CHECK(s.diag == std::vector<Int>{1, 2});
        CHECK(s.rank == 2);
    }
}

TEST_CASE("torsion order examples") {
    CHECK(torsion_order({chr({1, 0}), chr({0, 1})}) == 1);
    CHECK(torsion_order({chr({2})}) == 2);
    CHECK(torsion_order({chr({1, 1}), chr({1, -1})}) == 2);
    CHECK_THROWS_AS(torsion_order({}), InputError);
}

TEST_CASE("span rank examples") {
    CHECK(span_rank({}) == 0);
    CHECK(span_rank({chr({1, 0}), chr({2, 0})}) == 1);
    CHECK(span_rank({chr({1, 0}), chr({0, 1}), chr({1, 1})}) == 2);
}

TEST_CASE("torsion order equals |det| on square systems") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int r = 1 + static_cast<int>(rng() % 3);
        auto m = random_matrix(rng, r, r, -5, 5);
        Int d = oracle::laplace_det(m);
        if (d == 0) continue;
        std::vector<Character> cols;
        for (int j = 0; j < r; ++j) {
            VecI c(r);
            for (int i = 0; i < r; ++i) c[i] = m[i][j];
            cols.push_back(Character(c));
        }
        CHECK(torsion_order(cols) == boost::multiprecision::abs(d));
    }
}

TEST_CASE("smith normal form matches the minors oracle") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 250; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4);
        int cols = 1 + static_cast<int>(rng() % 4);
        auto m = random_matrix(rng, rows, cols, -6, 6);
        SmithResult s = smith_normal_form(IntegerMatrix(m));
        auto [diag, rank] = oracle::minors_snf(m);
        CHECK(s.diag == diag);
        CHECK(s.rank == rank);
        for (size_t i = 0; i + 1 < s.diag.size(); ++i) CHECK(s.diag[i + 1] % s.diag[i] == 0);
    }
}

TEST_CASE("torsion order is invariant under permutation and unimodular base change") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        int n = 1 + static_cast<int>(rng() % 4);
        std::vector<Character> w;
        for (int i = 0; i < n; ++i) {
            VecI v(r);
            for (auto& x : v) x = static_cast<int>(rng() % 9) - 4;
            w.push_back(Character(v));
        }
        Int t = torsion_order(w);
        std::vector<Character> shuffled = w;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(torsion_order(shuffled) == t);
        // random unimodular map: a few elementary row additions on the identity
        std::vector<VecI> u(r, VecI(r, Int(0)));
        for (int i = 0; i < r; ++i) u[i][i] = 1;
        for (int step = 0; step < 4; ++step) {
            int a = static_cast<int>(rng() % r), b = static_cast<int>(rng() % r);
            if (a == b) continue;
            Int q = static_cast<int>(rng() % 5) - 2;
            for (int j = 0; j < r; ++j) u[a][j] += q * u[b][j];
        }
        std::vector<Character> mapped;
        for (const Character& x : w) {
            VecI v(r, Int(0));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) v[i] += u[i][j] * x.coords[j];
            mapped.push_back(Character(v));
        }
        CHECK(torsion_order(mapped) == t);
    }
}

TEST_CASE("saturated basis spans the saturation") {
    {
        auto b = saturated_basis({{Int(2)}}, 1);
        REQUIRE(b.size() == 1);
        CHECK(boost::multiprecision::abs(b[0][0]) == 1);
    }
    {
        // span of (1,1),(1,-1) is the whole plane; the saturation is Z^2
        auto b = saturated_basis({{Int(1), Int(1)}, {Int(1), Int(-1)}}, 2);
        REQUIRE(b.size() == 2);
        std::vector<VecI> m = {b[0], b[1]};
        CHECK(boost::multiprecision::abs(oracle::laplace_det(m)) == 1);
    }
    {
        // rank-1 sublattice of Z^2 generated by (2,4): saturated by +-(1,2)
        auto b = saturated_basis({{Int(2), Int(4)}}, 2);
        REQUIRE(b.size() == 1);
        CHECK(vec_gcd(b[0]) == 1);
        CHECK(b[0][1] == 2 * b[0][0]);
    }
}

TEST_CASE("arbitrary precision survives large entries") {
    Int big("1000000000000000000000000000000");
    Character w1{VecI{big, Int(0)}}, w2{VecI{Int(0), big}};
    CHECK(torsion_order({w1, w2}) == big * big);
    SmithResult s = smith_normal_form(IntegerMatrix({{big, big}, {big, -big}}));
    CHECK(s.diag == std::vector<Int>{big, 2 * big});
}
