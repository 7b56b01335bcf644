#include <random>

#include <gtest/gtest.h>

#include "epcurves/lattice.hpp"
#include "test_support.hpp"

namespace {

using namespace epc;

IntVector iv(std::initializer_list<long> v) { return IntVector(v.begin(), v.end()); }

TEST(Lll, AlreadyReduced) {
    LatticeBasis b{{iv({1, 0}), iv({0, 1})}, Rational(3, 4)};
    const auto r = lll_reduce(b);
    EXPECT_EQ(r.basis.vectors, b.vectors);
    EXPECT_EQ(r.transform, IntMatrix::identity(2));
}

TEST(Lll, UnitLatticeFromShear) {
    const auto r = lll_reduce({{iv({1, 0}), iv({4, 1})}});
    for (const auto& v : r.basis.vectors) EXPECT_EQ(dot(v, v), Integer(1));
    // brute force: no nonzero lattice vector shorter than 1 (lattice is Z^2)
    EXPECT_EQ(test::shortest_norm2_2d({{1, 0}, {4, 1}}), 1);
}

TEST(Lll, TwoDimensionalShortestVector) {
    const auto r = lll_reduce({{iv({12, 2}), iv({13, 4})}});
    const long shortest = test::shortest_norm2_2d({{12, 2}, {13, 4}});
    EXPECT_EQ(dot(r.basis.vectors[0], r.basis.vectors[0]), Integer(shortest));
}

TEST(Lll, DependentInputRejected) {
    EXPECT_THROW(lll_reduce({{iv({1, 2}), iv({2, 4})}}), DependentBasisError);
    EXPECT_THROW(lll_reduce({{iv({0, 0}), iv({2, 4})}}), DependentBasisError);
    EXPECT_THROW(lll_reduce({{iv({1, 0})}, Rational(1, 4)}), std::invalid_argument);
}

TEST(Lll, RandomBasesReducedAndUnimodular) {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> entry(-1000, 1000), dim(2, 6);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = dim(rng);
        LatticeBasis b;
        for (int i = 0; i < n; ++i) {
            IntVector v(n);
            for (auto& x : v) x = entry(rng);
            b.vectors.push_back(v);
        }
        LllResult r;
        try {
            r = lll_reduce(b);
        } catch (const DependentBasisError&) {
            continue;
        }
        EXPECT_TRUE(is_lll_reduced(r.basis.vectors, b.delta));
        EXPECT_EQ(abs(determinant(r.transform)), Integer(1));
        EXPECT_EQ(test::rows_times(r.transform, b.vectors), r.basis.vectors);
    }
}

TEST(Lll, IntegerKernel) {
    // x + 2y + 3z = 0
    const auto k = integer_kernel(int_matrix({{1, 2, 3}}));
    ASSERT_EQ(k.size(), 2u);
    for (const auto& v : k) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], Integer(0));
    // the two vectors generate the full kernel lattice: their 2x2 minors have gcd 1
    Integer g = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) g = boost::multiprecision::gcd(g, Integer(k[0][a] * k[1][b] - k[0][b] * k[1][a]));
    EXPECT_EQ(g, Integer(1));
    EXPECT_TRUE(integer_kernel(int_matrix({{1, 0}, {0, 1}})).empty());
}

TEST(ShortenWitness, Examples) {
    EXPECT_EQ(shorten_witness({{0, 0, 0, 1, 0}}), iv({0, 0, 0, 1, 0}));
    EXPECT_EQ(shorten_witness({{Rational(1, 2), Rational(-1, 2)}}), iv({1, -1}));
    const IntVector w = shorten_witness({{1, 0, 7}, {0, 1, -5}});
    Integer maxnorm = 0;
    for (const auto& x : w) maxnorm = std::max(maxnorm, Integer(abs(x)));
    EXPECT_LE(maxnorm, Integer(5));
    EXPECT_EQ(7 * w[0] - 5 * w[1], w[2]);
    // brute force over small combinations: nothing with smaller max-norm than 2 exists
    long best = 1000;
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b) {
            if (a == 0 && b == 0) continue;
            best = std::min(best, std::max({std::abs(a), std::abs(b), std::abs(7 * a - 5 * b)}));
        }
    EXPECT_EQ(maxnorm, Integer(best));
    EXPECT_THROW(shorten_witness({}), std::invalid_argument);
}

RealAlgebraic root_of(const IntPoly& p, const Rational& lo, const Rational& hi) {
    RealAlgebraic a{p, {lo, hi}, std::nullopt};
    EXPECT_TRUE(a.valid());
    return a;
}

TEST(Minpoly, Examples) {
    auto sqrt2 = root_of(parse_poly("x^2 - 2"), 1, 2);
    EXPECT_EQ(minpoly_of_root(sqrt2), parse_poly("x^2 - 2"));
    ASSERT_TRUE(sqrt2.minpoly.has_value());

    auto prod = root_of(parse_poly("x^2 - 2") * parse_poly("x^2 - 3"), Rational(14, 10), Rational(15, 10));
    EXPECT_EQ(minpoly_of_root(prod), parse_poly("x^2 - 2"));
    EXPECT_TRUE(prod.valid());

    auto cubic = root_of(parse_poly("x^3 + 3x - 1"), 0, 1);
    EXPECT_EQ(minpoly_of_root(cubic), parse_poly("x^3 + 3x - 1"));
}

TEST(Minpoly, LowStartPrecisionDoubles) {
    // large coefficients: an 8-bit approximation cannot pin the relation down
    const IntPoly p = parse_poly("x^3 - 1000x^2 + 7x - 1");
    auto a = root_of(p * parse_poly("x^2 - 5"), 999, 1000);
    MinpolySearchOptions opt;
    opt.start_bits = 8;
    const auto res = minpoly_search(a, opt);
    EXPECT_EQ(res.minpoly, p);
    EXPECT_GT(res.precision_rounds, 1);
    EXPECT_GT(res.bits_used, 8u);
}

TEST(Minpoly, RandomProducts) {
    std::mt19937_64 rng(4242);
    int done = 0;
    while (done < 10) {
        const IntPoly p = test::random_irreducible_with_real_root(rng);
        const IntPoly q = test::random_irreducible_with_real_root(rng);
        if (p == q) continue;
        const IntPoly pq = p * q;
        if (!is_squarefree(pq)) continue;
        const auto roots = isolate_real_roots(pq);
        bool found = false;
        for (const auto& r : roots) {
            if (sturm_count(p, r) != 1) continue;
            RealAlgebraic a{pq, r, std::nullopt};
            EXPECT_EQ(minpoly_of_root(a), p) << pq.to_string();
            found = true;
            break;
        }
        ASSERT_TRUE(found);
        ++done;
    }
}

}  // namespace
