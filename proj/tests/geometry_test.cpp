#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "epcurves/geometry.hpp"

namespace {

using namespace epc;
using R = Real128;
using C = Complex<R>;

EPData<R> data_for(const IntMatrix& m) {
    AdmissibilityReport r = verify_admissible(m);
    return build_ep_data<R>(m, r);
}

double d(const R& x) { return static_cast<double>(x); }

TEST(Omega, Substitutions) {
    TangentVector<R> v{C(R(1)), {C(R(5), R(-2))}};
    EXPECT_EQ(omega_tilde(C(R(0), R(1)), v), R(1) / 2);
    v.Z = C(R(0));
    EXPECT_EQ(omega_tilde(C(R(3), R(1)), v), R(0));
    v.Z = C(R(0), R(1));
    EXPECT_EQ(omega_tilde(C(R(0), R(2)), v), R(1) / 8);
    EXPECT_THROW(omega_tilde(C(R(0), R(0)), v), InputError);
}

TEST(Omega, G0ScalingCancels) {
    const EPData<R> e = data_for(test::example_m());
    const Point<R> p{C(R(1), R(2)), CVector<R>(2)};
    const TangentVector<R> v{C(R(3), R(-1)), CVector<R>(2)};
    const AffineAut<R> g0 = generator(e, 0);
    EXPECT_LT(d(abs(omega_tilde(apply(e, g0, p).w, push_forward(e, g0, v)) - omega_tilde(p.w, v))), 1e-35);
}

TEST(Data, ExampleR) {
    const EPData<R> e = data_for(test::example_m());
    ASSERT_EQ(e.n, 2u);
    EXPECT_LT(d(abs(e.R(0, 1))), 1e-30);
    EXPECT_LT(d(abs(e.R(1, 0))), 1e-30);
    // diag(beta, i) in some order
    const C i(R(0), R(1));
    const C r0 = e.R(0, 0), r1 = e.R(1, 1);
    const C beta = abs(r0 - i) < abs(r1 - i) ? r1 : r0;
    const C rot = abs(r0 - i) < abs(r1 - i) ? r0 : r1;
    EXPECT_LT(d(abs(rot - i)), 1e-30);
    EXPECT_NEAR(d(beta.re), -0.1610926773130428, 1e-15);
    EXPECT_NEAR(d(beta.im), 1.7543809597837217, 1e-15);
    // a has zero P-components
    EXPECT_EQ(e.a[3], 0);
    EXPECT_EQ(e.a[4], 0);
    EXPECT_GT(e.a[0], 0);
    EXPECT_NEAR(d(e.alpha), 0.3221853546260856, 1e-15);
}

TEST(Data, CompanionRIsDiagonal) {
    const EPData<R> e = data_for(cli::companion(parse_poly("x^5 - x - 1")));
    ASSERT_EQ(e.n, 2u);
    EXPECT_LT(d(abs(e.R(0, 1))), 1e-30);
    EXPECT_LT(d(abs(e.R(1, 0))), 1e-30);
    EXPECT_GT(e.R(0, 0).im, 0);
    EXPECT_GT(e.R(1, 1).im, 0);
    // diagonal entries are roots of x^5 - x - 1
    for (std::size_t k = 0; k < 2; ++k) {
        C z = e.R(k, k), acc = pow(z, 5) - z - C(R(1));
        EXPECT_LT(d(abs(acc)), 1e-30);
    }
}

TEST(Data, JordanBlockGivesTriangularR) {
    // the companion of (x^2 + 1)^2 is a single Jordan block for i, so R is
    // upper triangular with exactly one nonzero off-diagonal entry
    const IntMatrix p = cli::companion(parse_poly("x^4 + 2x^2 + 1"));
    const IntMatrix m = cli::block_diagonal(test::example_n(), p);
    const EPData<R> e = data_for(m);
    ASSERT_EQ(e.n, 3u);
    const auto checks = run_geometry_checks(e);
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << " " << c.deviation;
    std::size_t nonzero_off = 0;
    for (std::size_t l = 0; l < 3; ++l)
        for (std::size_t j = 0; j < 3; ++j)
            if (l != j && abs(e.R(l, j)) > 1e-20) {
                ++nonzero_off;
                EXPECT_LT(l, j) << "entry below the diagonal";
            }
    EXPECT_EQ(nonzero_off, 1u);
}

TEST(Words, IdentityTranslationAndInverse) {
    const EPData<R> e = data_for(test::example_m());
    const AffineAut<R> id = word_to_affine(e, std::vector<long>{0, 0, 0, 0, 0, 0});
    EXPECT_EQ(id.m, 0);
    EXPECT_EQ(id.t_w, 0);
    for (const auto& z : id.t_z) EXPECT_EQ(z, C(R(0)));

    const AffineAut<R> g1 = word_to_affine(e, std::vector<long>{0, 1, 0, 0, 0, 0});
    EXPECT_EQ(g1.m, 0);
    EXPECT_EQ(g1.t_w, e.u[0].w);
    for (std::size_t i = 0; i < e.n; ++i) EXPECT_EQ(g1.t_z[i], e.u[0].z[i]);

    DeckWord w = DeckWord::from_exponents({1, 2, -1, 0, 3, 1});
    DeckWord inv;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) inv.factors.emplace_back(it->first, -it->second);
    DeckWord both = w;
    both.factors.insert(both.factors.end(), inv.factors.begin(), inv.factors.end());
    for (auto order : {WordOrder::LeftToRightApplication, WordOrder::Composition}) {
        const AffineAut<R> f = word_to_affine(e, both, order);
        EXPECT_EQ(f.m, 0);
        EXPECT_LT(d(abs(f.t_w)), 1e-12);
        for (const auto& z : f.t_z) EXPECT_LT(d(abs(z)), 1e-12);
    }
}

TEST(Words, LeftToRightMatchesClosedForm) {
    // g0^s0 applied first: w -> alpha^s0 w + sum s_i a^i
    const EPData<R> e = data_for(test::example_m());
    const std::vector<long> s{2, 1, -1, 3, 0, 2};
    const AffineAut<R> f = word_to_affine(e, s);
    R expect = 0;
    for (std::size_t i = 1; i < s.size(); ++i) expect += R(s[i]) * e.a[i - 1];
    EXPECT_EQ(f.m, 2);
    EXPECT_LT(d(abs(f.t_w - expect)), 1e-30);
}

TEST(Checks, ExampleAndCompanionPass) {
    for (const IntMatrix& m : {test::example_m(), cli::companion(parse_poly("x^5 - x - 1"))}) {
        const auto checks = run_geometry_checks(data_for(m));
        ASSERT_EQ(checks.size(), 8u);
        for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << " " << c.deviation;
    }
}

TEST(Checks, PerturbedRFailsConjugation) {
    EPData<R> e = data_for(test::example_m());
    EXPECT_TRUE(check_conjugation_relations(e, 1e-8).passed);
    CMatrix<R> r = e.R;
    r(0, 0) += C(R(1e-3));
    e.set_R(r);
    const GeometryCheck c = check_conjugation_relations(e, 1e-8);
    EXPECT_FALSE(c.passed);
    EXPECT_GT(c.deviation, 1e-5);
}

TEST(Checks, RandomCorpusPasses) {
    std::mt19937_64 rng(404);
    for (int t = 0; t < 20; ++t) {
        const IntMatrix m = test::random_admissible(rng, t);
        GeometryOptions o;
        o.samples = 30;
        for (const auto& c : run_geometry_checks(data_for(m), o)) EXPECT_TRUE(c.passed) << c.name << " " << c.deviation;
    }
}

TEST(Checks, HigherPrecisionShrinksResidual) {
    AdmissibilityReport r = verify_admissible(test::example_m());
    const auto lo = build_ep_data<Real128>(test::example_m(), r);
    const auto hi = build_ep_data<Real256>(test::example_m(), r);
    EXPECT_LT(static_cast<double>(hi.residual), 1e-60);
    EXPECT_LT(static_cast<double>(lo.residual), 1e-30);
}

}  // namespace
