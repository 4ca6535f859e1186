#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fock/errors.hpp"
#include "fock/explorer.hpp"
#include "fock/space.hpp"

namespace fock {
namespace {

// Frozen from tests/oracles/compute_oracles.py.
constexpr double kZ2NormP4 = 1.1066819197003216;  // ||z^2||_{4,1} by mpmath radial quadrature
constexpr double kOnePlusZNormP3 = 1.3811493142959848;
constexpr double kQuadExpA0C05 = 1.074569931823542;  // ||exp(z^2/4)||_{2,1} by scipy dblquad

HoloPoly z_pow(int j, cplx a = 1.0) { return HoloPoly::monomial(MultiIndex::scalar(j), a); }

TEST(MultiIndex, OrderAndFactorial) {
  const MultiIndex j{2, 3};
  EXPECT_EQ(j.order(), 5);
  EXPECT_NEAR(j.log_factorial(), std::log(12.0), 1e-14);
  EXPECT_THROW(MultiIndex({-1}), DomainError);
}

TEST(HoloPoly, ArithmeticAndEvaluation) {
  const HoloPoly f = HoloPoly::from_coefficients(std::vector<cplx>{1.0, 0.0, cplx(0, 2)});
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(f.terms().size(), 2u);
  const cplx z(0.3, -0.7);
  EXPECT_NEAR(std::abs(f(z) - (1.0 + cplx(0, 2) * z * z)), 0.0, 1e-15);
  EXPECT_TRUE((f + f * -1.0).is_zero());
  EXPECT_EQ(HoloPoly().degree(), -1);
}

TEST(FockWeight, Validation) {
  EXPECT_THROW(FockWeight(0.0), DomainError);
  EXPECT_THROW(FockWeight(1.0, 0), DomainError);
}

TEST(MonomialNorm, Examples) {
  EXPECT_DOUBLE_EQ(monomial_norm(MultiIndex::scalar(0), 3.3, FockWeight(0.2)), 1.0);
  EXPECT_NEAR(monomial_norm(MultiIndex::scalar(1), 2.0, FockWeight()), 1.0, 1e-15);
  EXPECT_NEAR(monomial_norm(MultiIndex::scalar(2), 4.0, FockWeight()), std::pow(1.5, 0.25), 1e-15);
  EXPECT_NEAR(monomial_norm(MultiIndex::scalar(2), 4.0, FockWeight()), kZ2NormP4, 1e-15);
}

TEST(MonomialNorm, AgreesWithQuadrature) {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (int k = 0; k <= 10; ++k) {
      const double q = poly_norm(z_pow(k), p, FockWeight(), PolarGrid());
      EXPECT_NEAR(q / monomial_norm(MultiIndex::scalar(k), p, FockWeight()), 1.0, 1e-12) << p << " " << k;
    }
  }
}

TEST(MonomialNorm, LargeIndexStaysFinite) {
  const double l = log_monomial_norm(MultiIndex{10000, 10000}, 3.0, FockWeight(0.5, 2));
  EXPECT_TRUE(std::isfinite(l));
  EXPECT_NEAR(l, 2.0 * log_monomial_norm(MultiIndex::scalar(10000), 3.0, FockWeight(0.5)), 1e-9);
}

TEST(PolyNorm, Examples) {
  EXPECT_NEAR(poly_norm(HoloPoly::constant(1, 5.0), 3.0, FockWeight(), PolarGrid()), 5.0, 1e-13);
  EXPECT_NEAR(poly_norm(z_pow(3), 2.0, FockWeight(2.0), PolarGrid()), std::sqrt(0.75), 1e-13);
  const HoloPoly f = HoloPoly::from_coefficients(std::vector<cplx>{1.0, 1.0});
  EXPECT_NEAR(poly_norm(f, 3.0, FockWeight(), PolarGrid()), kOnePlusZNormP3, 1e-12);
  EXPECT_NO_THROW(poly_norm(f, 3.0, FockWeight(), PolarGrid(), {1e-9}));
}

TEST(PolyNorm, Parseval) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const HoloPoly f = random_poly(rng, 8, 1.3);
    EXPECT_NEAR(poly_norm(f, 2.0, FockWeight(1.3), PolarGrid()) / poly_norm_l2(f, FockWeight(1.3)), 1.0, 1e-12);
    EXPECT_NEAR(poly_norm_l2(f, FockWeight(1.3)), std::sqrt(poly_pairing(f, f, FockWeight(1.3)).real()), 1e-12);
  }
}

TEST(PolyPairing, Examples) {
  EXPECT_EQ(poly_pairing(z_pow(1), z_pow(2), FockWeight()), cplx(0.0));
  EXPECT_NEAR(poly_pairing(z_pow(3), z_pow(3), FockWeight(2.0)).real(), 0.75, 1e-15);
  for (int j = 0; j < 6; ++j) {
    const HoloPoly psi = NormalizedMonomial{MultiIndex::scalar(j), 0.7}.to_poly();
    EXPECT_NEAR(poly_pairing(psi, psi, FockWeight(0.7)).real(), 1.0, 1e-14);
  }
  EXPECT_THROW(poly_pairing(z_pow(1), HoloPoly::monomial(MultiIndex{1, 0}), FockWeight()), DimensionMismatch);
}

TEST(PolyPairing, MatchesQuadrature) {
  std::mt19937_64 rng(5);
  const HoloPoly f = random_poly(rng, 6, 1.0);
  const HoloPoly g = random_poly(rng, 6, 1.0);
  const cplx exact = poly_pairing(f, g, FockWeight());
  const cplx q = weighted_pairing([&](cplx z) { return f(z); }, [&](cplx z) { return g(z); }, FockWeight(),
                                  PolarGrid(256, 256, 12.0));
  EXPECT_NEAR(std::abs(q - exact) / std::abs(exact), 0.0, 1e-10);
}

TEST(ReproducingKernel, Norms) {
  const ReproducingKernel k0 = kernel_eval({0.0}, FockWeight());
  EXPECT_DOUBLE_EQ(k0.norm(), 1.0);
  EXPECT_EQ(k0(cplx(3.0, 1.0)), cplx(1.0));
  EXPECT_NEAR(kernel_eval({1.0}, FockWeight()).norm(), std::exp(0.5), 1e-15);
  EXPECT_NEAR(kernel_eval({1.0, 1.0}, FockWeight(1.0, 2)).norm(), std::exp(1.0), 1e-15);
}

TEST(ReproducingKernel, ReproducesPolynomials) {
  std::mt19937_64 rng(3);
  const HoloPoly f = random_poly(rng, 5, 1.0);
  const cplx z(0.4, -0.2);
  const HoloPoly k = kernel_eval({z}, FockWeight()).taylor(40);
  EXPECT_NEAR(std::abs(poly_pairing(f, k, FockWeight()) - f(z)), 0.0, 1e-13);
}

TEST(ReproducingKernel, TruncatedNormMatches) {
  const ReproducingKernel k = kernel_eval({cplx(0.5)}, FockWeight());
  const int d = k.taylor_degree_for(1e-12, 3.0);
  EXPECT_LE(d, 40);
  EXPECT_NEAR(poly_norm(k.taylor(d), 3.0, FockWeight(), PolarGrid()), k.norm(), 1e-10);
}

TEST(PointwiseBound, Examples) {
  const PolarGrid g;
  const PointwiseBound b0 = pointwise_bound_check(HoloPoly::constant(1, 1.0), 0.0, 3.0, FockWeight(), g);
  EXPECT_NEAR(b0.lhs, 1.0, 1e-15);
  EXPECT_NEAR(b0.rhs, 1.0, 1e-13);
  const PointwiseBound b1 = pointwise_bound_check(z_pow(1), 2.0, 2.0, FockWeight(), g);
  EXPECT_NEAR(b1.lhs, 2.0, 1e-15);
  EXPECT_NEAR(b1.rhs, std::exp(2.0), 1e-12);
  const HoloPoly k = kernel_eval({cplx(0.5)}, FockWeight()).taylor(30);
  EXPECT_GE(pointwise_bound_check(k, 0.5, 3.0, FockWeight(), g).ratio(), 0.999);
}

TEST(GOperator, IdentityAtTwo) {
  const HoloPoly h = HoloPoly::from_coefficients(std::vector<cplx>{1.0, cplx(0.5, 1.0)});
  const GOperatorImage img = g_operator_eval(h, 2.0, FockWeight(), PolarGrid());
  for (cplx z : {cplx(0.3, 0.1), cplx(-2.0, 1.0)}) EXPECT_NEAR(std::abs(img.eval(z) - h(z)), 0.0, 1e-14);
  EXPECT_THROW(g_operator_eval(HoloPoly(), 3.0, FockWeight(), PolarGrid()), ZeroFunction);
}

TEST(GOperator, DualityPairing) {
  const double p = 3.0;
  const HoloPoly h = HoloPoly::from_coefficients(std::vector<cplx>{1.0, 1.0});
  const GOperatorImage img = g_operator_eval(h, p, FockWeight(), PolarGrid());
  const cplx pair = weighted_pairing([&](cplx z) { return h(z); }, img.eval, FockWeight(),
                                     grid_for_poly(PolarGrid(), h, p, 1.0));
  EXPECT_NEAR(pair.real() / (2.0 / p * std::pow(img.source_norm, p)), 1.0, 1e-10);
  EXPECT_NEAR(pair.imag(), 0.0, 1e-12);
  EXPECT_NEAR(img.norm, std::pow(0.5, 1.0 / 1.5) * std::pow(img.source_norm, 2.0), 1e-13);
}

TEST(GOperator, Involution) {
  const double p = 3.0;
  const ComplexFn h = [](cplx z) { return 1.0 + z - 0.5 * z * z; };
  const ComplexFn back = g_operator_apply(g_operator_apply(h, p, 1.0), 1.5, 1.0);
  for (cplx z : {cplx(0.1, 0.2), cplx(-1.0, 0.7), cplx(2.0, -1.5)}) {
    EXPECT_NEAR(std::abs(back(z) - h(z)) / std::abs(h(z)), 0.0, 1e-13);
  }
}

TEST(ProjectionEigenvalue, Examples) {
  EXPECT_NEAR(projection_eigenvalue(MultiIndex::scalar(0), 3.0, FockWeight()), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(projection_eigenvalue(MultiIndex::scalar(1), 4.0, FockWeight()), 0.25, 1e-15);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(projection_eigenvalue(MultiIndex::scalar(j), 2.0, FockWeight()), 1.0, 1e-14);
}

TEST(TaylorCoeffBound, Examples) {
  EXPECT_DOUBLE_EQ(taylor_coeff_bound(0, 3.0, FockWeight()), 1.0);
  EXPECT_NEAR(taylor_coeff_bound(2, 2.0, FockWeight()), 1.0 / std::sqrt(2.0), 1e-15);
  for (int j = 0; j < 6; ++j) {
    const double nf = poly_norm(z_pow(j), 3.0, FockWeight(), PolarGrid());
    EXPECT_NEAR(taylor_coeff_bound(j, 3.0, FockWeight()) * nf, 1.0, 1e-10);
  }
}

TEST(MonomialProjection, KeepsOneTerm) {
  const HoloPoly f = HoloPoly::from_coefficients(std::vector<cplx>{1.0, 2.0, 3.0});
  const HoloPoly p1 = monomial_projection(f, MultiIndex::scalar(1), FockWeight(2.0));
  EXPECT_EQ(p1.terms().size(), 1u);
  EXPECT_NEAR(std::abs(p1.coefficient(1) - 2.0), 0.0, 1e-14);
}

TEST(QuadExp, NormExamples) {
  EXPECT_NEAR(quadexp_norm(QuadExp(0.0, 0.0), 3.0, FockWeight()), 1.0, 1e-15);
  EXPECT_NEAR(quadexp_norm(QuadExp(1.0, 0.0), 2.0, FockWeight()), std::exp(0.5), 1e-15);
  EXPECT_NEAR(quadexp_norm(QuadExp(0.0, 0.5), 2.0, FockWeight()), std::pow(0.75, -0.25), 1e-15);
  EXPECT_NEAR(quadexp_norm(QuadExp(0.0, 0.5), 2.0, FockWeight()), kQuadExpA0C05, 1e-10);
  EXPECT_THROW(QuadExp(0.0, 1.0), NotIntegrable);
  EXPECT_THROW(QuadExp(0.0, cplx(0.8, 0.8)), NotIntegrable);
}

TEST(QuadExp, NormMatchesGaussianIntegralAndQuadrature) {
  for (double p : {1.5, 3.0}) {
    const QuadExp g(cplx(0.3, -0.4), cplx(0.2, 0.5));
    const double closed = quadexp_norm(g, p, FockWeight());
    const GaussianForm form = quadexp_norm_form(g.a(), g.c(), p, 1.0);
    const double via = std::abs(form.prefactor * gaussian_integral(form.matrix, form.vector));
    EXPECT_NEAR(std::pow(via, 1.0 / p) / closed, 1.0, 1e-12);
    const double q = std::pow(weighted_lp_integral(g, p, FockWeight(), PolarGrid(256, 256, 30.0)), 1.0 / p);
    EXPECT_NEAR(q / closed, 1.0, 1e-8);
  }
}

TEST(QuadExp, PairingFormMatchesQuadrature) {
  const QuadExp g(cplx(0.5, 0.1), cplx(0.3, 0.0)), h(cplx(-0.2, 0.4), cplx(0.0, -0.4));
  const cplx closed = quadexp_pairing(g, h);
  const cplx q = weighted_pairing(g, h, FockWeight(), PolarGrid(256, 256, 30.0));
  EXPECT_NEAR(std::abs(q - closed) / std::abs(closed), 0.0, 1e-9);
}

}  // namespace
}  // namespace fock
