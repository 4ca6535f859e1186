#include <gtest/gtest.h>

#include <cmath>

#include "fock/errors.hpp"
#include "fock/explorer.hpp"
#include "fock/ratio.hpp"

namespace fock {
namespace {

SearchConfig small(double p, int degree, int restarts = 2) {
  SearchConfig c;
  c.p = p;
  c.degree = degree;
  c.restarts = restarts;
  c.budget = 4000;
  return c;
}

TEST(SearchConfig, Validation) {
  SearchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.tol = -1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SearchConfig{};
  c.restarts = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SearchConfig{};
  c.degree = -1;
  EXPECT_THROW(c.validate(), DomainError);
  c = SearchConfig{};
  c.p = 1.0;
  EXPECT_THROW(maximize_ratio_free(c), DomainError);
}

TEST(BasisNorm, MatchesPolyNorm) {
  const BasisNorm b(3, 3.0, 1.0, PolarGrid());
  const std::vector<cplx> c{1.0, cplx(0.2, 0.3), -0.5, 0.1};
  HoloPoly f;
  for (int k = 0; k < 4; ++k) f = f + HoloPoly::monomial(MultiIndex::scalar(k), c[k] / std::exp(b.log_monomial_norm(k)));
  EXPECT_NEAR(b.norm(c) / poly_norm(f, 3.0, FockWeight(), PolarGrid()), 1.0, 1e-6);
}

TEST(MaximizeFree, ConstantsOnly) {
  const SearchReport r = maximize_ratio_free(small(3.0, 0));
  EXPECT_NEAR(r.best_ratio, 1.0, 1e-12);
}

TEST(MaximizeFree, SelfDualIsOne) {
  const SearchReport r = maximize_ratio_free(small(2.0, 3));
  EXPECT_NEAR(r.best_ratio, 1.0, 1e-10);
}

TEST(MaximizeFree, DeterministicAndBounded) {
  const SearchReport a = maximize_ratio_free(small(3.0, 2));
  const SearchReport b = maximize_ratio_free(small(3.0, 2));
  EXPECT_EQ(a.best_ratio, b.best_ratio);
  EXPECT_EQ(a.best_f, b.best_f);
  EXPECT_EQ(a.best_h, b.best_h);
  EXPECT_EQ(a.evaluations, b.evaluations);
  EXPECT_LE(a.best_ratio, c_p(3.0) * (1 + 1e-9));
  EXPECT_GE(a.best_ratio, ratio_monomial(2, ExponentPair(3.0)) - 1e-9);
  EXPECT_EQ(a.history.size(), 2u);
  EXPECT_NEAR(a.gap_to_sqrt_cp, std::sqrt(c_p(3.0)) - a.best_ratio, 1e-15);
  // gauge: unit norms, first coefficient real non-negative
  EXPECT_NEAR(poly_norm(a.best_f, 3.0, FockWeight(), PolarGrid()), 1.0, 1e-9);
  EXPECT_NEAR(a.best_f.terms().begin()->second.imag(), 0.0, 1e-15);
  EXPECT_GE(a.best_f.terms().begin()->second.real(), 0.0);
}

TEST(MaximizeFree, SeedChangesRun) {
  SearchConfig c = small(3.0, 2);
  const SearchReport a = maximize_ratio_free(c);
  c.seed = 99;
  const SearchReport b = maximize_ratio_free(c);
  EXPECT_NE(a.evaluations, b.evaluations);
}

TEST(MaximizeFree, TinyBudgetReportsNotConverged) {
  SearchConfig c = small(3.0, 3, 1);
  c.budget = 20;
  const SearchReport r = maximize_ratio_free(c);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.best_ratio, 0.0);
}

TEST(MaximizeMonomialFixed, Examples) {
  const SearchReport r0 = maximize_ratio_monomial_fixed(0, small(3.0, 2));
  EXPECT_NEAR(r0.best_ratio, 1.0, 1e-9);
  EXPECT_GE(psi_mass_fraction(r0.best_f, MultiIndex::scalar(0), FockWeight()), 1 - 1e-4);

  const SearchReport r2 = maximize_ratio_monomial_fixed(2, small(4.0, 3));
  EXPECT_NEAR(r2.best_ratio, ratio_monomial(2, ExponentPair(4.0)), 1e-6);

  const SearchReport r1 = maximize_ratio_monomial_fixed(1, small(1.5, 2));
  EXPECT_NEAR(r1.best_ratio, ratio_monomial(1, ExponentPair(1.5)), 1e-6);
  EXPECT_GE(psi_mass_fraction(r1.best_f, MultiIndex::scalar(1), FockWeight()), 1 - 1e-4);
}

TEST(PsiMassFraction, Values) {
  const HoloPoly f = HoloPoly::from_coefficients(std::vector<cplx>{1.0, 1.0});
  EXPECT_NEAR(psi_mass_fraction(f, MultiIndex::scalar(1), FockWeight(2.0)), (0.5) / (1.5), 1e-15);
}

TEST(MonomialSweep, Tables) {
  const auto two = monomial_sweep(ExponentPair(2.0), 20);
  ASSERT_EQ(two.size(), 21u);
  for (const SweepRow& r : two) EXPECT_NEAR(r.ratio, 1.0, 1e-14);

  const auto four = monomial_sweep(ExponentPair(4.0), 500);
  ASSERT_EQ(four.size(), 501u);
  EXPECT_EQ(four.front().ratio, 1.0);
  for (const SweepRow& r : four) EXPECT_GT(r.gap, 0.0);
  EXPECT_LT(four.back().gap, 1e-3);
}

TEST(DualNormEstimate, WithinSandwich) {
  const HoloPoly h = HoloPoly::from_coefficients(std::vector<cplx>{1.0, 0.5});
  SearchConfig c;
  c.restarts = 2;
  const DualEstimate e = dual_norm_lower_estimate(h, 3.0, FockWeight(), 3, c);
  EXPECT_GE(e.lower(), 1.0 - 1e-6);
  EXPECT_LE(e.lower(), c_p(3.0) * (1 + 1e-6));
}

TEST(InvariantSuite, SmallCountsPassAndAreDeterministic) {
  const InvariantCounts counts{50, 20, 50, 1};
  const InvariantReport a = run_invariant_suite(42, counts);
  for (const InvariantEntry& e : a.entries) EXPECT_TRUE(e.passed) << e.name << " margin " << e.worst_margin;
  EXPECT_TRUE(a.all_passed());
  const InvariantReport b = run_invariant_suite(42, counts);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) EXPECT_EQ(a.entries[i].worst_margin, b.entries[i].worst_margin);
}

}  // namespace
}  // namespace fock
