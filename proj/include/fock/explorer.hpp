#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fock/constants.hpp"
#include "fock/poly.hpp"
#include "fock/quadrature.hpp"
#include "fock/weight.hpp"

// Numerical search for large values of R_{p,alpha} over polynomials of bounded
// degree (n = 1), and the randomized invariant harness.

namespace fock {

struct SearchConfig {
  double p = 4.0;
  double alpha = 1.0;
  int degree = 4;
  int restarts = 8;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  long budget = 10000;   ///< objective evaluations per restart
  int search_n_r = 48;   ///< grid used inside the optimizer
  int search_n_theta = 32;
  int final_n_r = 256;   ///< grid used for the reported ratio
  int final_n_theta = 256;

  /// Throws DomainError when a field violates its precondition.
  void validate() const;
};

struct HistoryEntry {
  int restart;
  double ratio;       ///< best ratio of this restart on the search grid
  double best_ratio;  ///< running best over restarts so far
  long evaluations;
  bool converged;
};

struct SearchReport {
  double p;
  double best_ratio;  ///< on the final grid
  HoloPoly best_f;    ///< gauge fixed: unit p-norm, first nonzero coefficient real positive
  HoloPoly best_h;    ///< same, in the p' norm
  double gap_to_sqrt_cp;
  double gap_to_cp;
  long evaluations;
  bool converged;  ///< every restart met tol within its budget
  int best_restart;
  std::vector<HistoryEntry> history;
};

/// ||sum_k c_k z^k / ||z^k||_{p,alpha}||_{p,alpha} with the monomials tabulated once on a grid.
class BasisNorm {
 public:
  BasisNorm(int degree, double p, double alpha, const PolarGrid& grid);

  int size() const { return m_; }
  double p() const { return p_; }
  /// ln ||z^k||_{p,alpha}
  double log_monomial_norm(int k) const { return log_norms_[k]; }
  double norm(std::span<const cplx> c) const;

 private:
  int m_;
  double p_;
  std::vector<double> log_norms_;
  std::vector<cplx> table_;  // node-major, m_ entries per node
  std::vector<double> weights_;
};

/// Multi-restart Nelder-Mead over pairs (f, h) of degree <= cfg.degree.
SearchReport maximize_ratio_free(const SearchConfig& cfg);

/// Maximizes R(f, h) over f of degree <= degree for fixed h (n = 1).
SearchReport maximize_ratio_fixed_h(const HoloPoly& h, int degree, const SearchConfig& cfg);

/// maximize_ratio_fixed_h with h = z^j and degree max(cfg.degree, j).
SearchReport maximize_ratio_monomial_fixed(int j, const SearchConfig& cfg);

/// |a_j|^2 j!/alpha^j / sum_k |a_k|^2 k!/alpha^k: the share of ||f||_{2,alpha}^2 on psi_j.
double psi_mass_fraction(const HoloPoly& f, const MultiIndex& j, const FockWeight& w);

struct SweepRow {
  long k;
  double ratio;
  double gap;  ///< sqrt(C_p) - ratio
};

std::vector<SweepRow> monomial_sweep(const ExponentPair& p, long kmax);

struct DualEstimate {
  double estimate;  ///< max over trial f of |<f, h>| / ||f||_{p,alpha}
  double h_norm;    ///< ||h||_{p',alpha}
  double lower() const { return estimate / h_norm; }
};

/// Lower estimate of the norm of <., h>_alpha on H_{p,alpha} by searching over
/// f of degree <= deg(h) + extra_degree.
DualEstimate dual_norm_lower_estimate(const HoloPoly& h, double p, const FockWeight& w,
                                      int extra_degree, const SearchConfig& cfg);

struct InvariantCounts {
  int random_pairs = 1000;    ///< strict Hölder samples per exponent
  int random_polys = 200;     ///< Taylor bound, projection and pairing corpora
  int gaussian_samples = 500; ///< Hessian and critical point samples
  int search_restarts = 2;    ///< restarts for the searches run by the suite
};

struct InvariantEntry {
  std::string name;
  long samples;
  double worst_margin;  ///< >= 0 (or > 0 for strict statements) when passing
  bool passed;
};

struct InvariantReport {
  std::uint64_t seed;
  std::vector<InvariantEntry> entries;
  bool all_passed() const;
};

InvariantReport run_invariant_suite(std::uint64_t seed, const InvariantCounts& counts = {});

/// Random polynomial of degree <= max_degree whose psi-coefficients are
/// independent standard complex normals (nonzero with probability one).
HoloPoly random_poly(std::mt19937_64& rng, int max_degree, double alpha);

}  // namespace fock
