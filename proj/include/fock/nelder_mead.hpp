#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fock {

struct NelderMeadOptions {
  double ftol = 1e-12;       ///< stop when max |f_i - f_best| <= ftol
  double xtol = 1e-7;        ///< ... and max |x_i - x_best|_inf <= xtol
  long max_evals = 10000;
  double initial_step = 0.1;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx;
  long evals;
  bool converged;
};

/// Minimizes f from x0 with the dimension-adaptive coefficients of Gao and Han
/// (reflection 1, expansion 1 + 2/d, contraction 3/4 - 1/(2d), shrink 1 - 1/d).
/// Deterministic: no randomness, ties resolved by stable sort.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opt);

}  // namespace fock
