#include "fock/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fock {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opt) {
  const std::size_t d = x0.size();
  long evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  if (d == 0) {
    const double fx = eval(x0);
    return {x0, fx, evals, true};
  }

  const double dd = static_cast<double>(d);
  const double c_refl = 1.0;
  const double c_exp = 1.0 + 2.0 / dd;
  const double c_con = 0.75 - 0.5 / dd;
  const double c_shr = d > 1 ? 1.0 - 1.0 / dd : 0.5;

  std::vector<std::vector<double>> pts(d + 1, x0);
  for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += opt.initial_step;
  std::vector<double> vals(d + 1);
  for (std::size_t i = 0; i <= d; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), trial(d), trial2(d);
  bool converged = false;

  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2(d + 1);
    std::vector<double> v2(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      p2[i] = std::move(pts[order[i]]);
      v2[i] = vals[order[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };
  auto along = [&](double t, std::vector<double>& out) {
    // centroid + t (centroid - worst)
    for (std::size_t k = 0; k < d; ++k) out[k] = centroid[k] + t * (centroid[k] - pts[d][k]);
  };

  while (true) {
    sort_simplex();
    double fspread = 0.0;
    double xspread = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      fspread = std::max(fspread, std::abs(vals[i] - vals[0]));
      for (std::size_t k = 0; k < d; ++k) xspread = std::max(xspread, std::abs(pts[i][k] - pts[0][k]));
    }
    if (fspread <= opt.ftol && xspread <= opt.xtol) {
      converged = true;
      break;
    }
    if (evals >= opt.max_evals) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) centroid[k] += pts[i][k] / dd;

    along(c_refl, trial);
    const double fr = eval(trial);
    if (fr < vals[0]) {
      along(c_exp, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        pts[d] = trial2;
        vals[d] = fe;
      } else {
        pts[d] = trial;
        vals[d] = fr;
      }
      continue;
    }
    if (fr < vals[d - 1]) {
      pts[d] = trial;
      vals[d] = fr;
      continue;
    }
    if (fr < vals[d]) {
      along(c_con, trial2);  // outside contraction
      const double fc = eval(trial2);
      if (fc <= fr) {
        pts[d] = trial2;
        vals[d] = fc;
        continue;
      }
    } else {
      along(-c_con, trial2);  // inside contraction
      const double fc = eval(trial2);
      if (fc < vals[d]) {
        pts[d] = trial2;
        vals[d] = fc;
        continue;
      }
    }
    for (std::size_t i = 1; i <= d; ++i) {
      for (std::size_t k = 0; k < d; ++k) pts[i][k] = pts[0][k] + c_shr * (pts[i][k] - pts[0][k]);
      vals[i] = eval(pts[i]);
    }
  }
  return {pts[0], vals[0], evals, converged};
}

}  // namespace fock
