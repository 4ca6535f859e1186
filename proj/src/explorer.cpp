#include "fock/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "fock/errors.hpp"
#include "fock/nelder_mead.hpp"
#include "fock/ratio.hpp"
#include "fock/space.hpp"

namespace fock {
namespace {

using Blocks = std::vector<std::vector<cplx>>;
using Objective = std::function<double(const Blocks&)>;

std::size_t argmax_abs(const std::vector<cplx>& c) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (std::abs(c[k]) > std::abs(c[best])) best = k;
  }
  return best;
}

// Chart on each block: the pivot coefficient is fixed to 1 (this removes the
// scale and phase directions, along which R is constant), the rest are free.
struct Chart {
  std::vector<std::size_t> pivots;

  std::vector<double> params(const Blocks& b) const {
    std::vector<double> x;
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t k = 0; k < b[i].size(); ++k) {
        if (k == pivots[i]) continue;
        x.push_back(b[i][k].real());
        x.push_back(b[i][k].imag());
      }
    }
    return x;
  }

  void unpack(std::span<const double> x, Blocks& b) const {
    std::size_t at = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t k = 0; k < b[i].size(); ++k) {
        if (k == pivots[i]) {
          b[i][k] = 1.0;
        } else {
          b[i][k] = cplx(x[at], x[at + 1]);
          at += 2;
        }
      }
    }
  }
};

// Re-pivot every block on its largest coefficient. Returns true if any pivot moved.
bool recenter(Blocks& b, Chart& chart) {
  bool moved = false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::size_t k = argmax_abs(b[i]);
    if (chart.pivots.size() <= i) {
      chart.pivots.push_back(k);
      moved = true;
    } else if (std::abs(b[i][k]) > std::abs(b[i][chart.pivots[i]]) * (1.0 + 1e-9)) {
      chart.pivots[i] = k;
      moved = true;
    }
    const cplx s = b[i][chart.pivots[i]];
    for (cplx& v : b[i]) v /= s;
  }
  return moved;
}

struct RestartResult {
  Blocks blocks;
  double ratio;
  long evaluations;
  bool converged;
};

RestartResult run_restart(const Objective& objective, Blocks blocks, double tol, long budget) {
  Chart chart;
  recenter(blocks, chart);
  Blocks work = blocks;
  auto neg = [&](std::span<const double> x) {
    chart.unpack(x, work);
    const double r = objective(work);
    return std::isfinite(r) ? -r : 0.0;
  };

  long used = 0;
  double step = 0.25;
  double prev = -1.0;
  bool converged = false;
  double ratio = 0.0;
  while (used < budget) {
    NelderMeadOptions opt;
    opt.ftol = tol;
    opt.xtol = std::sqrt(tol);
    opt.max_evals = budget - used;
    opt.initial_step = step;
    const NelderMeadResult nm = nelder_mead(neg, chart.params(blocks), opt);
    used += nm.evals;
    chart.unpack(nm.x, blocks);
    ratio = -nm.fx;
    const bool moved = recenter(blocks, chart);
    if (!moved && nm.converged && ratio - prev <= tol) {
      converged = true;
      break;
    }
    prev = ratio;
    step = moved ? 0.1 : 0.01;
  }
  return {blocks, ratio, used, converged};
}

std::vector<cplx> random_block(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> c(m);
  for (cplx& v : c) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = cplx(re, im);
  }
  return c;
}

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

// Coefficients in the basis z^k / ||z^k|| back to a polynomial.
HoloPoly to_poly(const std::vector<cplx>& c, const BasisNorm& basis) {
  std::vector<cplx> a(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    a[k] = c[k] * std::exp(-basis.log_monomial_norm(static_cast<int>(k)));
  }
  return HoloPoly::from_coefficients(a);
}

// Unit norm, first nonzero coefficient real and positive.
HoloPoly gauge_fix(const HoloPoly& f, double p, const FockWeight& w, const PolarGrid& grid) {
  if (f.is_zero()) return f;
  const cplx lead = f.terms().begin()->second;
  const cplx phase = std::conj(lead) / std::abs(lead);
  const HoloPoly g = f * phase;
  return g * (1.0 / poly_norm(g, p, w, grid));
}

struct Restarts {
  std::vector<RestartResult> results;
  std::vector<HistoryEntry> history;
  int best = 0;
  long evaluations = 0;
  bool all_converged = true;
};

Restarts run_restarts(const SearchConfig& cfg, const Objective& objective, int n_blocks, int m) {
  Restarts out;
  double running = -1.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng = restart_rng(cfg.seed, r);
    Blocks init;
    for (int b = 0; b < n_blocks; ++b) init.push_back(random_block(rng, m));
    RestartResult res = run_restart(objective, std::move(init), cfg.tol, cfg.budget);
    if (res.ratio > running) {
      running = res.ratio;
      out.best = r;
    }
    out.evaluations += res.evaluations;
    out.all_converged = out.all_converged && res.converged;
    out.history.push_back({r, res.ratio, running, res.evaluations, res.converged});
    out.results.push_back(std::move(res));
  }
  return out;
}

SearchReport finish(const SearchConfig& cfg, Restarts&& runs, HoloPoly f, HoloPoly h) {
  const ExponentPair ep(cfg.p);
  const FockWeight w(cfg.alpha, 1);
  const PolarGrid fine(cfg.final_n_r, cfg.final_n_theta);
  SearchReport rep;
  rep.p = cfg.p;
  rep.best_f = gauge_fix(f, ep.p(), w, fine);
  rep.best_h = gauge_fix(h, ep.p_conj(), w, fine);
  rep.best_ratio = ratio_general(rep.best_f, rep.best_h, ep.p(), w, fine).value;
  rep.gap_to_sqrt_cp = std::sqrt(ep.c_p()) - rep.best_ratio;
  rep.gap_to_cp = ep.c_p() - rep.best_ratio;
  rep.evaluations = runs.evaluations;
  rep.converged = runs.all_converged;
  rep.best_restart = runs.best;
  rep.history = std::move(runs.history);
  return rep;
}

double log_pairing_weight(int k, double alpha) { return log_gamma(k + 1.0) - k * std::log(alpha); }

}  // namespace

void SearchConfig::validate() const {
  auto fail = [](const std::string& what) { throw DomainError("SearchConfig: " + what); };
  if (!std::isfinite(p) || !(p > 1.0)) fail("p must satisfy 1 < p < inf");
  if (!std::isfinite(alpha) || !(alpha > 0.0)) fail("alpha must be positive");
  if (degree < 0 || degree > 60) fail("degree must lie in [0, 60]");
  if (restarts < 1) fail("restarts must be >= 1");
  if (!std::isfinite(tol) || !(tol > 0.0)) fail("tol must be positive");
  if (budget < 1) fail("budget must be >= 1");
  if (search_n_r < 8 || search_n_theta < 8 || final_n_r < 8 || final_n_theta < 8) {
    fail("grid sizes must be >= 8");
  }
}

BasisNorm::BasisNorm(int degree, double p, double alpha, const PolarGrid& base)
    : m_(degree + 1), p_(p) {
  const FockWeight w(alpha, 1);
  const PolarGrid grid = grid_for_growth(base, degree * p);
  for (int k = 0; k < m_; ++k) log_norms_.push_back(fock::log_monomial_norm(MultiIndex::scalar(k), p, w));
  const double inv_sqrt_beta = 1.0 / std::sqrt(0.5 * alpha * p);
  const std::size_t nodes = grid.radii().size() * grid.angles().size();
  table_.reserve(nodes * m_);
  weights_.reserve(nodes);
  for (std::size_t i = 0; i < grid.radii().size(); ++i) {
    const double log_r = std::log(grid.radii()[i] * inv_sqrt_beta);
    for (double theta : grid.angles()) {
      for (int k = 0; k < m_; ++k) {
        table_.push_back(std::polar(std::exp(k * log_r - log_norms_[k]), k * theta));
      }
      weights_.push_back(grid.radial_weights()[i] * grid.angular_weight());
    }
  }
}

double BasisNorm::norm(std::span<const cplx> c) const {
  if (static_cast<int>(c.size()) != m_) throw DimensionMismatch("BasisNorm::norm: size mismatch");
  const double half = 0.5 * p_;
  double acc = 0.0;
  const cplx* row = table_.data();
  for (double wt : weights_) {
    cplx v = 0.0;
    for (int k = 0; k < m_; ++k) v += c[k] * row[k];
    row += m_;
    const double q = std::norm(v);
    acc += wt * (half == 1.0 ? q : half == 2.0 ? q * q : std::pow(q, half));
  }
  return std::pow(acc, 1.0 / p_);
}

SearchReport maximize_ratio_free(const SearchConfig& cfg) {
  cfg.validate();
  const ExponentPair ep(cfg.p);
  const PolarGrid coarse(cfg.search_n_r, cfg.search_n_theta);
  const BasisNorm nf(cfg.degree, ep.p(), cfg.alpha, coarse);
  const BasisNorm nh(cfg.degree, ep.p_conj(), cfg.alpha, coarse);
  const int m = cfg.degree + 1;
  // <z^k/||z^k||_p, z^k/||z^k||_p'> = R(z^k, z^k)
  std::vector<double> rk(m);
  for (int k = 0; k < m; ++k) {
    rk[k] = std::exp(log_pairing_weight(k, cfg.alpha) - nf.log_monomial_norm(k) - nh.log_monomial_norm(k));
  }
  const Objective objective = [&](const Blocks& b) {
    cplx pair = 0.0;
    for (int k = 0; k < m; ++k) pair += b[0][k] * std::conj(b[1][k]) * rk[k];
    return std::abs(pair) / (nf.norm(b[0]) * nh.norm(b[1]));
  };
  Restarts runs = run_restarts(cfg, objective, 2, m);
  const RestartResult& best = runs.results[runs.best];
  HoloPoly f = to_poly(best.blocks[0], nf);
  HoloPoly h = to_poly(best.blocks[1], nh);
  return finish(cfg, std::move(runs), std::move(f), std::move(h));
}

SearchReport maximize_ratio_fixed_h(const HoloPoly& h, int degree, const SearchConfig& cfg) {
  cfg.validate();
  if (h.dim() != 1) throw DimensionMismatch("maximize_ratio_fixed_h: requires n = 1");
  if (h.is_zero()) throw ZeroFunction("maximize_ratio_fixed_h: h must be nonzero");
  if (degree < 0) throw DomainError("maximize_ratio_fixed_h: degree must be >= 0");
  const ExponentPair ep(cfg.p);
  const FockWeight w(cfg.alpha, 1);
  const PolarGrid coarse(cfg.search_n_r, cfg.search_n_theta);
  const BasisNorm nf(degree, ep.p(), cfg.alpha, coarse);
  const int m = degree + 1;
  std::vector<cplx> pk(m);  // pairing weight of c_k against h
  for (int k = 0; k < m; ++k) {
    pk[k] = std::conj(h.coefficient(k)) *
            std::exp(log_pairing_weight(k, cfg.alpha) - nf.log_monomial_norm(k));
  }
  const double h_norm = poly_norm(h, ep.p_conj(), w, coarse);
  const Objective objective = [&](const Blocks& b) {
    cplx pair = 0.0;
    for (int k = 0; k < m; ++k) pair += b[0][k] * pk[k];
    return std::abs(pair) / (nf.norm(b[0]) * h_norm);
  };
  Restarts runs = run_restarts(cfg, objective, 1, m);
  HoloPoly f = to_poly(runs.results[runs.best].blocks[0], nf);
  return finish(cfg, std::move(runs), std::move(f), h);
}

SearchReport maximize_ratio_monomial_fixed(int j, const SearchConfig& cfg) {
  if (j < 0) throw DomainError("maximize_ratio_monomial_fixed: j must be >= 0");
  return maximize_ratio_fixed_h(HoloPoly::monomial(MultiIndex::scalar(j)), std::max(cfg.degree, j), cfg);
}

double psi_mass_fraction(const HoloPoly& f, const MultiIndex& j, const FockWeight& w) {
  if (f.is_zero()) throw ZeroFunction("psi_mass_fraction: f must be nonzero");
  const double log_alpha = std::log(w.alpha);
  double total = 0.0;
  double on_j = 0.0;
  for (const auto& [idx, a] : f.terms()) {
    const double m = std::norm(a) * std::exp(idx.log_factorial() - idx.order() * log_alpha);
    total += m;
    if (idx == j) on_j = m;
  }
  return on_j / total;
}

std::vector<SweepRow> monomial_sweep(const ExponentPair& p, long kmax) {
  if (kmax < 0) throw DomainError("monomial_sweep: kmax must be >= 0");
  const double s = std::sqrt(p.c_p());
  std::vector<SweepRow> rows;
  rows.reserve(kmax + 1);
  for (long k = 0; k <= kmax; ++k) {
    const double r = ratio_monomial(k, p);
    rows.push_back({k, r, s - r});
  }
  return rows;
}

DualEstimate dual_norm_lower_estimate(const HoloPoly& h, double p, const FockWeight& w,
                                      int extra_degree, const SearchConfig& cfg) {
  SearchConfig c = cfg;
  c.p = p;
  c.alpha = w.alpha;
  const SearchReport rep = maximize_ratio_fixed_h(h, h.degree() + extra_degree, c);
  const PolarGrid fine(cfg.final_n_r, cfg.final_n_theta);
  const double h_norm = poly_norm(h, ExponentPair(p).p_conj(), w, fine);
  return {rep.best_ratio * h_norm, h_norm};
}

HoloPoly random_poly(std::mt19937_64& rng, int max_degree, double alpha) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = deg(rng);
  std::vector<cplx> a(d + 1);
  for (int k = 0; k <= d; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    // psi_k = sqrt(alpha^k / k!) z^k
    a[k] = cplx(re, im) * std::exp(0.5 * (k * std::log(alpha) - log_gamma(k + 1.0)));
  }
  return HoloPoly::from_coefficients(a);
}

}  // namespace fock
