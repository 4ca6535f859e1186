#include "fock/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fock/constants.hpp"
#include "fock/errors.hpp"

namespace fock {

FockWeight::FockWeight(double alpha_, int n_) : alpha(alpha_), n(n_) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw DomainError("FockWeight: alpha must be positive, got " + std::to_string(alpha));
  }
  if (n < 1) throw DomainError("FockWeight: dimension must be >= 1, got " + std::to_string(n));
}

ComplexSymMatrix::ComplexSymMatrix(Eigen::MatrixXcd a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) {
    throw DomainError("ComplexSymMatrix: matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < a_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a_.cols(); ++j) {
      if (a_(i, j) != a_(j, i)) throw DomainError("ComplexSymMatrix: matrix is not symmetric");
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a_.real());
  re_pd_ = llt.info() == Eigen::Success;
}

namespace {

constexpr int kMinPanelNodes = 16;
// a ring counts as close to a kink when |s - |k|| < kNearRing |k| / n_theta
constexpr double kNearRing = 60.0;

void require_integrable(const ComplexSymMatrix& a) {
  if (!a.real_part_positive_definite()) {
    throw NotIntegrable("Gaussian integrand is not integrable: Re(A) is not positive definite");
  }
}

}  // namespace

cplx half_log_det_homotopy(const ComplexSymMatrix& a) {
  require_integrable(a);
  const Eigen::MatrixXd re = a.matrix().real();
  const Eigen::MatrixXcd im_part = a.matrix() - re.cast<cplx>();

  Eigen::LLT<Eigen::MatrixXd> llt(re);
  double log_det0 = 0.0;
  for (Eigen::Index i = 0; i < re.rows(); ++i) log_det0 += 2.0 * std::log(llt.matrixL()(i, i));

  cplx log_det = log_det0;
  const auto det_at = [&](double t) {
    const Eigen::MatrixXcd at = re.cast<cplx>() + t * im_part;
    return at.partialPivLu().determinant();
  };
  double t = 0.0;
  double dt = 1.0 / 64.0;
  cplx det_prev = det_at(0.0);
  while (t < 1.0) {
    const double t_next = std::min(1.0, t + dt);
    const cplx det_next = det_at(t_next);
    const cplx step = std::log(det_next / det_prev);
    if (std::abs(step.imag()) > 0.25 && dt > 1e-12) {
      dt *= 0.5;
      continue;
    }
    log_det += step;
    det_prev = det_next;
    t = t_next;
    if (std::abs(step.imag()) < 0.05) dt = std::min(2.0 * dt, 0.25);
  }
  return 0.5 * log_det;
}

cplx half_log_det_eigen(const ComplexSymMatrix& a) {
  require_integrable(a);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a.matrix(), /*computeEigenvectors=*/false);
  cplx acc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) acc += std::log(es.eigenvalues()(i));
  return 0.5 * acc;
}

cplx gaussian_integral(const ComplexSymMatrix& a, const Eigen::VectorXcd& v) {
  require_integrable(a);
  if (v.size() != a.dim()) {
    throw DimensionMismatch("gaussian_integral: vector length " + std::to_string(v.size()) +
                            " does not match matrix dimension " + std::to_string(a.dim()));
  }
  const Eigen::VectorXcd sol = a.matrix().partialPivLu().solve(v);
  const cplx quad_form = v.transpose() * sol;  // bilinear, no conjugation
  const double k = a.dim();
  return std::exp(0.5 * k * std::log(std::numbers::pi) - half_log_det_homotopy(a) + quad_form);
}

double upper_incomplete_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw DomainError("upper_incomplete_gamma_q: a must be positive");
  if (x <= 0.0) return 1.0;
  const double log_prefactor = -x + a * std::log(x) - log_gamma(a);
  if (x < a + 1.0) {
    // series for P(a, x)
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return std::max(0.0, 1.0 - sum * std::exp(log_prefactor));
  }
  // continued fraction for Q(a, x), modified Lentz
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefactor) * h;
}

double polar_cutoff(double growth, double tail) {
  if (growth < 0.0) throw DomainError("polar_cutoff: growth must be non-negative");
  const double a = growth / 2.0 + 1.0;
  double lo = std::max(a, -std::log(tail));
  if (upper_incomplete_gamma_q(a, lo) < tail) return std::sqrt(lo);
  double hi = 2.0 * lo;
  while (upper_incomplete_gamma_q(a, hi) >= tail) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (upper_incomplete_gamma_q(a, mid) < tail ? hi : lo) = mid;
  }
  return std::sqrt(hi);
}

PolarGrid::PolarGrid(int n_r, int n_theta, double growth, std::vector<cplx> kinks)
    : n_r_(n_r), n_theta_(n_theta), growth_(growth) {
  if (n_r < 1 || n_theta < 1) throw DomainError("PolarGrid: node counts must be positive");
  cutoff_ = polar_cutoff(growth);
  std::sort(kinks.begin(), kinks.end(),
            [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  for (const cplx& k : kinks) {
    const double m = std::abs(k);
    if (m > 0.0 && m < cutoff_) kinks_.push_back(k);
  }

  // radial panels split at the kink moduli
  std::vector<double> edges{0.0};
  for (const cplx& k : kinks_) {
    if (std::abs(k) - edges.back() > 1e-12 * cutoff_) edges.push_back(std::abs(k));
  }
  edges.push_back(cutoff_);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double len = edges[k + 1] - edges[k];
    const int m = kinks_.empty()
                      ? n_r
                      : std::max(kMinPanelNodes, static_cast<int>(std::ceil(n_r * len / cutoff_)));
    const QuadratureRule rule = gauss_legendre(m, edges[k], edges[k + 1]);
    for (int i = 0; i < m; ++i) {
      const double s = rule.nodes[i];
      radii_.push_back(s);
      radial_weights_.push_back(rule.weights[i] * 2.0 * s * std::exp(-s * s));
    }
  }
  angles_.resize(n_theta);
  for (int j = 0; j < n_theta; ++j) angles_[j] = 2.0 * std::numbers::pi * j / n_theta;

  // Rings passing close to a kink get Gauss-Legendre panels in theta split at
  // the kink arguments; the uniform rule loses its spectral accuracy there.
  ring_rule_.assign(radii_.size(), -1);
  const double near = kNearRing / n_theta;
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    std::vector<double> cuts;
    for (const cplx& k : kinks_) {
      if (std::abs(radii_[i] - std::abs(k)) < near * std::abs(k)) {
        double a = std::arg(k);
        if (a < 0.0) a += 2.0 * std::numbers::pi;
        cuts.push_back(a);
      }
    }
    if (cuts.empty()) continue;
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> e = cuts;
    e.push_back(cuts.front() + 2.0 * std::numbers::pi);
    AngularRule rule;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
      const double len = e[k + 1] - e[k];
      if (len <= 1e-14) continue;
      const int m = std::max(kMinPanelNodes,
                             static_cast<int>(std::ceil(n_theta * len / (2.0 * std::numbers::pi))));
      const QuadratureRule q = gauss_legendre(m, e[k], e[k + 1]);
      for (int j = 0; j < m; ++j) {
        rule.unit.push_back(std::polar(1.0, q.nodes[j]));
        rule.weights.push_back(q.weights[j] / (2.0 * std::numbers::pi));
      }
    }
    ring_rule_[i] = static_cast<int>(special_.size());
    special_.push_back(std::move(rule));
  }
}

PolarGrid PolarGrid::refined() const { return PolarGrid(2 * n_r_, n_theta_, growth_, kinks_); }

double PolarGrid::total_mass() const {
  double m = 0.0;
  for (double w : radial_weights_) m += w;
  return m;
}

namespace {

template <class T, class F>
T integrate_polar(double beta, const PolarGrid& grid, F&& integrand) {
  const double scale = 1.0 / std::sqrt(beta);
  const auto& angles = grid.angles();
  std::vector<cplx> unit(angles.size());
  for (std::size_t j = 0; j < angles.size(); ++j) unit[j] = std::polar(1.0, angles[j]);
  T total{};
  for (std::size_t i = 0; i < grid.radii().size(); ++i) {
    const double r = grid.radii()[i] * scale;
    T ring{};
    if (const PolarGrid::AngularRule* rule = grid.ring_rule(i)) {
      for (std::size_t j = 0; j < rule->unit.size(); ++j) ring += rule->weights[j] * integrand(r * rule->unit[j]);
    } else {
      for (const cplx& u : unit) ring += integrand(r * u);
      ring *= grid.angular_weight();
    }
    total += grid.radial_weights()[i] * ring;
  }
  return total;
}

template <class T>
double relative_change(const T& coarse, const T& fine) {
  const double denom = std::max(std::abs(fine), std::numeric_limits<double>::min());
  return std::abs(coarse - fine) / denom;
}

}  // namespace

double gaussian_expectation(const std::function<double(cplx)>& g, double beta,
                            const PolarGrid& grid) {
  if (!(beta > 0.0)) throw DomainError("gaussian_expectation: beta must be positive");
  return integrate_polar<double>(beta, grid, g);
}

double weighted_lp_integral(const ComplexFn& f, double p, const FockWeight& w,
                            const PolarGrid& grid, QuadCheck check) {
  if (w.n != 1) throw DimensionMismatch("weighted_lp_integral: numeric quadrature requires n = 1");
  if (!(p >= 1.0)) throw DomainError("weighted_lp_integral: p must be >= 1");
  const double beta = w.alpha * p / 2.0;
  const auto integrand = [&](cplx z) { return std::pow(std::norm(f(z)), p / 2.0); };
  const double coarse = integrate_polar<double>(beta, grid, integrand);
  if (check.refine_tol) {
    const double fine = integrate_polar<double>(beta, grid.refined(), integrand);
    if (relative_change(coarse, fine) > *check.refine_tol) {
      throw GridTooCoarse("weighted_lp_integral: radial refinement changed the result beyond tolerance",
                          coarse, fine);
    }
  }
  return coarse;
}

cplx weighted_pairing(const ComplexFn& f, const ComplexFn& g, const FockWeight& w,
                      const PolarGrid& grid, QuadCheck check) {
  if (w.n != 1) throw DimensionMismatch("weighted_pairing: numeric quadrature requires n = 1");
  const auto integrand = [&](cplx z) { return f(z) * std::conj(g(z)); };
  const cplx coarse = integrate_polar<cplx>(w.alpha, grid, integrand);
  if (check.refine_tol) {
    const cplx fine = integrate_polar<cplx>(w.alpha, grid.refined(), integrand);
    // measure the change against int |f g|, which stays positive when the pairing cancels
    const double scale = integrate_polar<double>(
        w.alpha, grid, [&](cplx z) { return std::abs(f(z)) * std::abs(g(z)); });
    if (std::abs(coarse - fine) > *check.refine_tol * std::max(std::abs(fine), scale)) {
      throw GridTooCoarse("weighted_pairing: radial refinement changed the result beyond tolerance",
                          std::abs(coarse), std::abs(fine));
    }
  }
  return coarse;
}

}  // namespace fock
