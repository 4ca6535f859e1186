#include "fock/space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fock/constants.hpp"
#include "fock/errors.hpp"

namespace fock {
namespace {

void require_p(double p, const char* who) {
  if (!std::isfinite(p) || !(p >= 1.0)) {
    throw DomainError(std::string(who) + ": p must be >= 1, got " + std::to_string(p));
  }
}

void require_same_dim(const HoloPoly& f, const FockWeight& w, const char* who) {
  if (f.dim() != w.n) {
    throw DimensionMismatch(std::string(who) + ": polynomial dimension " + std::to_string(f.dim()) +
                            " does not match weight dimension " + std::to_string(w.n));
  }
}

// ln of the 1-D moment ||z^k||^p_{p,alpha} = (2/(alpha p))^{kp/2} Gamma(kp/2 + 1)
double log_moment(int k, double p, double alpha) {
  const double e = 0.5 * k * p;
  return e * std::log(2.0 / (alpha * p)) + log_gamma(e + 1.0);
}

// |x|^{p-2} x without dividing by zero at x = 0 (the limit is 0 for p > 1).
cplx signed_power(cplx x, double p) {
  const double m2 = std::norm(x);
  if (m2 == 0.0) return 0.0;
  return std::pow(m2, 0.5 * (p - 2.0)) * x;
}

}  // namespace

PolarGrid grid_for_growth(const PolarGrid& grid, double growth) {
  if (grid.growth() >= growth) return grid;
  return PolarGrid(grid.n_r(), grid.n_theta(), growth, grid.kinks());
}

std::vector<cplx> poly_roots(const HoloPoly& f) {
  const std::vector<cplx> c = f.dense();
  int d = static_cast<int>(c.size()) - 1;
  int low = 0;  // roots at the origin
  while (low < d && c[low] == cplx{}) ++low;
  std::vector<cplx> roots(low, cplx{});
  const int m = d - low;
  if (m <= 0) return roots;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) comp(i, m - 1) = -c[low + i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < m; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

PolarGrid grid_for_poly(const PolarGrid& grid, const HoloPoly& f, double p, double alpha) {
  const double growth = std::max(grid.growth(), f.degree() * p);
  std::vector<cplx> kinks = grid.kinks();
  // |f|^p is not smooth at the zeros of f unless p is an even integer
  const bool smooth = std::floor(p / 2.0) == p / 2.0;
  if (!smooth && f.degree() > 0) {
    const double scale = std::sqrt(0.5 * alpha * p);
    for (const cplx& z : poly_roots(f)) {
      if (z != cplx{}) kinks.push_back(z * scale);
    }
  }
  if (growth == grid.growth() && kinks.size() == grid.kinks().size()) return grid;
  return PolarGrid(grid.n_r(), grid.n_theta(), growth, kinks);
}

QuadExp::QuadExp(cplx a, cplx c, double alpha) : a_(a), c_(c), alpha_(alpha) {
  if (!(std::abs(c) < 1.0)) {
    throw NotIntegrable("QuadExp: |c| must be < 1 for membership in H_{p,alpha}, got |c| = " +
                        std::to_string(std::abs(c)));
  }
  if (!(alpha > 0.0)) throw DomainError("QuadExp: alpha must be positive");
}

double NormalizedMonomial::coefficient() const {
  return std::exp(0.5 * (index.order() * std::log(alpha) - index.log_factorial()));
}

double log_monomial_norm(const MultiIndex& j, double p, const FockWeight& w) {
  require_p(p, "monomial_norm");
  if (j.dim() != w.n) throw DimensionMismatch("monomial_norm: index dimension mismatch");
  double acc = 0.0;
  for (int k = 0; k < j.dim(); ++k) acc += log_moment(j[k], p, w.alpha);
  return acc / p;
}

double monomial_norm(const MultiIndex& j, double p, const FockWeight& w) {
  return std::exp(log_monomial_norm(j, p, w));
}

double poly_norm(const HoloPoly& f, double p, const FockWeight& w, const PolarGrid& grid,
                 QuadCheck check) {
  require_p(p, "poly_norm");
  require_same_dim(f, w, "poly_norm");
  if (w.n != 1) throw DimensionMismatch("poly_norm: numeric path requires n = 1");
  if (f.is_zero()) return 0.0;
  const std::vector<cplx> c = f.dense();
  const double integral = weighted_lp_integral([&c](cplx z) { return horner(c, z); }, p, w,
                                               grid_for_poly(grid, f, p, w.alpha), check);
  return std::pow(integral, 1.0 / p);
}

double poly_norm_l2(const HoloPoly& f, const FockWeight& w) {
  require_same_dim(f, w, "poly_norm_l2");
  return std::sqrt(std::real(poly_pairing(f, f, w)));
}

cplx poly_pairing(const HoloPoly& f, const HoloPoly& g, const FockWeight& w) {
  if (f.dim() != g.dim()) throw DimensionMismatch("poly_pairing: dimension mismatch");
  require_same_dim(f, w, "poly_pairing");
  cplx acc = 0.0;
  const double log_alpha = std::log(w.alpha);
  // both maps are ordered by MultiIndex: merge
  auto it = f.terms().begin();
  auto jt = g.terms().begin();
  while (it != f.terms().end() && jt != g.terms().end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      const MultiIndex& j = it->first;
      acc += it->second * std::conj(jt->second) *
             std::exp(j.log_factorial() - j.order() * log_alpha);
      ++it;
      ++jt;
    }
  }
  return acc;
}

ReproducingKernel::ReproducingKernel(std::vector<cplx> z, const FockWeight& w)
    : z_(std::move(z)), w_(w) {
  if (static_cast<int>(z_.size()) != w.n) {
    throw DimensionMismatch("ReproducingKernel: point dimension does not match weight");
  }
}

cplx ReproducingKernel::operator()(std::span<const cplx> x) const {
  if (x.size() != z_.size()) throw DimensionMismatch("ReproducingKernel: argument dimension");
  cplx inner = 0.0;
  for (std::size_t k = 0; k < z_.size(); ++k) inner += x[k] * std::conj(z_[k]);
  return std::exp(w_.alpha * inner);
}

cplx ReproducingKernel::operator()(cplx x) const { return (*this)(std::span<const cplx>(&x, 1)); }

double ReproducingKernel::norm() const {
  double r2 = 0.0;
  for (const cplx& v : z_) r2 += std::norm(v);
  return std::exp(0.5 * w_.alpha * r2);
}

HoloPoly ReproducingKernel::taylor(int degree) const {
  if (degree < 0) throw DomainError("ReproducingKernel::taylor: degree must be >= 0");
  const int n = w_.n;
  HoloPoly out(n);
  // exp(alpha sum_k x_k conj(z_k)) = sum_j prod_k (alpha conj(z_k))^{j_k} / j_k! x^j
  std::vector<int> j(n, 0);
  while (true) {
    int order = 0;
    for (int v : j) order += v;
    if (order <= degree) {
      cplx c = 1.0;
      for (int k = 0; k < n; ++k) {
        c *= std::pow(w_.alpha * std::conj(z_[k]), j[k]) / std::exp(log_gamma(j[k] + 1.0));
      }
      out.set(MultiIndex(j), c);
    }
    // odometer over {0..degree}^n
    int k = 0;
    while (k < n && ++j[k] > degree) j[k++] = 0;
    if (k == n) break;
  }
  return out;
}

int ReproducingKernel::taylor_degree_for(double tol, double p) const {
  double r2 = 0.0;
  for (const cplx& v : z_) r2 += std::norm(v);
  const double r = std::sqrt(r2);
  if (r == 0.0) return 0;
  // after a unitary rotation <x, z> = |z| x_1, and the norms are rotation invariant
  const FockWeight w1(w_.alpha, 1);
  const double log_scale = std::log(w_.alpha * r);
  const double target = std::log(tol) + std::log(norm());
  for (int d = 0; d < 100000; ++d) {
    double tail = 0.0;
    for (int k = d + 1; k <= d + 400; ++k) {
      const double lt = k * log_scale - log_gamma(k + 1.0) + log_monomial_norm(MultiIndex::scalar(k), p, w1);
      tail += std::exp(lt - target);
    }
    if (tail < 1.0) return d;
  }
  throw ConvergenceFailure("ReproducingKernel::taylor_degree_for: no degree meets tolerance");
}

ReproducingKernel kernel_eval(std::vector<cplx> z, const FockWeight& w) {
  return ReproducingKernel(std::move(z), w);
}

PointwiseBound pointwise_bound_check(const HoloPoly& f, cplx z, double p, const FockWeight& w,
                                     const PolarGrid& grid) {
  const double lhs = std::abs(f(z));
  const double rhs = std::exp(0.5 * w.alpha * std::norm(z)) * poly_norm(f, p, w, grid);
  return {lhs, rhs};
}

ComplexFn g_operator_apply(ComplexFn h, double p, double alpha) {
  require_p(p, "g_operator_apply");
  const double damp = alpha * (0.5 * p - 1.0);
  return [h = std::move(h), p, damp](cplx z) {
    return signed_power(h(z), p) * std::exp(-damp * std::norm(z));
  };
}

GOperatorImage g_operator_eval(const HoloPoly& h, double p, const FockWeight& w,
                               const PolarGrid& grid) {
  if (h.is_zero()) throw ZeroFunction("g_operator_eval: h must be nonzero");
  require_same_dim(h, w, "g_operator_eval");
  const double q = conjugate_exponent(p);
  const double hn = poly_norm(h, p, w, grid);
  const double gn = std::pow(q / p, w.n / q) * std::pow(hn, p / q);
  const std::vector<cplx> c = h.dense();
  ComplexFn eval = g_operator_apply([c](cplx z) { return horner(c, z); }, p, w.alpha);
  return {std::move(eval), hn, gn};
}

double projection_eigenvalue(const MultiIndex& j, double p, const FockWeight& w) {
  require_p(p, "projection_eigenvalue");
  if (j.dim() != w.n) throw DimensionMismatch("projection_eigenvalue: index dimension mismatch");
  double log_lambda = (0.5 * j.order() * p + w.n) * std::log(2.0 / p) - 0.5 * p * j.log_factorial();
  for (int k = 0; k < j.dim(); ++k) log_lambda += log_gamma(0.5 * j[k] * p + 1.0);
  return std::exp(log_lambda);
}

double taylor_coeff_bound(int j, double p, const FockWeight& w) {
  if (j < 0) throw DomainError("taylor_coeff_bound: j must be >= 0");
  if (w.n != 1) throw DimensionMismatch("taylor_coeff_bound: requires n = 1");
  return std::exp(-log_monomial_norm(MultiIndex::scalar(j), p, w));
}

HoloPoly monomial_projection(const HoloPoly& f, const MultiIndex& j, const FockWeight& w) {
  require_same_dim(f, w, "monomial_projection");
  const NormalizedMonomial psi{j, w.alpha};
  const HoloPoly psi_poly = psi.to_poly();
  return psi_poly * poly_pairing(f, psi_poly, w);
}

double quadexp_norm(const QuadExp& g, double p, const FockWeight& w) {
  require_p(p, "quadexp_norm");
  if (w.n != 1) throw DimensionMismatch("quadexp_norm: requires n = 1");
  const double one_minus = 1.0 - std::norm(g.c());
  const double expo =
      0.5 * w.alpha * (std::norm(g.a()) + std::real(std::conj(g.c()) * g.a() * g.a())) / one_minus;
  return std::exp(-std::log(one_minus) / (2.0 * p) + expo);
}

GaussianForm quadexp_norm_form(cplx a, cplx c, double p, double alpha) {
  const double s = 0.5 * alpha * p;
  Eigen::MatrixXcd m(2, 2);
  m << s * (1.0 - c.real()), s * c.imag(), s * c.imag(), s * (1.0 + c.real());
  Eigen::VectorXcd u(2);
  u << s * a.real(), -s * a.imag();
  return {ComplexSymMatrix(m), u, s / std::numbers::pi};
}

GaussianForm quadexp_pairing_form(const QuadExp& g, const QuadExp& h) {
  if (g.alpha() != h.alpha()) throw DomainError("quadexp_pairing: weights differ");
  const double s = 0.5 * g.alpha();
  const cplx i(0.0, 1.0);
  const cplx cd = g.c() + std::conj(h.c());
  const cplx off = -i * g.c() + i * std::conj(h.c());
  Eigen::MatrixXcd m(2, 2);
  m << s * (2.0 - cd), s * off, s * off, s * (2.0 + cd);
  Eigen::VectorXcd u(2);
  u << s * (g.a() + std::conj(h.a())), s * i * (g.a() - std::conj(h.a()));
  return {ComplexSymMatrix(m), u, g.alpha() / std::numbers::pi};
}

cplx quadexp_pairing(const QuadExp& g, const QuadExp& h) {
  const GaussianForm form = quadexp_pairing_form(g, h);
  return form.prefactor * gaussian_integral(form.matrix, form.vector);
}

}  // namespace fock
