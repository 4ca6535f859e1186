#include "fock/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "fock/errors.hpp"

namespace fock {
namespace {

void require_disk(cplx c, const char* who) {
  if (!(std::abs(c) < 1.0)) {
    throw DomainError(std::string(who) + ": parameters must lie in the open unit disk");
  }
}

// max over u in (0, 1] of gaussian_reduced_objective(u, v) by golden section in ln u
double inner_max(double v, const ExponentPair& p, double* u_best) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = std::log(v) - 40.0;
  double hi = 0.0;
  auto obj = [&](double s) { return gaussian_reduced_objective(std::exp(s), v, p); };
  double m1 = hi - phi * (hi - lo);
  double m2 = lo + phi * (hi - lo);
  double f1 = obj(m1);
  double f2 = obj(m2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + phi * (hi - lo);
      f2 = obj(m2);
    } else {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - phi * (hi - lo);
      f1 = obj(m1);
    }
  }
  const double s = 0.5 * (lo + hi);
  *u_best = std::exp(s);
  return obj(s);
}

}  // namespace

std::string_view to_string(RatioMethod m) {
  switch (m) {
    case RatioMethod::exact_monomial: return "exact_monomial";
    case RatioMethod::stirling_form: return "stirling_form";
    case RatioMethod::gaussian_closed_form: return "gaussian_closed_form";
    case RatioMethod::quadrature: return "quadrature";
  }
  return "unknown";
}

RatioResult ratio_general(const HoloPoly& f, const HoloPoly& h, double p, const FockWeight& w,
                          const PolarGrid& grid) {
  if (f.is_zero() || h.is_zero()) throw ZeroFunction("ratio_general: f and h must be nonzero");
  const ExponentPair ep(p);
  const double nf = poly_norm(f, ep.p(), w, grid);
  const double nh = poly_norm(h, ep.p_conj(), w, grid);
  const double value = std::abs(poly_pairing(f, h, w)) / (nf * nh);
  return {value, RatioMethod::quadrature, GridInfo{grid.n_r(), grid.n_theta(), grid.cutoff()}};
}

double ratio_monomial(long k, const ExponentPair& p) {
  if (k < 0) throw DomainError("ratio_monomial: k must be >= 0");
  if (k == 0) return 1.0;
  const double kd = static_cast<double>(k);
  const double q = p.p_conj();
  const double log_r = 0.5 * kd * std::log(p.p() * q / 4.0) + log_gamma(kd + 1.0) -
                       log_gamma(0.5 * kd * p.p() + 1.0) / p.p() - log_gamma(0.5 * kd * q + 1.0) / q;
  return std::exp(log_r);
}

double ratio_monomial_stirling(long k, const ExponentPair& p) {
  if (k < 0) throw DomainError("ratio_monomial_stirling: k must be >= 0");
  if (k == 0) return 1.0;
  return std::sqrt(p.c_p()) * std::exp(stirling_gap(p, k));
}

double ratio_monomial_tensor(const MultiIndex& j, const ExponentPair& p) {
  double acc = 1.0;
  for (int v : j.components()) acc *= ratio_monomial(v, p);
  return acc;
}

double gaussian_exponent(double x, double y, cplx b, cplx c, cplx d) {
  const cplx a(x, y);
  const cplx bb = std::conj(b);
  const double one_c = 1.0 - std::norm(c);
  const double one_d = 1.0 - std::norm(d);
  const cplx t1 = (2.0 * a * bb + a * a * std::conj(d) + bb * bb * c) / (1.0 - c * std::conj(d));
  const cplx t2 = (std::norm(a) + a * a * std::conj(c)) / one_c;
  const cplx t3 = (std::norm(b) + bb * bb * d) / one_d;
  return std::real(t1 - t2 - t3);
}

Eigen::Vector2d gaussian_exponent_gradient(double x, double y, cplx b, cplx c, cplx d) {
  const cplx a(x, y);
  const cplx half = (b + std::conj(a) * d) / (1.0 - std::conj(c) * d) -
                    (std::conj(a) * c + a) / (1.0 - std::norm(c));
  return {2.0 * half.real(), 2.0 * half.imag()};
}

cplx gaussian_critical_point(cplx b, cplx c, cplx d) {
  require_disk(c, "gaussian_critical_point");
  require_disk(d, "gaussian_critical_point");
  return (std::conj(b) * (d - c) + b * (1.0 - c * std::conj(d))) / (1.0 - std::norm(d));
}

Eigen::Matrix2d gaussian_hessian(cplx c, cplx d) {
  require_disk(c, "gaussian_hessian");
  require_disk(d, "gaussian_hessian");
  const double one_c = 1.0 - std::norm(c);
  const cplx k = d / (1.0 - std::conj(c) * d);
  Eigen::Matrix2d h;
  h(0, 0) = std::real(k - (1.0 + c) / one_c);
  h(0, 1) = std::imag(k - c / one_c);
  h(1, 0) = h(0, 1);
  h(1, 1) = std::real(-k - (1.0 - c) / one_c);
  return 2.0 * h;
}

double ratio_gaussian(const QuadExp& g, const QuadExp& h, const ExponentPair& p) {
  if (g.alpha() != h.alpha()) throw DomainError("ratio_gaussian: weights differ");
  const cplx c = g.c();
  const cplx d = h.c();
  const double log_pref = 0.5 * (std::log(1.0 - std::norm(c)) / p.p() +
                                 std::log(1.0 - std::norm(d)) / p.p_conj() -
                                 std::log(std::abs(1.0 - c * std::conj(d))));
  const double expo = gaussian_exponent(g.a().real(), g.a().imag(), h.a(), c, d);
  return std::exp(log_pref + 0.5 * g.alpha() * expo);
}

GaussianReduction gaussian_family_reduction(const ExponentPair& p) {
  const double q = p.p_conj();
  const double pp = p.p();
  GaussianReduction r;
  r.x_of_y = [q](double y) { return 2.0 * y / ((2.0 - q) * y * y + q); };
  r.g_of_y = [q, pp](double y) {
    const double s = (2.0 - q) * y * y + q;
    return std::pow(q * q - (2.0 - q) * (2.0 - q) * y * y, 1.0 / pp) * std::pow(s, 1.0 - 2.0 / pp) / q;
  };
  r.sup = r.g_of_y(1.0);
  return r;
}

double gaussian_reduced_objective(double u, double v, const ExponentPair& p) {
  const double log_h = std::log(u * (2.0 - u)) / p.p() + std::log(v * (2.0 - v)) / p.p_conj() -
                       std::log(u + v - u * v);
  return std::exp(0.5 * log_h);
}

GaussianFamilySup gaussian_family_sup(const ExponentPair& p, double alpha, double tol,
                                      unsigned long long seed) {
  if (!(tol > 0.0)) throw DomainError("gaussian_family_sup: tol must be positive");
  if (!(alpha > 0.0)) throw DomainError("gaussian_family_sup: alpha must be positive");
  GaussianFamilySup out{};
  double prev = 0.0;
  bool done = false;
  for (int k = 1; k <= 60; ++k) {
    const double v = std::ldexp(1.0, -k);
    double u = 0.0;
    const double val = inner_max(v, p, &u);
    out.value = val;
    out.x = 1.0 - u;
    out.y = 1.0 - v;
    out.steps = k;
    if (k > 1 && std::abs(val - prev) < 0.25 * tol) {
      done = true;
      break;
    }
    prev = val;
  }
  if (!done) throw ConvergenceFailure("gaussian_family_sup: increments did not fall below tol");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto disk = [&] { return std::polar(std::sqrt(unit(rng)) * 0.999, 2.0 * std::numbers::pi * unit(rng)); };
  out.spot_check = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx a(normal(rng), normal(rng));
    const cplx b(normal(rng), normal(rng));
    const cplx c = disk();
    const cplx d = disk();
    const double r = ratio_gaussian(QuadExp(a, c, alpha), QuadExp(b, d, alpha), p);
    out.spot_check = std::max(out.spot_check, r);
  }
  if (out.spot_check > out.value + tol) {
    throw std::logic_error("gaussian_family_sup: a full-parameter probe exceeds the reduced supremum");
  }
  return out;
}

}  // namespace fock
