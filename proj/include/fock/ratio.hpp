#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string_view>

#include "fock/constants.hpp"
#include "fock/poly.hpp"
#include "fock/quadrature.hpp"
#include "fock/space.hpp"

// R_{p,alpha}(g, h) = |<g, h>_alpha| / (||g||_{p,alpha} ||h||_{p',alpha}).

namespace fock {

enum class RatioMethod { exact_monomial, stirling_form, gaussian_closed_form, quadrature };

std::string_view to_string(RatioMethod m);

struct GridInfo {
  int n_r;
  int n_theta;
  double cutoff;
};

struct RatioResult {
  double value;
  RatioMethod method;
  std::optional<GridInfo> diagnostics;
};

/// Pairing in closed form, norms by quadrature (n = 1). Throws ZeroFunction if f or h is 0.
RatioResult ratio_general(const HoloPoly& f, const HoloPoly& h, double p, const FockWeight& w,
                          const PolarGrid& grid = PolarGrid());

/// R(z^k, z^k) = (pp'/4)^{k/2} Gamma(k+1) / (Gamma(kp/2+1)^{1/p} Gamma(kp'/2+1)^{1/p'}),
/// evaluated in the log domain. Independent of alpha.
double ratio_monomial(long k, const ExponentPair& p);

/// sqrt(C_p) exp(stirling_gap(p, k)) for k >= 1; 1 for k = 0.
double ratio_monomial_stirling(long k, const ExponentPair& p);

/// prod_k R(z^{j_k}, z^{j_k}).
double ratio_monomial_tensor(const MultiIndex& j, const ExponentPair& p);

/// Closed form for g = exp(alpha a z + alpha c z^2/2), h = exp(alpha b z + alpha d z^2/2).
/// Throws DomainError if the alphas differ (QuadExp already rejects |c| >= 1).
double ratio_gaussian(const QuadExp& g, const QuadExp& h, const ExponentPair& p);

/// The exponent in the Gaussian ratio as a function of a = x + iy:
/// Re[(2 a conj(b) + a^2 conj(d) + conj(b)^2 c)/(1 - c conj(d))
///    - (|a|^2 + a^2 conj(c))/(1 - |c|^2) - (|b|^2 + conj(b)^2 d)/(1 - |d|^2)].
double gaussian_exponent(double x, double y, cplx b, cplx c, cplx d);

/// (df/dx, df/dy) of gaussian_exponent, in closed form.
Eigen::Vector2d gaussian_exponent_gradient(double x, double y, cplx b, cplx c, cplx d);

/// The unique maximizer x0 + i y0 = (conj(b)(d - c) + b(1 - c conj(d))) / (1 - |d|^2),
/// where the exponent is 0. Throws DomainError unless |c|, |d| < 1.
cplx gaussian_critical_point(cplx b, cplx c, cplx d);

/// Constant Hessian of gaussian_exponent, with k = d/(1 - conj(c) d) and s = 1 - |c|^2:
/// 2 [[Re(k - (1+c)/s), Im(k - c/s)], [Im(k - c/s), Re(-k - (1-c)/s)]]. Throws DomainError unless |c|, |d| < 1.
Eigen::Matrix2d gaussian_hessian(cplx c, cplx d);

/// With a = b = 0 and c = x, d = y in [0,1) the squared ratio is
/// (1-x^2)^{1/p} (1-y^2)^{1/p'} / (1 - xy). For fixed y its maximizing x is x_of_y(y),
/// and the maximum value is g_of_y(y), increasing from g(0) = 1 to g(1) = C_p.
struct GaussianReduction {
  std::function<double(double)> x_of_y;
  std::function<double(double)> g_of_y;
  double sup;                ///< g(1) = C_p, reached only as y -> 1
  bool not_attained = true;  ///< g is extended continuously to y = 1
};

GaussianReduction gaussian_family_reduction(const ExponentPair& p);

/// sqrt((1-x^2)^{1/p} (1-y^2)^{1/p'} / (1 - xy)), written in u = 1-x, v = 1-y so
/// that points close to (1,1) keep full relative precision.
double gaussian_reduced_objective(double u, double v, const ExponentPair& p);

struct GaussianFamilySup {
  double value;        ///< supremum estimate of R over the quadratic exponential family
  double x;            ///< |c| at the last point evaluated
  double y;            ///< |d| at the last point evaluated
  int steps;           ///< number of y levels visited
  double spot_check;   ///< largest closed-form ratio over the random (a,b,c,d) probes
  bool not_attained = true;
};

/// Maximizes the reduced objective for y_k = 1 - 2^{-k} (inner golden-section
/// search in x) until the increments fall below tol/4, then checks 20 random
/// full-parameter points against the result. Throws ConvergenceFailure if tol
/// cannot be reached or a probe beats the reduced value.
GaussianFamilySup gaussian_family_sup(const ExponentPair& p, double alpha, double tol,
                                      unsigned long long seed = 0);

}  // namespace fock
