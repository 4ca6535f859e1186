#include "fock/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fock/errors.hpp"
#include "fock/gauss_legendre.hpp"

namespace fock {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2 pi) / 2

// Below this the Lanczos sum is used; above, the Stirling series converges to
// full double precision with nine terms.
constexpr double kStirlingThreshold = 7.0;

void require_exponent(double p, const char* who) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw DomainError(std::string(who) + ": exponent must satisfy 1 < p < inf, got " +
                      std::to_string(p));
  }
}

void require_positive(double x, const char* who) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError(std::string(who) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// sum_{m>=1} B_{2m} / (2m (2m-1) x^{2m-1})
double stirling_series(double x) {
  static constexpr std::array<double, 9> kCoef = {
      1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,
      -1.0 / 1680.0,       1.0 / 1188.0,          -691.0 / 360360.0,
      1.0 / 156.0,         -3617.0 / 122400.0,    43867.0 / 244188.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (auto it = kCoef.rbegin(); it != kCoef.rend(); ++it) acc = acc * inv2 + *it;
  return acc * inv;
}

double log_gamma_lanczos(double x) {
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> kP = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  const double y = x - 1.0;
  double a = kP[0];
  for (int i = 1; i < 9; ++i) a += kP[i] / (y + i);
  const double t = y + g + 0.5;
  return kHalfLog2Pi + (y + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

ExponentPair::ExponentPair(double p) : p_(p) {
  require_exponent(p, "ExponentPair");
  p_conj_ = conjugate_exponent(p);
  c_p_ = fock::c_p(p);
}

double conjugate_exponent(double p) {
  require_exponent(p, "conjugate_exponent");
  return p / (p - 1.0);
}

double c_p(double p) {
  require_exponent(p, "c_p");
  if (p == 2.0) return 1.0;
  const double q = conjugate_exponent(p);
  // ln C_p = ln 2 - ln(p)/p - ln(q)/q, symmetric under p <-> q.
  const double a = std::log(p) / p;
  const double b = std::log(q) / q;
  return std::exp(std::numbers::ln2 - (a + b));
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x >= kStirlingThreshold) {
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_series(x);
  }
  if (x < 0.5) return log_gamma_lanczos(x + 1.0) - std::log(x);
  return log_gamma_lanczos(x);
}

double stirling_remainder(double x) {
  require_positive(x, "stirling_remainder");
  if (x >= kStirlingThreshold) return stirling_series(x);
  return log_gamma(x) - kHalfLog2Pi + 0.5 * std::log(x) - x * std::log(x) + x;
}

double stirling_remainder_quadrature(double x) {
  require_positive(x, "stirling_remainder_quadrature");
  // e^{-2 pi T} < 1e-18 for T = 7.
  constexpr double kCutoff = 7.0;
  std::vector<double> breaks{0.0, kCutoff};
  for (double t = 0.25; t < kCutoff; t += 0.25) breaks.push_back(t);
  // atan(t/x) has poles at t = +-ix; grade panels geometrically toward 0.
  for (double t = x; t > 1e-12 && t > x * 1e-6; t *= 0.5) {
    if (t < kCutoff) breaks.push_back(t);
  }
  for (double t = 2.0 * x; t < kCutoff; t *= 2.0) breaks.push_back(t);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               breaks.end());

  const QuadratureRule rule = composite_gauss_legendre(breaks, 20);
  const double two_pi = 2.0 * std::numbers::pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    double f;
    if (t < 1e-6) {
      // 2 atan(u)/(e^{2 pi t}-1) with u = t/x, expanded about t = 0
      const double u = t / x;
      f = 2.0 * u * (1.0 - u * u / 3.0) / (two_pi * t * (1.0 + std::numbers::pi * t));
    } else {
      f = 2.0 * std::atan(t / x) / std::expm1(two_pi * t);
    }
    sum += rule.weights[i] * f;
  }
  return sum;
}

double stirling_gap(const ExponentPair& p, long k) {
  if (k < 1) throw DomainError("stirling_gap: k must be >= 1, got " + std::to_string(k));
  if (p.is_self_dual()) return 0.0;
  const double kd = static_cast<double>(k);
  return stirling_remainder(kd) - stirling_remainder(kd * p.p() / 2.0) / p.p() -
         stirling_remainder(kd * p.p_conj() / 2.0) / p.p_conj();
}

}  // namespace fock
