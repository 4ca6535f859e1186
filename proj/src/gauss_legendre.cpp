#include "fock/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fock {

namespace {

// Nodes x_i in (0, 1) and weights of the n-point rule on [-1, 1], positive half only.
QuadratureRule reference_rule(int n) {
  QuadratureRule rule;
  const int m = (n + 1) / 2;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  auto legendre = [n](double x, double& dp) {
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    return p0;
  };
  for (int i = 0; i < m; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(x, dp);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const QuadratureRule& cached_reference_rule(int n) {
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, reference_rule(n)).first;
  return it->second;  // map nodes are stable
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  const QuadratureRule& ref = cached_reference_rule(n);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (b + a);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
    const double x = ref.nodes[i];
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * ref.weights[i];
    rule.weights[n - 1 - i] = half * ref.weights[i];
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int n) {
  if (breaks.size() < 2) throw std::invalid_argument("composite_gauss_legendre: need >= 2 breaks");
  const QuadratureRule ref = gauss_legendre(n);
  QuadratureRule rule;
  rule.nodes.reserve((breaks.size() - 1) * n);
  rule.weights.reserve((breaks.size() - 1) * n);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (!(b > a)) throw std::invalid_argument("composite_gauss_legendre: breaks not increasing");
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k < n; ++k) {
      rule.nodes.push_back(mid + half * ref.nodes[k]);
      rule.weights.push_back(half * ref.weights[k]);
    }
  }
  return rule;
}

}  // namespace fock
