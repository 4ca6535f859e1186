#pragma once

#include <vector>

namespace fock {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b]. Nodes ascending.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Composite rule: an n-point Gauss-Legendre rule on every panel
/// [breaks[i], breaks[i+1]]. `breaks` must be strictly increasing.
QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int n);

}  // namespace fock
