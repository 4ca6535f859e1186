#pragma once

namespace fock {

/// Gaussian weight gamma^n_alpha on C^n: (alpha/pi)^n e^{-alpha |z|^2} dz.
/// The dilation alpha p / 2 used by the L^p norms is applied by the operations.
struct FockWeight {
  double alpha = 1.0;
  int n = 1;

  /// Throws DomainError unless alpha > 0 and n >= 1.
  FockWeight(double alpha = 1.0, int n = 1);
};

}  // namespace fock
