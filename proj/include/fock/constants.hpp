#pragma once

namespace fock {

/// Hölder exponent p in (1, inf) together with its conjugate p' = p/(p-1)
/// and the duality constant C_p = 2 p^{-1/p} p'^{-1/p'}.
class ExponentPair {
 public:
  /// Throws DomainError unless 1 < p < inf.
  explicit ExponentPair(double p);

  double p() const { return p_; }
  double p_conj() const { return p_conj_; }
  double c_p() const { return c_p_; }

  /// The pair with the roles of p and p' exchanged.
  ExponentPair swapped() const { return ExponentPair(p_conj_); }

  bool is_self_dual() const { return p_ == 2.0; }

 private:
  double p_;
  double p_conj_;
  double c_p_;
};

double conjugate_exponent(double p);

/// C_p evaluated in the log domain. Exactly 1 at p = 2.
double c_p(double p);

/// ln Gamma(x) for real x > 0.
///
/// Lanczos approximation (g = 7, nine terms) below x = 7 and the asymptotic
/// Stirling series above it. Absolute error is a few ulp of max(1, |ln Gamma|)
/// on [1e-3, 1e4].
double log_gamma(double x);

/// Exact Stirling remainder S(x) = ln Gamma(x) - (x - 1/2) ln x + x - ln(2 pi)/2.
///
/// Uses the asymptotic series directly for x >= 7 (no cancellation) and the
/// log-gamma identity below. This is the fast path consumers should use.
double stirling_remainder(double x);

/// S(x) as the Binet integral int_0^inf 2 atan(t/x) / (e^{2 pi t} - 1) dt,
/// evaluated by composite Gauss-Legendre panels graded toward t = 0.
/// Independent of log_gamma; used to validate stirling_remainder.
double stirling_remainder_quadrature(double x);

/// S(k) - S(kp/2)/p - S(kp'/2)/p'. Negative for p != 2, zero at p = 2.
double stirling_gap(const ExponentPair& p, long k);

}  // namespace fock
