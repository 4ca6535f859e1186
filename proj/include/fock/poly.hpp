#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace fock {

using cplx = std::complex<double>;

/// Multi-index (j_1, ..., j_n) of non-negative integers.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> components);
  MultiIndex(std::initializer_list<int> components);

  /// The 1-D index j.
  static MultiIndex scalar(int j) { return MultiIndex({j}); }
  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }

  int dim() const { return static_cast<int>(c_.size()); }
  int operator[](int k) const { return c_[k]; }
  const std::vector<int>& components() const { return c_; }

  /// |j| = sum j_k
  int order() const;
  /// ln(j!) = sum ln(j_k!)
  double log_factorial() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> c_;
};

/// Holomorphic polynomial on C^n stored as a sparse map multi-index -> Taylor coefficient.
/// Zero coefficients are never stored, so the zero polynomial has no terms.
class HoloPoly {
 public:
  using Terms = std::map<MultiIndex, cplx>;

  explicit HoloPoly(int n = 1);

  /// n = 1 polynomial sum_k coeffs[k] z^k.
  static HoloPoly from_coefficients(std::span<const cplx> coeffs);
  static HoloPoly monomial(const MultiIndex& j, cplx coeff = 1.0);
  static HoloPoly constant(int n, cplx value);

  int dim() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree |j| among stored terms; -1 for the zero polynomial.
  int degree() const;

  cplx coefficient(const MultiIndex& j) const;
  cplx coefficient(int j) const { return coefficient(MultiIndex::scalar(j)); }
  void set(const MultiIndex& j, cplx value);

  /// Dense coefficient vector of length degree+1 (n = 1 only).
  std::vector<cplx> dense() const;

  cplx operator()(std::span<const cplx> z) const;
  /// n = 1 evaluation.
  cplx operator()(cplx z) const;

  HoloPoly operator*(cplx s) const;
  HoloPoly operator+(const HoloPoly& other) const;

  bool operator==(const HoloPoly&) const = default;

 private:
  int n_;
  Terms terms_;
};

/// Horner evaluation of sum_k c[k] z^k.
inline cplx horner(std::span<const cplx> c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace fock
