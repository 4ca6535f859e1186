#include "fock/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fock/constants.hpp"
#include "fock/errors.hpp"

namespace fock {

MultiIndex::MultiIndex(std::vector<int> components) : c_(std::move(components)) {
  if (c_.empty()) throw DomainError("MultiIndex: dimension must be >= 1");
  for (int v : c_) {
    if (v < 0) throw DomainError("MultiIndex: components must be non-negative");
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> components)
    : MultiIndex(std::vector<int>(components)) {}

int MultiIndex::order() const { return std::accumulate(c_.begin(), c_.end(), 0); }

double MultiIndex::log_factorial() const {
  double acc = 0.0;
  for (int v : c_) acc += log_gamma(v + 1.0);
  return acc;
}

HoloPoly::HoloPoly(int n) : n_(n) {
  if (n < 1) throw DomainError("HoloPoly: dimension must be >= 1");
}

HoloPoly HoloPoly::from_coefficients(std::span<const cplx> coeffs) {
  HoloPoly f(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) f.set(MultiIndex::scalar(static_cast<int>(k)), coeffs[k]);
  return f;
}

HoloPoly HoloPoly::monomial(const MultiIndex& j, cplx coeff) {
  HoloPoly f(j.dim());
  f.set(j, coeff);
  return f;
}

HoloPoly HoloPoly::constant(int n, cplx value) { return monomial(MultiIndex::zero(n), value); }

int HoloPoly::degree() const {
  int d = -1;
  for (const auto& [j, c] : terms_) d = std::max(d, j.order());
  return d;
}

cplx HoloPoly::coefficient(const MultiIndex& j) const {
  if (j.dim() != n_) throw DimensionMismatch("HoloPoly::coefficient: index dimension mismatch");
  auto it = terms_.find(j);
  return it == terms_.end() ? cplx{} : it->second;
}

void HoloPoly::set(const MultiIndex& j, cplx value) {
  if (j.dim() != n_) {
    throw DimensionMismatch("HoloPoly::set: index of dimension " + std::to_string(j.dim()) +
                            " in a polynomial of dimension " + std::to_string(n_));
  }
  if (value == cplx{}) {
    terms_.erase(j);
  } else {
    terms_[j] = value;
  }
}

std::vector<cplx> HoloPoly::dense() const {
  if (n_ != 1) throw DimensionMismatch("HoloPoly::dense: only defined for n = 1");
  std::vector<cplx> c(std::max(degree() + 1, 0));
  for (const auto& [j, v] : terms_) c[j[0]] = v;
  return c;
}

cplx HoloPoly::operator()(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) != n_) throw DimensionMismatch("HoloPoly: point dimension mismatch");
  cplx acc = 0.0;
  for (const auto& [j, c] : terms_) {
    cplx m = c;
    for (int k = 0; k < n_; ++k) {
      if (j[k] != 0) m *= std::pow(z[k], j[k]);
    }
    acc += m;
  }
  return acc;
}

cplx HoloPoly::operator()(cplx z) const {
  if (n_ != 1) throw DimensionMismatch("HoloPoly: scalar evaluation requires n = 1");
  const std::vector<cplx> c = dense();
  return horner(c, z);
}

HoloPoly HoloPoly::operator*(cplx s) const {
  HoloPoly out(n_);
  for (const auto& [j, c] : terms_) out.set(j, c * s);
  return out;
}

HoloPoly HoloPoly::operator+(const HoloPoly& other) const {
  if (other.n_ != n_) throw DimensionMismatch("HoloPoly::operator+: dimension mismatch");
  HoloPoly out = *this;
  for (const auto& [j, c] : other.terms_) out.set(j, out.coefficient(j) + c);
  return out;
}

}  // namespace fock
