#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fock/poly.hpp"
#include "fock/quadrature.hpp"
#include "fock/weight.hpp"

// The dilated holomorphic L^p space H^n_{p,alpha}: norms taken against
// gamma^n_{alpha p/2}, pairings against the undilated gamma^n_alpha.

namespace fock {

/// z -> exp(alpha a z + (alpha/2) c z^2) on C, |c| < 1.
class QuadExp {
 public:
  /// Throws NotIntegrable if |c| >= 1 (the function then lies in no H_{p,alpha}).
  QuadExp(cplx a, cplx c, double alpha = 1.0);

  cplx a() const { return a_; }
  cplx c() const { return c_; }
  double alpha() const { return alpha_; }

  cplx operator()(cplx z) const { return std::exp(alpha_ * a_ * z + 0.5 * alpha_ * c_ * z * z); }

 private:
  cplx a_;
  cplx c_;
  double alpha_;
};

/// psi_{j,alpha}(z) = sqrt(alpha^{|j|} / j!) z^j, orthonormal in H_{2,alpha}.
struct NormalizedMonomial {
  MultiIndex index;
  double alpha;

  double coefficient() const;
  HoloPoly to_poly() const { return HoloPoly::monomial(index, coefficient()); }
};

/// ||z^j||_{p,alpha} = prod_k [(2/(alpha p))^{j_k p/2} Gamma(j_k p/2 + 1)]^{1/p}.
double monomial_norm(const MultiIndex& j, double p, const FockWeight& w);
double log_monomial_norm(const MultiIndex& j, double p, const FockWeight& w);

/// `grid` itself if its cutoff already covers integrands growing like |z|^growth,
/// otherwise the same node counts with the larger cutoff.
PolarGrid grid_for_growth(const PolarGrid& grid, double growth);

/// Roots of an n = 1 polynomial (eigenvalues of the companion matrix), with multiplicity.
std::vector<cplx> poly_roots(const HoloPoly& f);

/// `grid` adapted to |f|^p: cutoff widened for growth deg(f) p, and every nonzero
/// root registered as a kink when p is not an even integer.
PolarGrid grid_for_poly(const PolarGrid& grid, const HoloPoly& f, double p, double alpha);

/// ||f||_{p,alpha} by polar quadrature (n = 1) on grid_for_poly(grid, f, p, alpha).
double poly_norm(const HoloPoly& f, double p, const FockWeight& w, const PolarGrid& grid,
                 QuadCheck check = {});

/// ||f||_{2,alpha} from the coefficients: (sum |a_j|^2 j! / alpha^{|j|})^{1/2}. Any n.
double poly_norm_l2(const HoloPoly& f, const FockWeight& w);

/// <f, g>_alpha = sum_j a_j conj(b_j) j! / alpha^{|j|}, exact via monomial orthogonality.
cplx poly_pairing(const HoloPoly& f, const HoloPoly& g, const FockWeight& w);

/// Reproducing kernel h_z(w) = exp(alpha <w, z>) together with its norm, which
/// is e^{(alpha/2)|z|^2} in every H_{p,alpha}.
class ReproducingKernel {
 public:
  ReproducingKernel(std::vector<cplx> z, const FockWeight& w);

  const std::vector<cplx>& point() const { return z_; }
  const FockWeight& weight() const { return w_; }

  cplx operator()(std::span<const cplx> x) const;
  cplx operator()(cplx x) const;
  double norm() const;

  /// Taylor partial sum of total degree <= degree.
  HoloPoly taylor(int degree) const;

  /// Smallest degree whose Taylor remainder is below `tol` times the norm of
  /// the kernel in H_{p,alpha}, from the coefficient tail bound
  /// sum_{k > d} (alpha |z|)^k ||z^k||_{p,alpha} / k!.
  int taylor_degree_for(double tol, double p) const;

 private:
  std::vector<cplx> z_;
  FockWeight w_;
};

ReproducingKernel kernel_eval(std::vector<cplx> z, const FockWeight& w);

struct PointwiseBound {
  double lhs;  ///< |f(z)|
  double rhs;  ///< e^{(alpha/2)|z|^2} ||f||_{p,alpha}
  bool holds(double rel_tol = 0.0) const { return lhs <= rhs * (1.0 + rel_tol); }
  double ratio() const { return lhs / rhs; }
};

PointwiseBound pointwise_bound_check(const HoloPoly& f, cplx z, double p, const FockWeight& w,
                                     const PolarGrid& grid);

/// Pointwise map h -> |h|^{p-2} h e^{-alpha (p/2 - 1)|z|^2}. Accepts any
/// function, holomorphic or not, so it can be iterated.
ComplexFn g_operator_apply(ComplexFn h, double p, double alpha);

/// G_{p,alpha}(h) as an evaluable (non-holomorphic) function plus its exact norm.
struct GOperatorImage {
  ComplexFn eval;
  double source_norm;  ///< ||h||_{p,alpha}
  double norm;         ///< ||G(h)||_{p',alpha} = (p'/p)^{n/p'} ||h||_{p,alpha}^{p/p'}
};

/// Throws ZeroFunction for h = 0.
GOperatorImage g_operator_eval(const HoloPoly& h, double p, const FockWeight& w,
                               const PolarGrid& grid);

/// lambda with P G_{p,alpha}(psi_j) = lambda psi_j:
/// (2/p)^{|j|p/2 + n} prod_k Gamma(j_k p/2 + 1) / (sqrt(j!))^p.
double projection_eigenvalue(const MultiIndex& j, double p, const FockWeight& w);

/// Sharp bound on |a_j| / ||f||_{p,alpha} for n = 1: (alpha p/2)^{j/2} / Gamma(jp/2 + 1)^{1/p}.
double taylor_coeff_bound(int j, double p, const FockWeight& w);

/// <f, psi_j>_alpha psi_j, i.e. the a_j z^j term of f.
HoloPoly monomial_projection(const HoloPoly& f, const MultiIndex& j, const FockWeight& w);

/// ||exp(alpha a z + alpha c z^2 / 2)||_{p,alpha}
///   = (1 - |c|^2)^{-1/(2p)} exp((alpha/2)(|a|^2 + Re(conj(c) a^2)) / (1 - |c|^2)).
double quadexp_norm(const QuadExp& g, double p, const FockWeight& w);

/// The Gaussian-integral data for ||g||_p^p:
///   ||g||^p = (alpha p / 2 pi) * int_{R^2} exp(-(x, M x) + 2 (u, x)) dx
/// with M = (alpha p/2) [[1 - Re c, Im c], [Im c, 1 + Re c]] and u = (alpha p/2)(Re a, -Im a).
/// Takes raw parameters so that |c| >= 1 can be probed.
struct GaussianForm {
  ComplexSymMatrix matrix;
  Eigen::VectorXcd vector;
  double prefactor;
};
GaussianForm quadexp_norm_form(cplx a, cplx c, double p, double alpha);

/// The Gaussian-integral data for <g, h>_alpha with g = (a, c), h = (b, d):
/// matrix (alpha/2) B, vector (alpha/2) w, prefactor alpha/pi.
GaussianForm quadexp_pairing_form(const QuadExp& g, const QuadExp& h);

/// <g, h>_alpha for quadratic exponentials by the closed Gaussian integral.
cplx quadexp_pairing(const QuadExp& g, const QuadExp& h);

}  // namespace fock
