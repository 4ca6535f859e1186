#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "fock/gauss_legendre.hpp"
#include "fock/weight.hpp"

namespace fock {

using cplx = std::complex<double>;

/// k x k complex symmetric matrix (A = A^T, not Hermitian). Whether Re(A) is
/// positive definite is computed once at construction.
class ComplexSymMatrix {
 public:
  /// Throws DomainError if `a` is not square or not exactly symmetric.
  explicit ComplexSymMatrix(Eigen::MatrixXcd a);

  int dim() const { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return a_; }
  bool real_part_positive_definite() const { return re_pd_; }

 private:
  Eigen::MatrixXcd a_;
  bool re_pd_ = false;
};

/// Branch of (1/2) log det A continued from the real positive definite matrix
/// Re(A) along A(t) = (1-t) Re(A) + t A. det A(t) never vanishes on this path
/// when Re(A) is positive definite, so the argument can be tracked step by step.
cplx half_log_det_homotopy(const ComplexSymMatrix& a);

/// Same branch computed as (1/2) sum Log(lambda_i). Every eigenvalue of A has
/// positive real part when Re(A) is positive definite, so the principal Log of
/// each is continuous along the homotopy and the two routes must agree.
cplx half_log_det_eigen(const ComplexSymMatrix& a);

/// int_{R^k} exp(-(x, A x) + 2 (v, x)) dx = pi^{k/2} / sqrt(det A) * exp((v, A^{-1} v)).
/// (.,.) is the bilinear form; v may be complex (the formula continues
/// analytically in v). Throws NotIntegrable unless Re(A) is positive definite.
cplx gaussian_integral(const ComplexSymMatrix& a, const Eigen::VectorXcd& v);

/// Product rule on C in polar form, written in the normalized radius s = sqrt(beta) |z|
/// so that a single grid serves every Gaussian weight gamma_beta:
///
///   int g d gamma_beta  ~=  sum_{i,j} w_i * (1/n_theta) * g(s_i / sqrt(beta) * e^{i theta_j})
///
/// with sum_i w_i = int_0^S 2 s e^{-s^2} ds (the normalized radial density).
class PolarGrid {
 public:
  /// `growth` bounds the polynomial growth of the integrand: for |g(z)| <= C (1+|z|)^growth
  /// the cutoff S is chosen so the neglected relative tail mass is below 1e-17.
  /// `kinks` are points (in normalized coordinates sqrt(beta) z) where the integrand
  /// is not smooth, such as the zeros of f in |f|^p. The radial rule is split into
  /// panels at their moduli, each with a share of n_r proportional to its length,
  /// and rings passing near a kink use Gauss-Legendre panels in theta split at its
  /// argument instead of the uniform rule.
  PolarGrid(int n_r = 256, int n_theta = 256, double growth = 0.0, std::vector<cplx> kinks = {});

  struct AngularRule {
    std::vector<cplx> unit;       ///< e^{i theta_j}
    std::vector<double> weights;  ///< sum to 1
  };

  /// Requested radial node count; the rule holds radii().size() nodes.
  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  double growth() const { return growth_; }
  double cutoff() const { return cutoff_; }
  const std::vector<cplx>& kinks() const { return kinks_; }
  /// The special angular rule of ring i, or nullptr if it uses the uniform one.
  const AngularRule* ring_rule(std::size_t i) const {
    return ring_rule_[i] < 0 ? nullptr : &special_[ring_rule_[i]];
  }

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& radial_weights() const { return radial_weights_; }
  const std::vector<double>& angles() const { return angles_; }
  double angular_weight() const { return 1.0 / n_theta_; }

  /// Same cutoff, kinks and angular rule, twice the radial nodes.
  PolarGrid refined() const;

  /// Sum of all node weights: the gamma_beta mass captured by the grid (== 1 up to tail).
  double total_mass() const;

 private:
  int n_r_;
  int n_theta_;
  double growth_;
  double cutoff_;
  std::vector<cplx> kinks_;
  std::vector<int> ring_rule_;
  std::vector<AngularRule> special_;
  std::vector<double> radii_;
  std::vector<double> radial_weights_;
  std::vector<double> angles_;
};

/// Cutoff S with Q(growth/2 + 1, S^2) < tail (Q the regularized upper incomplete
/// gamma). Returns at least sqrt(-ln tail).
double polar_cutoff(double growth, double tail = 1e-17);

/// Regularized upper incomplete gamma Q(a, x).
double upper_incomplete_gamma_q(double a, double x);

using ComplexFn = std::function<cplx(cplx)>;

/// Optional self-check: when `refine_tol` is set, the integral is recomputed on
/// the radially refined grid and GridTooCoarse is thrown if the relative change
/// exceeds it.
struct QuadCheck {
  std::optional<double> refine_tol;
};

/// int_C |f|^p d gamma^1_{alpha p / 2}.
double weighted_lp_integral(const ComplexFn& f, double p, const FockWeight& w, const PolarGrid& grid,
                            QuadCheck check = {});

/// int_C f conj(g) d gamma^1_alpha (the undilated measure).
cplx weighted_pairing(const ComplexFn& f, const ComplexFn& g, const FockWeight& w,
                      const PolarGrid& grid, QuadCheck check = {});

/// int_C g d gamma^1_beta for a real integrand. Building block for the two above.
double gaussian_expectation(const std::function<double(cplx)>& g, double beta,
                            const PolarGrid& grid);

}  // namespace fock
