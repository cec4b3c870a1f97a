#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracdr {

/// Diagonal and off-diagonal of a symmetric tridiagonal matrix.
/// offdiag[k] couples rows k and k+1, so offdiag.size() == diag.size() - 1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;
};

/// Eigenvalues (ascending) and the first component of each unit eigenvector.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> first_components;
};

/// Implicit-shift QL on a symmetric tridiagonal matrix, accumulating only
/// the first row of the eigenvector matrix. Throws ConvergenceError when an
/// eigenvalue needs more than 30 sweeps.
TridiagonalEigen symmetric_tridiagonal_eigen(const Tridiagonal& matrix);

/// Jacobi matrix of the monic generalized Laguerre recurrence:
/// diag[k] = 2k + gamma + 1, offdiag[k-1] = sqrt(k (k + gamma)).
Tridiagonal jacobi_matrix(std::size_t order, double gamma);

/// N-point Gauss rule for the weight z^gamma e^{-z} on (0, inf).
///
/// Besides the classical weights, the rule carries scaled_weights = w_i e^{z_i},
/// the coefficients that turn a plain integrand sample g(z_i) into an
/// approximation of the integral of z^gamma g(z). They are produced directly
/// from an e^{-z/2}-scaled orthonormal recurrence, never by forming e^{z_i}, so
/// they stay finite for large orders where w_i underflows.
class QuadratureRule {
 public:
  QuadratureRule(std::size_t order, double gamma);

  double gamma() const noexcept { return gamma_; }
  std::size_t order() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> scaled_weights() const noexcept { return scaled_weights_; }

 private:
  double gamma_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> scaled_weights_;
};

inline QuadratureRule gauss_laguerre(std::size_t order, double gamma) {
  return QuadratureRule(order, gamma);
}

/// sum_i w_i f(z_i), an approximation of the integral of z^gamma e^{-z} f(z).
/// Throws EvaluationError if f returns a non-finite value.
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

/// sum_i w_i e^{z_i} g(z_i), an approximation of the integral of z^gamma g(z).
double integrate_scaled(const QuadratureRule& rule, const std::function<double(double)>& g);

}  // namespace fracdr
