#include "fracdr/quadrature.hpp"

#include <cmath>
#include <string>

#include "fracdr/error.hpp"
#include "fracdr/specfun.hpp"

namespace fracdr {
namespace {

void check_rule_args(std::size_t order, double gamma) {
  if (order == 0) {
    throw DomainError("gauss_laguerre: order must be at least 1");
  }
  if (!(gamma > -1.0)) {
    throw DomainError("gauss_laguerre: exponent gamma must exceed -1, got " + std::to_string(gamma));
  }
}

// log of 1 / sum_k p_k(z)^2 e^{-z} over the orthonormal generalized Laguerre
// polynomials p_0..p_{n-1}; w e^{z} at a Gauss node z. The recurrence runs on
// rescaled values with the common factor e^{log_scale} kept apart, so neither
// e^{-z/2} nor p_k(z) is ever formed on its own.
double log_scaled_christoffel(double z, std::size_t n, double gamma, double log_mu0) {
  constexpr double kBig = 0x1p300;
  double log_scale = -0.5 * z - 0.5 * log_mu0;
  double prev = 0.0;
  double cur = 1.0;
  double sum = 1.0;
  double b_prev = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double a = 2.0 * static_cast<double>(j - 1) + gamma + 1.0;
    const double b = std::sqrt(static_cast<double>(j) * (static_cast<double>(j) + gamma));
    const double next = ((z - a) * cur - b_prev * prev) / b;
    prev = cur;
    cur = next;
    b_prev = b;
    sum += cur * cur;
    if (std::abs(cur) > kBig || sum > kBig) {
      const double k = 1.0 / std::sqrt(sum);
      prev *= k;
      cur *= k;
      sum = 1.0;
      log_scale -= std::log(k);
    }
  }
  return -std::log(sum) - 2.0 * log_scale;
}

}  // namespace

Tridiagonal jacobi_matrix(std::size_t order, double gamma) {
  check_rule_args(order, gamma);
  Tridiagonal m;
  m.diag.resize(order);
  m.offdiag.resize(order - 1);
  for (std::size_t k = 0; k < order; ++k) {
    m.diag[k] = 2.0 * static_cast<double>(k) + gamma + 1.0;
  }
  for (std::size_t k = 1; k < order; ++k) {
    m.offdiag[k - 1] = std::sqrt(static_cast<double>(k) * (static_cast<double>(k) + gamma));
  }
  return m;
}

QuadratureRule::QuadratureRule(std::size_t order, double gamma) : gamma_(gamma) {
  const Tridiagonal jm = jacobi_matrix(order, gamma);
  TridiagonalEigen eig = symmetric_tridiagonal_eigen(jm);
  nodes_ = std::move(eig.values);

  const double log_mu0 = std::log(specfun::gamma(gamma + 1.0));
  weights_.resize(order);
  scaled_weights_.resize(order);
  for (std::size_t i = 0; i < order; ++i) {
    const double log_sw = log_scaled_christoffel(nodes_[i], order, gamma, log_mu0);
    scaled_weights_[i] = std::exp(log_sw);
    weights_[i] = std::exp(log_sw - nodes_[i]);
  }
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double sum = 0.0;
  const auto z = rule.nodes();
  const auto w = rule.weights();
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double v = f(z[i]);
    if (!std::isfinite(v)) {
      throw EvaluationError("integrate: integrand is not finite at node " + std::to_string(z[i]));
    }
    sum += w[i] * v;
  }
  return sum;
}

double integrate_scaled(const QuadratureRule& rule, const std::function<double(double)>& g) {
  double sum = 0.0;
  const auto z = rule.nodes();
  const auto w = rule.scaled_weights();
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double v = g(z[i]);
    if (!std::isfinite(v)) {
      throw EvaluationError("integrate_scaled: integrand is not finite at node " + std::to_string(z[i]));
    }
    sum += w[i] * v;
  }
  return sum;
}

}  // namespace fracdr
