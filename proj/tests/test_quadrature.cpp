#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fracdr/error.hpp"
#include "fracdr/quadrature.hpp"
#include "fracdr/specfun.hpp"

using fracdr::QuadratureRule;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Number of eigenvalues below x, from the Sturm sequence of the tridiagonal matrix.
std::size_t count_below(const fracdr::Tridiagonal& m, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < m.diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : m.offdiag[i - 1] * m.offdiag[i - 1];
    q = m.diag[i] - x - (i == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(m.diag[i]) + 1.0);
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> bisection_eigenvalues(const fracdr::Tridiagonal& m) {
  double hi = 0.0;
  for (std::size_t i = 0; i < m.diag.size(); ++i) {
    double r = std::abs(m.diag[i]);
    if (i > 0) r += std::abs(m.offdiag[i - 1]);
    if (i + 1 < m.diag.size()) r += std::abs(m.offdiag[i]);
    hi = std::max(hi, r);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < m.diag.size(); ++k) {
    double a = -hi;
    double b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (count_below(m, mid) > k) b = mid; else a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace

TEST_CASE("jacobi_matrix entries") {
  const auto m = fracdr::jacobi_matrix(4, 0.5);
  REQUIRE(m.diag.size() == 4);
  REQUIRE(m.offdiag.size() == 3);
  CHECK(m.diag[0] == 1.5);
  CHECK(m.diag[3] == 7.5);
  CHECK(m.offdiag[0] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  CHECK(m.offdiag[2] == doctest::Approx(std::sqrt(3.0 * 3.5)).epsilon(1e-15));
  CHECK_THROWS_AS(fracdr::jacobi_matrix(0, 0.0), fracdr::DomainError);
  CHECK_THROWS_AS(fracdr::jacobi_matrix(3, -1.0), fracdr::DomainError);
}

TEST_CASE("QL eigenvalues agree with Sturm bisection") {
  for (double g : {-0.6, -0.4, 0.0, 0.5, 0.2}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto m = fracdr::jacobi_matrix(n, g);
      const auto eig = fracdr::symmetric_tridiagonal_eigen(m);
      const auto ref = bisection_eigenvalues(m);
      for (std::size_t k = 0; k < n; ++k) CHECK(eig.values[k] == doctest::Approx(ref[k]).epsilon(1e-13));
    }
  }
}

TEST_CASE("QL on a general symmetric tridiagonal matrix") {
  const fracdr::Tridiagonal m{{4.0, -1.0, 2.5, 0.0, 3.0}, {1.0, 0.5, -2.0, 0.25}};
  const auto eig = fracdr::symmetric_tridiagonal_eigen(m);
  const auto ref = bisection_eigenvalues(m);
  CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
  double norm = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(eig.values[k] == doctest::Approx(ref[k]).epsilon(1e-13));
    norm += eig.first_components[k] * eig.first_components[k];
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("one-point rule") {
  const QuadratureRule r(1, 0.0);
  CHECK(r.nodes()[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.weights()[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.scaled_weights()[0] == doctest::Approx(std::numbers::e).epsilon(1e-15));
}

TEST_CASE("Christoffel weights match eigenvector weights for small orders") {
  for (double g : {-0.6, 0.0, 0.5}) {
    for (std::size_t n : {2u, 5u, 10u}) {
      const QuadratureRule r(n, g);
      const auto eig = fracdr::symmetric_tridiagonal_eigen(fracdr::jacobi_matrix(n, g));
      const double mu0 = fracdr::specfun::gamma(g + 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double w = mu0 * eig.first_components[i] * eig.first_components[i];
        CHECK(rel(r.weights()[i], w) < 1e-10);
      }
    }
  }
}

TEST_CASE("zeroth moment and monomial exactness") {
  const QuadratureRule r5(5, -0.5);
  double sum = 0.0;
  for (double w : r5.weights()) sum += w;
  CHECK(std::abs(sum - std::sqrt(std::numbers::pi)) < 1e-12);

  for (double g : {-0.6, 0.2, 0.5}) {
    const QuadratureRule r(12, g);
    for (int j = 0; j < 24; ++j) {
      const double q = fracdr::integrate(r, [j](double z) { return std::pow(z, j); });
      CHECK(rel(q, fracdr::specfun::gamma(g + j + 1.0)) < 1e-11);
    }
  }
}

TEST_CASE("structural invariants") {
  for (double g : {-0.9, -0.2, 0.2, 0.9}) {
    for (std::size_t n : {3u, 20u, 80u}) {
      const QuadratureRule r(n, g);
      CHECK(r.order() == n);
      CHECK(r.nodes()[0] > 0.0);
      for (std::size_t i = 1; i < n; ++i) CHECK(r.nodes()[i] > r.nodes()[i - 1]);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(r.weights()[i] >= 0.0);
        CHECK(r.scaled_weights()[i] > 0.0);
      }
      CHECK(r.nodes()[n - 1] < 4.0 * n + 2.0 * g + 6.0);
    }
  }
}

TEST_CASE("scaled weights stay finite where plain weights underflow") {
  const QuadratureRule r(400, 0.2);
  CHECK(r.weights()[399] == 0.0);
  for (double s : r.scaled_weights()) CHECK(std::isfinite(s));
  // integral of z^g e^{-2z} = Gamma(g+1) / 2^{g+1}
  const double q = fracdr::integrate_scaled(r, [](double z) { return std::exp(-2.0 * z); });
  CHECK(rel(q, fracdr::specfun::gamma(1.2) / std::pow(2.0, 1.2)) < 1e-10);
}

TEST_CASE("integrate_scaled of a rational kernel converges") {
  // integral_0^inf z^{-0.5} / (1 + z) dz = pi
  double prev = 1.0;
  for (std::size_t n : {20u, 80u, 320u}) {
    const QuadratureRule r(n, -0.5);
    const double err = std::abs(fracdr::integrate_scaled(r, [](double z) { return 1.0 / (1.0 + z); }) - std::numbers::pi);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.1);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(QuadratureRule(0, 0.0), fracdr::DomainError);
  CHECK_THROWS_AS(QuadratureRule(4, -1.2), fracdr::DomainError);
  const QuadratureRule r(4, 0.0);
  CHECK_THROWS_AS(fracdr::integrate(r, [](double) { return std::nan(""); }), fracdr::EvaluationError);
}
