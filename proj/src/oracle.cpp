#include "fracdr/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "fracdr/error.hpp"
#include "fracdr/simd/kernels.hpp"
#include "fracdr/specfun.hpp"

namespace fracdr::oracle {

double exact_power(double p, FractionalOrder alpha, double t) {
  if (!(p > 0.0)) throw DomainError("exact_power: exponent must be positive");
  if (!(t >= 0.0)) throw DomainError("exact_power: t must be non-negative");
  const double a = alpha.value();
  if (t == 0.0) return 0.0;
  return specfun::gamma(p + 1.0) / specfun::gamma(p + 1.0 - a) * std::pow(t, p - a);
}

double exact_sin(FractionalOrder alpha, double t) {
  return specfun::caputo_sin_series(alpha.value(), t, 1e-15);
}

double exact_bessel(double nu, FractionalOrder alpha, double t) {
  const double order = nu - alpha.value();
  if (!(order > -1.0)) throw DomainError("exact_bessel: nu - alpha must exceed -1");
  if (!(t >= 0.0)) throw DomainError("exact_bessel: t must be non-negative");
  if (t == 0.0) return 0.0;
  return std::pow(t, 0.5 * order) * specfun::bessel_j(order, 2.0 * std::sqrt(t));
}

std::vector<double> caputo_l1(std::span<const double> y, FractionalOrder alpha, const TimeGrid& grid) {
  const std::size_t n = grid.count();
  if (y.size() != n) {
    throw std::invalid_argument("caputo_l1: sample count does not match the grid");
  }
  const double h = grid.step();
  const double beta = 1.0 - alpha.value();
  const double scale = std::pow(h, beta) / specfun::gamma(2.0 - alpha.value());

  // b[m] for m = 1..n-1, folded with the 1/Gamma(2-alpha) factor.
  // m^beta - (m-1)^beta = -m^beta expm1(beta log1p(-1/m)) avoids cancellation.
  std::vector<double> b(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    const double md = static_cast<double>(m);
    const double diff = m == 1 ? 1.0 : -std::pow(md, beta) * std::expm1(beta * std::log1p(-1.0 / md));
    b[m] = scale * diff;
  }
  // Reversed difference quotients so each output is one contiguous dot product.
  std::vector<double> rev(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    rev[n - 2 - j] = (y[j + 1] - y[j]) / h;
  }

  const auto& k = simd::active_kernels();
  std::vector<double> out(n, 0.0);
  const std::span<const double> bs(b);
  const std::span<const double> rs(rev);
  for (std::size_t i = 1; i < n; ++i) {
    out[i] = k.dot(bs.subspan(1, i), rs.subspan(n - 1 - i, i));
  }
  return out;
}

std::vector<double> caputo_l1(const Signal& signal, FractionalOrder alpha, const TimeGrid& grid) {
  std::vector<double> y(grid.count());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = signal.y(grid.at(k));
  return caputo_l1(y, alpha, grid);
}

namespace {

std::vector<TestCase> make_cases() {
  std::vector<TestCase> cases;
  cases.push_back({"example1",
                   Signal{[](double t) { return std::pow(t, 1.6); }, [](double t) { return 1.6 * std::pow(t, 0.6); }},
                   FractionalOrder(0.4), 3.0,
                   [](FractionalOrder a, double t) { return exact_power(1.6, a, t); }});
  cases.push_back({"example2", Signal{[](double t) { return t * t * t; }, [](double t) { return 3.0 * t * t; }},
                   FractionalOrder(0.6), 1.0,
                   [](FractionalOrder a, double t) { return exact_power(3.0, a, t); }});
  cases.push_back({"example3", Signal{[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); }},
                   FractionalOrder(0.5), 1.0, [](FractionalOrder a, double t) { return exact_sin(a, t); }});
  // d/dt t^{nu/2} J_nu(2 sqrt t) = t^{(nu-1)/2} J_{nu-1}(2 sqrt t)
  cases.push_back({"example4",
                   Signal{[](double t) { return std::pow(t, 1.5) * specfun::bessel_j(3.0, 2.0 * std::sqrt(t)); },
                          [](double t) { return t * specfun::bessel_j(2.0, 2.0 * std::sqrt(t)); }},
                   FractionalOrder(0.5), 1.0, [](FractionalOrder a, double t) { return exact_bessel(3.0, a, t); }});
  cases.push_back({"constant", Signal{[](double) { return 1.0; }, [](double) { return 0.0; }}, FractionalOrder(0.5),
                   1.0, [](FractionalOrder, double) { return 0.0; }});
  return cases;
}

}  // namespace

const std::vector<TestCase>& builtin_cases() {
  static const std::vector<TestCase> cases = make_cases();
  return cases;
}

const TestCase& find_case(const std::string& name) {
  for (const auto& c : builtin_cases()) {
    if (c.name == name) return c;
  }
  throw std::invalid_argument("unknown case '" + name + "' (expected example1..example4 or constant)");
}

}  // namespace fracdr::oracle
