#include "fracdr/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "fracdr/error.hpp"

namespace fracdr {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("fractional order must lie strictly inside (0,1), got " + std::to_string(alpha));
  }
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::YA: return "YA";
    case Method::CDR: return "CDR";
    case Method::SDR: return "SDR";
    case Method::ISDR: return "ISDR";
  }
  return "?";
}

std::string_view to_string(Solver s) noexcept {
  return s == Solver::Euler ? "euler" : "trapezoid";
}

namespace {
std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}
}  // namespace

Method parse_method(std::string_view name) {
  const std::string n = lower(name);
  if (n == "ya") return Method::YA;
  if (n == "cdr") return Method::CDR;
  if (n == "sdr") return Method::SDR;
  if (n == "isdr") return Method::ISDR;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

Solver parse_solver(std::string_view name) {
  const std::string n = lower(name);
  if (n == "euler") return Solver::Euler;
  if (n == "trapezoid" || n == "trapezoidal") return Solver::Trapezoid;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

double quadrature_exponent(Method m, FractionalOrder alpha) noexcept {
  const double a = alpha.value();
  switch (m) {
    case Method::YA: return 2.0 * a - 1.0;
    case Method::CDR: return a - 1.0;
    case Method::SDR: return a;
    case Method::ISDR: return 2.0 * a - 1.0;
  }
  return a;
}

TimeGrid::TimeGrid(double horizon, std::size_t count) : horizon_(horizon), count_(count) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("time grid horizon must be positive and finite");
  }
  if (count < 2) {
    throw DomainError("time grid needs at least two points");
  }
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> t(count_);
  for (std::size_t k = 0; k < count_; ++k) t[k] = at(k);
  return t;
}

std::vector<double> difference_derivative(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n);
  if (n < 2) return d;
  d[0] = (y[1] - y[0]) / h;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    d[k] = (y[k + 1] - y[k - 1]) / (2.0 * h);
  }
  d[n - 1] = (y[n - 1] - y[n - 2]) / h;
  return d;
}

SampledSignal sample(const Signal& signal, const TimeGrid& grid) {
  if (!signal.y) {
    throw std::invalid_argument("signal has no y(t)");
  }
  SampledSignal s;
  const std::size_t n = grid.count();
  s.y.resize(n);
  for (std::size_t k = 0; k < n; ++k) s.y[k] = signal.y(grid.at(k));

  if (signal.derivative_mode == DerivativeMode::ForwardDifference) {
    s.y_prime = difference_derivative(s.y, grid.step());
    return s;
  }
  if (!signal.has_derivative()) {
    return s;
  }
  s.y_prime.resize(n);
  for (std::size_t k = 0; k < n; ++k) s.y_prime[k] = signal.y_prime(grid.at(k));
  return s;
}

}  // namespace fracdr
