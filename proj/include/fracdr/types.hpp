#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracdr {

/// Order of the Caputo derivative, strictly inside (0, 1).
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

enum class Method { YA, CDR, SDR, ISDR };
enum class Solver { Euler, Trapezoid };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(Solver s) noexcept;
/// Case-insensitive; throws std::invalid_argument on unknown names.
Method parse_method(std::string_view name);
Solver parse_solver(std::string_view name);

inline constexpr Method kAllMethods[] = {Method::YA, Method::CDR, Method::SDR, Method::ISDR};

/// Exponent gamma of the Gauss-Laguerre weight z^gamma e^{-z} a method integrates against.
double quadrature_exponent(Method m, FractionalOrder alpha) noexcept;

/// Uniform grid t_k = k T / (n - 1), k = 0..n-1.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t count);

  double horizon() const noexcept { return horizon_; }
  std::size_t count() const noexcept { return count_; }
  double step() const noexcept { return horizon_ / static_cast<double>(count_ - 1); }
  double at(std::size_t k) const noexcept {
    return horizon_ * static_cast<double>(k) / static_cast<double>(count_ - 1);
  }
  std::vector<double> points() const;

 private:
  double horizon_;
  std::size_t count_;
};

enum class DerivativeMode { Analytic, ForwardDifference };

/// A test function y together with (optionally) its derivative.
///
/// In ForwardDifference mode y' is never called: derivative samples come
/// from differences of y on the grid, with y'(0) ~ (y(h) - y(0)) / h.
struct Signal {
  std::function<double(double)> y;
  std::function<double(double)> y_prime;
  DerivativeMode derivative_mode = DerivativeMode::Analytic;

  bool has_derivative() const noexcept { return static_cast<bool>(y_prime); }
};

/// y sampled on the grid and the matching derivative samples.
struct SampledSignal {
  std::vector<double> y;
  std::vector<double> y_prime;
};

/// Samples y and y' on the grid according to the signal's derivative mode.
/// In Analytic mode without y', y_prime is left empty.
SampledSignal sample(const Signal& signal, const TimeGrid& grid);

/// Derivative samples from y values alone: forward difference at t_0,
/// central differences inside, backward difference at the last point.
std::vector<double> difference_derivative(const std::vector<double>& y, double h);

}  // namespace fracdr
