#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracdr/types.hpp"

namespace fracdr::oracle {

/// Caputo derivative of t^p: Gamma(p+1) / Gamma(p+1-alpha) t^{p-alpha}.
double exact_power(double p, FractionalOrder alpha, double t);

/// Caputo derivative of sin t.
double exact_sin(FractionalOrder alpha, double t);

/// Caputo derivative of t^{nu/2} J_nu(2 sqrt t): t^{(nu-alpha)/2} J_{nu-alpha}(2 sqrt t).
double exact_bessel(double nu, FractionalOrder alpha, double t);

/// Classical L1 product-integration scheme on the samples y_k = y(t_k):
///   D(t_i) = 1/Gamma(2-alpha) sum_{m=1}^{i} b_m (y_{i-m+1} - y_{i-m}) / h,
///   b_m = h^{1-alpha} (m^{1-alpha} - (m-1)^{1-alpha}).
/// Exact for linear y, O(h^{2-alpha}) in general, O(n^2) work.
std::vector<double> caputo_l1(std::span<const double> y, FractionalOrder alpha, const TimeGrid& grid);
std::vector<double> caputo_l1(const Signal& signal, FractionalOrder alpha, const TimeGrid& grid);

/// A built-in test function with its default order, horizon and closed-form derivative.
struct TestCase {
  std::string name;
  Signal signal;
  FractionalOrder alpha;
  double horizon;
  std::function<double(FractionalOrder, double)> exact;
};

/// example1: t^1.6 (alpha 0.4, T 3); example2: t^3 (0.6, 1); example3: sin t (0.5, 1);
/// example4: t^{3/2} J_3(2 sqrt t) (0.5, 1); constant: y = 1 (0.5, 1).
const std::vector<TestCase>& builtin_cases();

/// Throws std::invalid_argument for unknown names.
const TestCase& find_case(const std::string& name);

}  // namespace fracdr::oracle
