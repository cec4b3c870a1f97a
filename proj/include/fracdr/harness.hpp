#pragma once

// Experiment harness behind the `fracdr` command line tool: pointwise error
// tables, E_inf(N) sweeps with log-log slope fits, method comparisons and
// quadrature-rule dumps. Every command writes deterministic CSV next to a
// gnuplot script and a `.meta.json` sidecar that holds the non-deterministic
// bits (timestamp, kernel set).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdr/types.hpp"

namespace fracdr::harness {

struct RunConfig {
  std::vector<Method> methods{Method::CDR};
  Solver solver = Solver::Euler;
  std::optional<double> alpha;           // defaults to the case's order
  std::size_t order = 50;                // N for single runs
  std::vector<std::size_t> sweep{10, 20, 40, 80, 160};
  std::size_t count = 10000;             // n grid points
  std::optional<double> horizon;         // defaults to the case's T
  std::string case_name = "example2";
  std::string input_path;                // two-column t,y sample file
  std::string output_prefix;             // empty: no files written
  bool fully_implicit = false;
  bool warn_stability = true;
  DerivativeMode derivative_mode = DerivativeMode::Analytic;

  /// Throws std::invalid_argument on a non-increasing sweep, n < 2, or alpha outside (0,1).
  void validate() const;
};

/// Grid, order, samples and reference values a run is evaluated against.
struct Problem {
  std::string label;
  TimeGrid grid;
  FractionalOrder alpha;
  SampledSignal samples;
  std::vector<double> exact;
};

Problem resolve_problem(const RunConfig& config);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  bool excluded_first = false;
  std::size_t points_used = 0;
};

/// Least squares on (log N, log E). The smallest N is dropped when its
/// residual against the fit of the remaining points exceeds twice that fit's
/// residual standard error (needs at least four points).
SlopeFit fit_slope(const std::vector<std::size_t>& orders, const std::vector<double>& errors);

/// Exponent of the leading quadrature error term: CDR a-2, SDR a-1, YA and ISDR 2a-2.
double theoretical_rate(Method method, FractionalOrder alpha) noexcept;

/// Warning text when h (4N + 2 gamma + 6)^2 >= 1, else nullopt.
std::optional<std::string> stability_warning(Method method, FractionalOrder alpha, std::size_t order, double h);

struct ErrorReport {
  Method method = Method::CDR;
  std::vector<double> t;
  std::vector<double> approx;
  std::vector<double> exact;
  std::vector<double> abs_err;
  std::vector<std::optional<double>> rel_err;  // empty where |exact| < 1e-14
  double e_inf = 0.0;

  std::vector<std::size_t> orders;   // sweep abscissae
  std::vector<double> sweep_errors;  // E_inf per order
  std::optional<SlopeFit> fit;
  std::optional<double> expected_slope;
  std::vector<std::string> warnings;
};

struct CompareReport {
  std::vector<std::size_t> orders;
  std::vector<ErrorReport> per_method;  // YA, CDR, SDR, ISDR
};

/// Pointwise run of config.methods.front() at N = config.order.
/// Writes <prefix>_pointwise.csv (t,approx,exact,abs_err,rel_err).
ErrorReport cmd_deriv(const RunConfig& config);

/// E_inf over config.sweep for config.methods.front(); writes <prefix>_sweep.csv (N,E_inf).
ErrorReport cmd_convergence(const RunConfig& config);

/// Sweeps all four methods; writes <prefix>_compare.csv (N,E_YA,E_CDR,E_SDR,E_ISDR).
CompareReport cmd_compare(const RunConfig& config);

/// Dumps a rule as CSV (index,node,weight,scaled_weight).
void cmd_nodes(std::size_t order, double gamma, std::ostream& out);

/// Parses the CSV produced by cmd_convergence back into (orders, errors).
std::pair<std::vector<std::size_t>, std::vector<double>> read_sweep_csv(const std::string& path);

struct Samples {
  std::vector<double> t;
  std::vector<double> y;
};

/// Reads a `t,y` file. t must start at 0, increase uniformly (1e-12 relative)
/// and hold at least two rows; throws std::runtime_error otherwise.
Samples read_samples_csv(const std::string& path);
void write_samples_csv(const std::string& path, const std::vector<double>& t, const std::vector<double>& y);

/// Shortest round-trippable decimal form used in every CSV.
std::string format_number(double v);

}  // namespace fracdr::harness
