#include "fracdr/harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "fracdr/diffusive.hpp"
#include "fracdr/oracle.hpp"
#include "fracdr/quadrature.hpp"
#include "fracdr/simd/kernels.hpp"
#include "json.hpp"

namespace fracdr::harness {

using nlohmann::json;

namespace {

constexpr double kRelErrFloor = 1e-14;
constexpr double kUniformTolerance = 1e-12;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string method_list(const std::vector<Method>& methods) {
  std::string s;
  for (const Method m : methods) {
    if (!s.empty()) s += ",";
    s += to_string(m);
  }
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json config_echo(const RunConfig& c, const Problem& p) {
  json j;
  j["methods"] = method_list(c.methods);
  j["solver"] = std::string(to_string(c.solver));
  j["alpha"] = p.alpha.value();
  j["N"] = c.order;
  j["sweep"] = c.sweep;
  j["n"] = p.grid.count();
  j["T"] = p.grid.horizon();
  j["case"] = c.case_name;
  j["input"] = c.input_path;
  j["fully_implicit"] = c.fully_implicit;
  j["derivative_mode"] = c.derivative_mode == DerivativeMode::Analytic ? "analytic" : "forward_difference";
  return j;
}

json fit_json(const SlopeFit& f) {
  return json{{"slope", f.slope},
              {"intercept", f.intercept},
              {"slope_stderr", f.slope_stderr},
              {"excluded_first", f.excluded_first},
              {"points_used", f.points_used}};
}

void write_meta(const std::string& path, json body) {
  body["timestamp"] = utc_timestamp();
  body["kernels"] = std::string(simd::to_string(simd::active_kernels().isa));
  body["version"] = "1.0.0";
  body["compiler"] = __VERSION__;
  auto out = open_output(path);
  out << body.dump(2) << "\n";
}

struct LineFit {
  double slope;
  double intercept;
  double resid_stderr;
  double sxx;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ssr += r * r;
  }
  const double dof = m > 2 ? static_cast<double>(m - 2) : 1.0;
  return {slope, intercept, std::sqrt(ssr / dof), sxx};
}

std::vector<double> reference_on_grid(const oracle::TestCase& tc, FractionalOrder alpha, const TimeGrid& grid) {
  std::vector<double> exact(grid.count());
  for (std::size_t k = 0; k < exact.size(); ++k) exact[k] = tc.exact(alpha, grid.at(k));
  return exact;
}

void write_plot_script(const std::string& path, const std::string& csv, const std::string& body) {
  auto out = open_output(path);
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set grid\n"
      << "# data: " << csv << "\n"
      << body;
}

std::string basename_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void RunConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  if (count < 2) throw std::invalid_argument("n must be at least 2");
  if (order < 1) throw std::invalid_argument("N must be at least 1");
  if (alpha && !(*alpha > 0.0 && *alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (horizon && !(*horizon > 0.0)) throw std::invalid_argument("T must be positive");
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (sweep[i] <= sweep[i - 1]) throw std::invalid_argument("sweep values must be strictly increasing");
  }
  if (!sweep.empty() && sweep.front() < 1) throw std::invalid_argument("sweep values must be positive");
}

Problem resolve_problem(const RunConfig& config) {
  config.validate();
  if (!config.input_path.empty()) {
    const Samples s = read_samples_csv(config.input_path);
    const oracle::TestCase* tc = config.case_name.empty() ? nullptr : &oracle::find_case(config.case_name);
    if (!config.alpha && !tc) throw std::invalid_argument("--alpha is required with --input and no --case");
    const FractionalOrder alpha(config.alpha ? *config.alpha : tc->alpha.value());
    const TimeGrid grid(s.t.back(), s.t.size());
    SampledSignal samples{s.y, difference_derivative(s.y, grid.step())};
    std::vector<double> exact = tc ? reference_on_grid(*tc, alpha, grid) : oracle::caputo_l1(s.y, alpha, grid);
    return Problem{config.input_path, grid, alpha, std::move(samples), std::move(exact)};
  }
  const oracle::TestCase& tc = oracle::find_case(config.case_name);
  const FractionalOrder alpha(config.alpha.value_or(tc.alpha.value()));
  const TimeGrid grid(config.horizon.value_or(tc.horizon), config.count);
  Signal signal = tc.signal;
  signal.derivative_mode = config.derivative_mode;
  SampledSignal samples = sample(signal, grid);
  return Problem{tc.name, grid, alpha, std::move(samples), reference_on_grid(tc, alpha, grid)};
}

SlopeFit fit_slope(const std::vector<std::size_t>& orders, const std::vector<double>& errors) {
  if (orders.size() != errors.size() || orders.size() < 2) {
    throw std::invalid_argument("fit_slope: need matching orders/errors with at least two points");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (!(errors[i] > 0.0)) throw std::invalid_argument("fit_slope: errors must be positive");
    x.push_back(std::log(static_cast<double>(orders[i])));
    y.push_back(std::log(errors[i]));
  }
  SlopeFit out;
  out.points_used = x.size();
  if (x.size() >= 4) {
    const std::vector<double> rx(x.begin() + 1, x.end());
    const std::vector<double> ry(y.begin() + 1, y.end());
    const LineFit rest = least_squares(rx, ry);
    const double resid = y.front() - (rest.intercept + rest.slope * x.front());
    if (std::abs(resid) > 2.0 * rest.resid_stderr) {
      out.slope = rest.slope;
      out.intercept = rest.intercept;
      out.slope_stderr = rest.resid_stderr / std::sqrt(rest.sxx);
      out.excluded_first = true;
      out.points_used = rx.size();
      return out;
    }
  }
  const LineFit all = least_squares(x, y);
  out.slope = all.slope;
  out.intercept = all.intercept;
  out.slope_stderr = all.resid_stderr / std::sqrt(all.sxx);
  return out;
}

double theoretical_rate(Method method, FractionalOrder alpha) noexcept {
  const double a = alpha.value();
  switch (method) {
    case Method::CDR: return a - 2.0;
    case Method::SDR: return a - 1.0;
    case Method::YA:
    case Method::ISDR: return 2.0 * a - 2.0;
  }
  return 0.0;
}

std::optional<std::string> stability_warning(Method method, FractionalOrder alpha, std::size_t order, double h) {
  const double gamma = quadrature_exponent(method, alpha);
  const double z = 4.0 * static_cast<double>(order) + 2.0 * gamma + 6.0;
  if (h * z * z < 1.0) return std::nullopt;
  std::ostringstream os;
  os << "warning: " << to_string(method) << " N=" << order << ": h*(4N+2*gamma+6)^2 = " << h * z * z
     << " >= 1; the step does not resolve the stiffest node (continuing)";
  return os.str();
}

namespace {

ErrorReport sweep_method(const RunConfig& config, const Problem& problem, Method method) {
  ErrorReport r;
  r.method = method;
  r.orders = config.sweep;
  for (const std::size_t n_nodes : config.sweep) {
    if (config.warn_stability) {
      if (auto w = stability_warning(method, problem.alpha, n_nodes, problem.grid.step())) r.warnings.push_back(*w);
    }
    const DiffusiveApproximator approx(method, problem.alpha, n_nodes, problem.grid);
    const auto values = approx.run(problem.samples, StepOptions{config.solver, config.fully_implicit, nullptr});
    r.sweep_errors.push_back(max_error(values, problem.exact));
  }
  if (r.orders.size() >= 2) {
    bool positive = true;
    for (const double e : r.sweep_errors) positive = positive && e > 0.0;
    if (positive) r.fit = fit_slope(r.orders, r.sweep_errors);
  }
  r.expected_slope = theoretical_rate(method, problem.alpha);
  return r;
}

}  // namespace

ErrorReport cmd_deriv(const RunConfig& config) {
  const Problem problem = resolve_problem(config);
  const Method method = config.methods.front();
  ErrorReport r;
  r.method = method;
  if (config.warn_stability) {
    if (auto w = stability_warning(method, problem.alpha, config.order, problem.grid.step())) r.warnings.push_back(*w);
  }
  const DiffusiveApproximator approx(method, problem.alpha, config.order, problem.grid);
  r.approx = approx.run(problem.samples, StepOptions{config.solver, config.fully_implicit, nullptr});
  r.t = problem.grid.points();
  r.exact = problem.exact;
  const std::size_t n = r.t.size();
  r.abs_err.resize(n);
  r.rel_err.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    r.abs_err[k] = std::abs(r.approx[k] - r.exact[k]);
    r.e_inf = std::max(r.e_inf, r.abs_err[k]);
    if (std::abs(r.exact[k]) >= kRelErrFloor) r.rel_err[k] = r.abs_err[k] / std::abs(r.exact[k]);
  }

  if (!config.output_prefix.empty()) {
    const std::string csv = config.output_prefix + "_pointwise.csv";
    {
      auto out = open_output(csv);
      out << "t,approx,exact,abs_err,rel_err\n";
      for (std::size_t k = 0; k < n; ++k) {
        out << format_number(r.t[k]) << ',' << format_number(r.approx[k]) << ',' << format_number(r.exact[k]) << ','
            << format_number(r.abs_err[k]) << ',' << (r.rel_err[k] ? format_number(*r.rel_err[k]) : "") << '\n';
      }
    }
    write_plot_script(config.output_prefix + "_pointwise.gp", csv,
                      "set logscale y\nset xlabel 't'\nset ylabel 'relative error'\n"
                      "plot '" + basename_of(csv) + "' using 1:5 with lines title '" + std::string(to_string(method)) +
                          "'\n");
    json meta{{"command", "deriv"}, {"config", config_echo(config, problem)}, {"E_inf", r.e_inf},
              {"warnings", r.warnings}};
    write_meta(config.output_prefix + "_pointwise.meta.json", std::move(meta));
  }
  return r;
}

ErrorReport cmd_convergence(const RunConfig& config) {
  if (config.sweep.size() < 4) throw std::invalid_argument("a convergence sweep needs at least four values of N");
  const Problem problem = resolve_problem(config);
  ErrorReport r = sweep_method(config, problem, config.methods.front());
  r.e_inf = r.sweep_errors.back();

  if (!config.output_prefix.empty()) {
    const std::string csv = config.output_prefix + "_sweep.csv";
    {
      auto out = open_output(csv);
      out << "N,E_inf\n";
      for (std::size_t i = 0; i < r.orders.size(); ++i) {
        out << r.orders[i] << ',' << format_number(r.sweep_errors[i]) << '\n';
      }
    }
    write_plot_script(config.output_prefix + "_sweep.gp", csv,
                      "set logscale xy\nset xlabel 'N'\nset ylabel 'E_inf'\n"
                      "plot '" + basename_of(csv) + "' using 1:2 with linespoints title '" +
                          std::string(to_string(r.method)) + "'\n");
    json meta{{"command", "convergence"},
              {"config", config_echo(config, problem)},
              {"expected_slope", *r.expected_slope},
              {"warnings", r.warnings}};
    if (r.fit) meta["fit"] = fit_json(*r.fit);
    write_meta(config.output_prefix + "_sweep.meta.json", std::move(meta));
  }
  return r;
}

CompareReport cmd_compare(const RunConfig& config) {
  if (config.sweep.size() < 2) throw std::invalid_argument("a comparison sweep needs at least two values of N");
  const Problem problem = resolve_problem(config);
  CompareReport c;
  c.orders = config.sweep;
  for (const Method m : kAllMethods) c.per_method.push_back(sweep_method(config, problem, m));

  if (!config.output_prefix.empty()) {
    const std::string csv = config.output_prefix + "_compare.csv";
    {
      auto out = open_output(csv);
      out << "N,E_YA,E_CDR,E_SDR,E_ISDR\n";
      for (std::size_t i = 0; i < c.orders.size(); ++i) {
        out << c.orders[i];
        for (const auto& r : c.per_method) out << ',' << format_number(r.sweep_errors[i]);
        out << '\n';
      }
    }
    write_plot_script(config.output_prefix + "_compare.gp", csv,
                      "set logscale xy\nset xlabel 'N'\nset ylabel 'E_inf'\n"
                      "plot for [col=2:5] '" + basename_of(csv) + "' using 1:col with linespoints\n");
    json fits = json::object();
    std::vector<std::string> warnings;
    for (const auto& r : c.per_method) {
      json entry{{"expected_slope", *r.expected_slope}};
      if (r.fit) entry["fit"] = fit_json(*r.fit);
      fits[std::string(to_string(r.method))] = entry;
      warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    }
    json echo = config_echo(config, problem);
    echo["methods"] = "YA,CDR,SDR,ISDR";
    json meta{{"command", "compare"}, {"config", echo}, {"methods", fits},
              {"warnings", warnings}};
    write_meta(config.output_prefix + "_compare.meta.json", std::move(meta));
  }
  return c;
}

void cmd_nodes(std::size_t order, double gamma, std::ostream& out) {
  const QuadratureRule rule(order, gamma);
  out << "index,node,weight,scaled_weight\n";
  for (std::size_t i = 0; i < rule.order(); ++i) {
    out << i << ',' << format_number(rule.nodes()[i]) << ',' << format_number(rule.weights()[i]) << ','
        << format_number(rule.scaled_weights()[i]) << '\n';
  }
}

namespace {

double parse_double(const std::string& field, const std::string& where) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw std::runtime_error("malformed number '" + field + "' in " + where);
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<double>> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (split_csv_line(line) != std::vector<std::string>{"N", "E_inf"}) {
    throw std::runtime_error(path + ": expected header 'N,E_inf'");
  }
  std::vector<std::size_t> orders;
  std::vector<double> errors;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw std::runtime_error(path + ": expected two columns");
    orders.push_back(static_cast<std::size_t>(parse_double(f[0], path)));
    errors.push_back(parse_double(f[1], path));
  }
  return {orders, errors};
}

Samples read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (split_csv_line(line) != std::vector<std::string>{"t", "y"}) {
    throw std::runtime_error(path + ": expected header 't,y'");
  }
  Samples s;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw std::runtime_error(path + ": expected two columns per row");
    s.t.push_back(parse_double(f[0], path));
    s.y.push_back(parse_double(f[1], path));
  }
  if (s.t.size() < 2) throw std::runtime_error(path + ": need at least two samples");
  const double horizon = s.t.back();
  if (!(horizon > 0.0)) throw std::runtime_error(path + ": time column must increase");
  if (std::abs(s.t.front()) > kUniformTolerance * horizon) {
    throw std::runtime_error(path + ": samples must start at t = 0");
  }
  const double h = horizon / static_cast<double>(s.t.size() - 1);
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    const double expected = horizon * static_cast<double>(k) / static_cast<double>(s.t.size() - 1);
    if (std::abs(s.t[k] - expected) > kUniformTolerance * std::max(h, std::abs(expected))) {
      throw std::runtime_error(path + ": sample times are not uniformly spaced (row " + std::to_string(k + 2) + ")");
    }
  }
  return s;
}

void write_samples_csv(const std::string& path, const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("write_samples_csv: column lengths differ");
  auto out = open_output(path);
  out << "t,y\n";
  for (std::size_t k = 0; k < t.size(); ++k) out << format_number(t[k]) << ',' << format_number(y[k]) << '\n';
}

}  // namespace fracdr::harness
