// fracdr: command line front end for the experiment harness.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracdr/harness.hpp"
#include "fracdr/types.hpp"

namespace {

using fracdr::harness::RunConfig;

struct Flags {
  std::vector<std::string> methods;
  std::string solver = "euler";
  double alpha = 0.0;
  std::string derivative = "analytic";
};

void add_common(CLI::App* cmd, RunConfig& cfg, Flags& flags, bool with_sweep) {
  cmd->add_option("--solver", flags.solver, "euler or trapezoid")->check(CLI::IsMember({"euler", "trapezoid"}, CLI::ignore_case));
  cmd->add_option("--alpha", flags.alpha, "fractional order in (0,1); defaults to the case's");
  cmd->add_option("--n", cfg.count, "number of grid points")->capture_default_str();
  cmd->add_option("--T", cfg.horizon, "time horizon; defaults to the case's");
  cmd->add_option("--case", cfg.case_name, "example1..example4 or constant")->capture_default_str();
  cmd->add_option("--input", cfg.input_path, "CSV file with header t,y on a uniform grid")->check(CLI::ExistingFile);
  cmd->add_option("--out", cfg.output_prefix, "output file prefix");
  cmd->add_flag("--fully-implicit", cfg.fully_implicit, "use the new x2 in the x1 update");
  cmd->add_flag("!--no-warn", cfg.warn_stability, "suppress step-size warnings");
  cmd->add_option("--derivative", flags.derivative, "analytic or fd (difference derivative of the samples)")
      ->check(CLI::IsMember({"analytic", "fd"}, CLI::ignore_case));
  if (with_sweep) {
    cmd->add_option("--sweep", cfg.sweep, "strictly increasing list of N")->delimiter(',')->capture_default_str();
  } else {
    cmd->add_option("--N", cfg.order, "number of quadrature nodes")->capture_default_str();
  }
}

void finalize(RunConfig& cfg, const Flags& flags, const CLI::App* cmd) {
  if (!flags.methods.empty()) {
    cfg.methods.clear();
    for (const auto& m : flags.methods) cfg.methods.push_back(fracdr::parse_method(m));
  }
  cfg.solver = fracdr::parse_solver(flags.solver);
  if (cmd->count("--alpha") > 0) cfg.alpha = flags.alpha;
  cfg.derivative_mode =
      (flags.derivative == "fd" || flags.derivative == "FD") ? fracdr::DerivativeMode::ForwardDifference
                                                             : fracdr::DerivativeMode::Analytic;
  if (!cfg.input_path.empty() && cmd->count("--case") == 0) cfg.case_name.clear();
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << w << '\n';
}

void print_fit(const fracdr::harness::ErrorReport& r) {
  std::cout << fracdr::to_string(r.method) << ": E_inf(N=" << r.orders.back()
            << ") = " << fracdr::harness::format_number(r.sweep_errors.back());
  if (r.fit) {
    std::cout << "  slope = " << fracdr::harness::format_number(r.fit->slope) << " +/- "
              << fracdr::harness::format_number(r.fit->slope_stderr);
    if (r.fit->excluded_first) std::cout << " (first N excluded)";
  }
  if (r.expected_slope) std::cout << "  expected " << fracdr::harness::format_number(*r.expected_slope);
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Caputo fractional derivatives through diffusive representations"};
  app.require_subcommand(1);

  RunConfig deriv_cfg;
  Flags deriv_flags;
  auto* deriv = app.add_subcommand("deriv", "pointwise error table for one method");
  deriv->add_option("--method", deriv_flags.methods, "YA, CDR, SDR or ISDR")->expected(1);
  add_common(deriv, deriv_cfg, deriv_flags, false);

  RunConfig conv_cfg;
  Flags conv_flags;
  auto* conv = app.add_subcommand("convergence", "E_inf over a sweep of N with a log-log slope fit");
  conv->add_option("--method", conv_flags.methods, "YA, CDR, SDR or ISDR")->expected(1);
  add_common(conv, conv_cfg, conv_flags, true);

  RunConfig cmp_cfg;
  Flags cmp_flags;
  auto* cmp = app.add_subcommand("compare", "E_inf sweeps for all four methods");
  add_common(cmp, cmp_cfg, cmp_flags, true);

  std::size_t node_order = 10;
  double node_gamma = 0.0;
  std::string node_out;
  auto* nodes = app.add_subcommand("nodes", "dump a generalized Gauss-Laguerre rule");
  nodes->add_option("--N", node_order, "number of nodes")->capture_default_str();
  nodes->add_option("--gamma", node_gamma, "weight exponent, > -1")->capture_default_str();
  nodes->add_option("--out", node_out, "output CSV path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (deriv->parsed()) {
      finalize(deriv_cfg, deriv_flags, deriv);
      const auto r = fracdr::harness::cmd_deriv(deriv_cfg);
      print_warnings(r.warnings);
      std::cout << fracdr::to_string(r.method) << ": E_inf = " << fracdr::harness::format_number(r.e_inf) << '\n';
    } else if (conv->parsed()) {
      finalize(conv_cfg, conv_flags, conv);
      const auto r = fracdr::harness::cmd_convergence(conv_cfg);
      print_warnings(r.warnings);
      print_fit(r);
    } else if (cmp->parsed()) {
      finalize(cmp_cfg, cmp_flags, cmp);
      const auto c = fracdr::harness::cmd_compare(cmp_cfg);
      for (const auto& r : c.per_method) print_warnings(r.warnings);
      for (const auto& r : c.per_method) print_fit(r);
    } else if (nodes->parsed()) {
      if (node_out.empty()) {
        fracdr::harness::cmd_nodes(node_order, node_gamma, std::cout);
      } else {
        std::ofstream out(node_out);
        if (!out) throw std::runtime_error("cannot open '" + node_out + "' for writing");
        fracdr::harness::cmd_nodes(node_order, node_gamma, out);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
