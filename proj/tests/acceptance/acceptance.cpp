// Acceptance suite: one PASS/FAIL line per criterion.
//
//   fracdr_acceptance          run all criteria
//   fracdr_acceptance 3 5      run a subset
//
// Exit status is non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fracdr/diffusive.hpp"
#include "fracdr/harness.hpp"
#include "fracdr/oracle.hpp"
#include "fracdr/quadrature.hpp"
#include "fracdr/specfun.hpp"

using namespace fracdr;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::vector<std::size_t> kSweep{10, 20, 40, 80, 160};

// E_inf over the sweep for every method, backward Euler.
std::map<Method, std::vector<double>> sweep_errors(const std::string& case_name, std::size_t n) {
  const auto& tc = oracle::find_case(case_name);
  const TimeGrid grid(tc.horizon, n);
  const SampledSignal samples = sample(tc.signal, grid);
  std::vector<double> exact(n);
  for (std::size_t k = 0; k < n; ++k) exact[k] = tc.exact(tc.alpha, grid.at(k));
  std::map<Method, std::vector<double>> out;
  for (Method m : kAllMethods) {
    for (std::size_t order : kSweep) {
      const DiffusiveApproximator approx(m, tc.alpha, order, grid);
      out[m].push_back(max_error(approx.run(samples), exact));
    }
  }
  return out;
}

std::map<Method, double> slopes(const std::map<Method, std::vector<double>>& errors) {
  std::map<Method, double> s;
  for (const auto& [m, e] : errors) s[m] = harness::fit_slope(kSweep, e).slope;
  return s;
}

Outcome quadrature_exactness() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (double g : {-0.6, -0.4, 0.5}) {
    for (std::size_t order : {5u, 20u, 60u}) {
      const QuadratureRule rule(order, g);
      double moment = specfun::gamma(g + 1.0);
      for (std::size_t j = 0; j < 2 * order; ++j) {
        const double q = integrate(rule, [j](double z) { return std::pow(z, static_cast<double>(j)); });
        worst = std::max(worst, std::abs(q - moment) / moment);
        moment *= g + static_cast<double>(j) + 1.0;
      }
    }
  }
  const double t = seconds_since(start);
  return {worst <= 1e-10 && t < 1.0, "max rel err " + fmt("%.2e", worst) + " (limit 1e-10), " + fmt("%.3f", t) + " s"};
}

Outcome oracle_cross_validation() {
  const auto start = Clock::now();
  std::string detail;
  double worst = 0.0;
  for (const char* name : {"example1", "example2", "example3", "example4"}) {
    const auto& tc = oracle::find_case(name);
    const TimeGrid grid(tc.horizon, 100000);
    const auto l1 = oracle::caputo_l1(tc.signal, tc.alpha, grid);
    double e = 0.0;
    for (std::size_t k = 0; k < grid.count(); ++k) {
      const double t = grid.at(k);
      if (t < tc.horizon / 10.0) continue;
      const double ex = tc.exact(tc.alpha, t);
      e = std::max(e, std::abs(l1[k] - ex) / std::abs(ex));
    }
    worst = std::max(worst, e);
    detail += std::string(name) + " " + fmt("%.1e", e) + ", ";
  }
  const double t = seconds_since(start);
  return {worst <= 5e-3 && t < 60.0, detail + "limit 5e-3, " + fmt("%.1f", t) + " s"};
}

Outcome rate_reproduction() {
  const auto start = Clock::now();
  const auto s = slopes(sweep_errors("example2", 10000));
  const bool ok = s.at(Method::CDR) >= -1.7 && s.at(Method::CDR) <= -1.1 && s.at(Method::SDR) >= -0.7 &&
                  s.at(Method::SDR) <= -0.1 && s.at(Method::YA) >= -1.1 && s.at(Method::YA) <= -0.5 &&
                  s.at(Method::ISDR) >= -1.1 && s.at(Method::ISDR) <= -0.5;
  const double t = seconds_since(start);
  return {ok && t < 300.0, "slopes CDR " + fmt("%.2f", s.at(Method::CDR)) + " [-1.7,-1.1], SDR " +
                               fmt("%.2f", s.at(Method::SDR)) + " [-0.7,-0.1], YA " + fmt("%.2f", s.at(Method::YA)) +
                               " [-1.1,-0.5], ISDR " + fmt("%.2f", s.at(Method::ISDR)) + " [-1.1,-0.5], " +
                               fmt("%.2f", t) + " s"};
}

Outcome qualitative_ordering() {
  std::string detail;
  bool ok = true;
  for (const char* name : {"example2", "example1"}) {
    const auto e = sweep_errors(name, 10000);
    const double cdr = e.at(Method::CDR).back(), ya = e.at(Method::YA).back(), sdr = e.at(Method::SDR).back();
    const bool ordered = cdr < ya && ya < sdr;
    ok = ok && ordered;
    detail += std::string(name) + " N=160: CDR " + fmt("%.2e", cdr) + ", YA " + fmt("%.2e", ya) + ", SDR " +
              fmt("%.2e", sdr) + (ordered ? " ordered" : " NOT ordered") + "; ";
    if (std::string(name) == "example1") {
      const double s = harness::fit_slope(kSweep, e.at(Method::CDR)).slope;
      const bool in_band = s >= -1.9 && s <= -1.3;
      ok = ok && in_band;
      detail += "CDR slope " + fmt("%.2f", s) + " [-1.9,-1.3]";
    }
  }
  return {ok, detail};
}

Outcome isdr_dichotomy() {
  std::string detail;
  bool ok = true;
  const std::pair<const char*, Method> groups[] = {
      {"example2", Method::YA}, {"example4", Method::YA}, {"example1", Method::SDR}, {"example3", Method::SDR}};
  for (const auto& [name, partner] : groups) {
    const auto s = slopes(sweep_errors(name, 10000));
    const double gap = std::abs(s.at(Method::ISDR) - s.at(partner));
    ok = ok && gap <= 0.3;
    detail += std::string(name) + " ISDR " + fmt("%.2f", s.at(Method::ISDR)) + " vs " +
              std::string(to_string(partner)) + " " + fmt("%.2f", s.at(partner)) + " (gap " + fmt("%.2f", gap) +
              "); ";
  }
  return {ok, detail + "limit 0.3"};
}

// x1 at t = 1 on the single node z for y = t^2.
double stepped_state(Method m, Solver s, FractionalOrder alpha, double z, std::size_t n) {
  const TimeGrid grid(1.0, n);
  const std::vector<double> nodes{z};
  const auto f = [&](std::size_t k) {
    const double t = grid.at(k);
    return forces_with_derivative(m) ? 2.0 * t : t * t;
  };
  DiffusiveState euler = initial_state(m, alpha, 1, 0.0);
  DiffusiveState trap = euler;
  for (std::size_t k = 1; k < n; ++k) {
    DiffusiveState next = advance_euler(m, alpha, euler, nodes, grid, f(k - 1), f(k));
    if (s == Solver::Trapezoid) trap = advance_trapezoid(m, alpha, trap, next, nodes, grid, f(k - 1), f(k));
    euler = std::move(next);
  }
  return s == Solver::Euler ? euler.x1[0] : trap.x1[0];
}

Outcome stepper_correctness() {
  const FractionalOrder alpha(0.5);
  const Signal y{[](double t) { return t * t; }, [](double t) { return 2.0 * t; }};
  double worst_euler = 0.0, worst_trap = 0.0;
  for (Method m : kAllMethods) {
    const double ref = kernel_reference(m, alpha, 0.5, 1.0, y);
    for (Solver s : {Solver::Euler, Solver::Trapezoid}) {
      double prev = 0.0;
      for (std::size_t n : {101u, 201u, 401u, 801u}) {
        const double e = std::abs(stepped_state(m, s, alpha, 0.5, n) - ref);
        if (n > 101) (s == Solver::Euler ? worst_euler : worst_trap) =
            std::max(s == Solver::Euler ? worst_euler : worst_trap, e / prev);
        prev = e;
      }
    }
  }
  return {worst_euler <= 0.6 && worst_trap <= 0.35, "worst error ratio per halving: Euler " +
                                                        fmt("%.3f", worst_euler) + " (limit 0.6), trapezoid " +
                                                        fmt("%.3f", worst_trap) + " (limit 0.35)"};
}

Outcome diffusive_invariants() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto random_poly = [&] {
    std::vector<double> c(5);
    for (auto& v : c) v = u(rng);
    return Signal{[c](double t) { return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4]))); },
                  [c](double t) { return c[1] + t * (2 * c[2] + t * (3 * c[3] + t * 4 * c[4])); }};
  };
  const TimeGrid grid(1.0, 1000);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Signal y1 = random_poly(), y2 = random_poly();
    const double a = u(rng), b = u(rng), c = u(rng);
    const Signal mix{[=](double t) { return a * y1.y(t) + b * y2.y(t); },
                     [=](double t) { return a * y1.y_prime(t) + b * y2.y_prime(t); }};
    const Signal constant{[c](double) { return c; }, [](double) { return 0.0; }};
    const FractionalOrder alpha(0.1 + 0.8 * (u(rng) + 2.0) / 4.0);
    for (Method m : kAllMethods) {
      for (Solver s : {Solver::Euler, Solver::Trapezoid}) {
        const auto r1 = caputo_derivative(m, s, alpha, 30, grid, y1);
        const auto r2 = caputo_derivative(m, s, alpha, 30, grid, y2);
        const auto rm = caputo_derivative(m, s, alpha, 30, grid, mix);
        const auto rc = caputo_derivative(m, s, alpha, 30, grid, constant);
        worst = std::max({worst, std::abs(r1[0]), std::abs(r2[0]), std::abs(rm[0])});
        for (std::size_t k = 0; k < grid.count(); ++k) {
          worst = std::max({worst, std::abs(rm[k] - (a * r1[k] + b * r2[k])), std::abs(rc[k])});
        }
      }
    }
  }
  return {worst <= 1e-11, "max violation " + fmt("%.2e", worst) + " over 20 random pairs (limit 1e-11)"};
}

double best_time(std::size_t n, int reps) {
  const auto& tc = oracle::find_case("example2");
  const TimeGrid grid(tc.horizon, n);
  double best = 1e300;
  volatile double sink = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    const auto out = caputo_derivative(Method::CDR, Solver::Euler, tc.alpha, 50, grid, tc.signal);
    best = std::min(best, seconds_since(start));
    sink = sink + out.back();
  }
  return best;
}

Outcome complexity() {
  best_time(10000, 3);
  const double t4 = best_time(10000, 30);
  const double t5 = best_time(100000, 10);
  const double ratio = t5 / t4;
  return {ratio >= 8.0 && ratio <= 12.0, "t(1e5)/t(1e4) = " + fmt("%.2f", ratio) + " (" + fmt("%.2e", t5) + " s / " +
                                             fmt("%.2e", t4) + " s), band [8,12]"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"quadrature exactness", quadrature_exactness},
      {"oracle cross-validation", oracle_cross_validation},
      {"rate reproduction", rate_reproduction},
      {"qualitative ordering", qualitative_ordering},
      {"ISDR dichotomy", isdr_dichotomy},
      {"stepper correctness", stepper_correctness},
      {"diffusive invariants", diffusive_invariants},
      {"complexity", complexity},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.insert(k);
  }

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
