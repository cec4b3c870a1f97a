#include "fracdr/diffusive.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracdr/error.hpp"

namespace fracdr {

double representation_constant(Method method, FractionalOrder alpha) noexcept {
  const double a = alpha.value();
  constexpr double pi = std::numbers::pi;
  switch (method) {
    case Method::YA: return 2.0 * std::sin(pi * a) / pi;
    case Method::CDR: return 2.0 * std::sin(0.5 * pi * a) / pi;
    case Method::SDR: return 2.0 * std::cos(0.5 * pi * a) / pi;
    case Method::ISDR: return 4.0 * std::cos(0.5 * pi * a) / pi;
  }
  return 0.0;
}

double stiffness(Method method, double z) noexcept {
  const double z2 = z * z;
  return method == Method::ISDR ? z2 * z2 : z2;
}

double forcing_gain(Method method, FractionalOrder alpha, double z) noexcept {
  const double kappa = representation_constant(method, alpha);
  return method == Method::ISDR ? kappa * z * z : kappa;
}

DiffusiveState initial_state(Method method, FractionalOrder alpha, std::size_t order, double y_prime0) {
  DiffusiveState s;
  s.x1.assign(order, 0.0);
  s.x2.assign(order, method == Method::CDR ? representation_constant(method, alpha) * y_prime0 : 0.0);
  s.current_index = 0;
  return s;
}

namespace {

void check_shapes(const DiffusiveState& state, std::span<const double> nodes) {
  if (state.x1.size() != nodes.size() || state.x2.size() != nodes.size()) {
    throw std::invalid_argument("diffusive state length does not match the number of nodes");
  }
}

}  // namespace

DiffusiveState advance_euler(Method method, FractionalOrder alpha, const DiffusiveState& state,
                             std::span<const double> nodes, const TimeGrid& grid, double forcing_prev,
                             double forcing_curr, bool fully_implicit) {
  check_shapes(state, nodes);
  const double h = grid.step();
  const double df = forcing_curr - forcing_prev;
  DiffusiveState next = state;
  next.current_index = state.current_index + 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = stiffness(method, nodes[i]);
    const double g = forcing_gain(method, alpha, nodes[i]);
    if (method == Method::YA) {
      next.x1[i] = (state.x1[i] + g * df) / (1.0 + s * h);
      continue;
    }
    const double x2 = (state.x2[i] - s * h * state.x1[i] + g * df) / (1.0 + s * h * h);
    next.x1[i] = state.x1[i] + h * (fully_implicit ? x2 : state.x2[i]);
    next.x2[i] = x2;
  }
  return next;
}

DiffusiveState advance_trapezoid(Method method, FractionalOrder alpha, const DiffusiveState& state,
                                 const DiffusiveState& euler_state, std::span<const double> nodes,
                                 const TimeGrid& grid, double forcing_prev, double forcing_curr,
                                 bool fully_implicit) {
  check_shapes(state, nodes);
  if (!fully_implicit && method != Method::YA) {
    check_shapes(euler_state, nodes);
    if (euler_state.current_index != state.current_index + 1) {
      throw std::invalid_argument("advance_trapezoid: euler_state must be at the next grid index");
    }
  }
  const double h = grid.step();
  const double df = forcing_curr - forcing_prev;
  DiffusiveState next = state;
  next.current_index = state.current_index + 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = stiffness(method, nodes[i]);
    const double g = forcing_gain(method, alpha, nodes[i]);
    if (method == Method::YA) {
      next.x1[i] = ((1.0 - 0.5 * s * h) * state.x1[i] + g * df) / (1.0 + 0.5 * s * h);
      continue;
    }
    const double q = 0.25 * s * h * h;
    const double x2 = ((1.0 - q) * state.x2[i] - s * h * state.x1[i] + g * df) / (1.0 + q);
    const double partner = fully_implicit ? x2 : euler_state.x2[i];
    next.x1[i] = state.x1[i] + 0.5 * h * (state.x2[i] + partner);
    next.x2[i] = x2;
  }
  return next;
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kPanelBudget = 4'000'000;

struct PanelResult {
  double value;
  double error;
};

template <class F>
PanelResult gauss_kronrod(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = r * kXgk[j];
    const double sum = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {r * kronrod, std::abs(r * (kronrod - gauss))};
}

template <class F>
double adaptive(const F& f, double a, double b, double tol, std::size_t& budget, int depth) {
  if (budget == 0 || depth > 40) {
    throw ConvergenceError("kernel_reference: tolerance unreachable within the panel budget");
  }
  --budget;
  const PanelResult whole = gauss_kronrod(f, a, b);
  if (whole.error <= tol) return whole.value;
  const double m = 0.5 * (a + b);
  return adaptive(f, a, m, 0.5 * tol, budget, depth + 1) + adaptive(f, m, b, 0.5 * tol, budget, depth + 1);
}

}  // namespace

double kernel_reference(Method method, FractionalOrder alpha, double z, double t, const Signal& signal,
                        double tol) {
  if (!(z > 0.0)) throw DomainError("kernel_reference: node z must be positive");
  if (!(t >= 0.0)) throw DomainError("kernel_reference: t must be non-negative");
  if (!signal.has_derivative()) {
    throw std::invalid_argument("kernel_reference: signal needs an analytic derivative");
  }
  if (t == 0.0) return 0.0;

  const double kappa = representation_constant(method, alpha);
  const auto& yp = signal.y_prime;
  double rate = 0.0;  // oscillation frequency or decay rate in tau
  auto integrand = [&](double tau) -> double {
    const double lag = t - tau;
    switch (method) {
      case Method::YA: return std::exp(-lag * z * z) * yp(tau);
      case Method::CDR: return std::cos(lag * z) * yp(tau);
      case Method::SDR: return std::sin(lag * z) * yp(tau) / z;
      case Method::ISDR: return std::sin(lag * z * z) * yp(tau);
    }
    return 0.0;
  };
  rate = (method == Method::CDR || method == Method::SDR) ? z : z * z;

  const double period = 2.0 * std::numbers::pi / rate;
  const double panels_needed = std::max(8.0, std::ceil(8.0 * t / period));
  if (panels_needed > static_cast<double>(kPanelBudget)) {
    throw ConvergenceError("kernel_reference: too many oscillations for the panel budget");
  }
  const auto panels = static_cast<std::size_t>(panels_needed);
  std::size_t budget = kPanelBudget;
  const double width = t / static_cast<double>(panels);
  const double panel_tol = tol / (std::abs(kappa) * static_cast<double>(panels));
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = width * static_cast<double>(p);
    const double b = (p + 1 == panels) ? t : width * static_cast<double>(p + 1);
    sum += adaptive(integrand, a, b, panel_tol, budget, 0);
  }
  return kappa * sum;
}

DiffusiveApproximator::DiffusiveApproximator(Method method, FractionalOrder alpha, std::size_t order,
                                             const TimeGrid& grid)
    : method_(method),
      alpha_(alpha),
      grid_(grid),
      rule_(order, quadrature_exponent(method, alpha)),
      kappa_(representation_constant(method, alpha)) {
  const double h = grid.step();
  const auto z = rule_.nodes();
  const std::size_t n = z.size();
  stiffness_h_.resize(n);
  euler_damp_.resize(n);
  trap_keep_.resize(n);
  trap_damp_.resize(n);
  gain_.resize(n);
  relax_euler_keep_.assign(n, 1.0);
  relax_euler_damp_.resize(n);
  relax_trap_keep_.resize(n);
  relax_trap_damp_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = stiffness(method, z[i]);
    stiffness_h_[i] = s * h;
    euler_damp_[i] = 1.0 / (1.0 + s * h * h);
    trap_keep_[i] = 1.0 - 0.25 * s * h * h;
    trap_damp_[i] = 1.0 / (1.0 + 0.25 * s * h * h);
    gain_[i] = forcing_gain(method, alpha, z[i]);
    relax_euler_damp_[i] = 1.0 / (1.0 + s * h);
    relax_trap_keep_[i] = 1.0 - 0.5 * s * h;
    relax_trap_damp_[i] = 1.0 / (1.0 + 0.5 * s * h);
  }
}

std::vector<double> DiffusiveApproximator::run(const SampledSignal& samples, const StepOptions& options) const {
  const std::size_t count = grid_.count();
  if (samples.y.size() != count) {
    throw std::invalid_argument("sampled signal length does not match the time grid");
  }
  const bool use_derivative = forces_with_derivative(method_);
  if (use_derivative && samples.y_prime.size() != count) {
    throw std::invalid_argument("CDR needs y' samples: provide an analytic derivative or use forward differences");
  }
  const std::vector<double>& forcing = use_derivative ? samples.y_prime : samples.y;
  const simd::KernelTable& k = options.kernels ? *options.kernels : simd::active_kernels();
  const auto weights = rule_.scaled_weights();
  const std::size_t n = rule_.order();

  std::vector<double> result(count, 0.0);

  if (method_ == Method::YA) {
    const bool trap = options.solver == Solver::Trapezoid;
    const simd::RelaxationView view{trap ? relax_trap_keep_ : relax_euler_keep_,
                                    trap ? relax_trap_damp_ : relax_euler_damp_, gain_};
    std::vector<double> w(n, 0.0);
    for (std::size_t step = 1; step < count; ++step) {
      k.relaxation(view, w, forcing[step] - forcing[step - 1]);
      result[step] = k.dot(weights, w);
    }
    return result;
  }

  const simd::OscillatorView view{stiffness_h_, euler_damp_, trap_keep_, trap_damp_, gain_, grid_.step()};
  const double x2_start = method_ == Method::CDR ? kappa_ * samples.y_prime.at(0) : 0.0;
  std::vector<double> e1(n, 0.0);
  std::vector<double> e2(n, x2_start);

  if (options.solver == Solver::Euler) {
    for (std::size_t step = 1; step < count; ++step) {
      k.oscillator_euler(view, e1, e2, forcing[step] - forcing[step - 1], options.fully_implicit);
      result[step] = k.dot(weights, e1);
    }
    return result;
  }

  std::vector<double> x1(n, 0.0);
  std::vector<double> x2(n, x2_start);
  for (std::size_t step = 1; step < count; ++step) {
    const double df = forcing[step] - forcing[step - 1];
    if (!options.fully_implicit) {
      k.oscillator_euler(view, e1, e2, df, false);
    }
    k.oscillator_trapezoid(view, x1, x2, e2, df, options.fully_implicit);
    result[step] = k.dot(weights, x1);
  }
  return result;
}

std::vector<double> caputo_derivative(Method method, Solver solver, FractionalOrder alpha, std::size_t order,
                                      const TimeGrid& grid, const Signal& signal, bool fully_implicit) {
  if (method == Method::CDR && signal.derivative_mode == DerivativeMode::Analytic && !signal.has_derivative()) {
    throw std::invalid_argument("CDR in analytic mode requires the signal's derivative y'(t)");
  }
  const DiffusiveApproximator approx(method, alpha, order, grid);
  return approx.run(sample(signal, grid), StepOptions{solver, fully_implicit, nullptr});
}

double max_error(std::span<const double> approx, std::span<const double> exact) {
  if (approx.size() != exact.size()) {
    throw std::invalid_argument("max_error: arrays differ in length");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    e = std::max(e, std::abs(approx[i] - exact[i]));
  }
  return e;
}

}  // namespace fracdr
