#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracdr/quadrature.hpp"
#include "fracdr/simd/kernels.hpp"
#include "fracdr/types.hpp"

namespace fracdr {

/// Infinite states at the quadrature nodes after `current_index` steps.
/// x1 holds omega(z_i, t_k); x2 its time derivative (unused by YA).
struct DiffusiveState {
  std::vector<double> x1;
  std::vector<double> x2;
  std::size_t current_index = 0;
};

/// Prefactor of the representation kernel:
/// YA 2 sin(pi a)/pi, CDR 2 sin(pi a/2)/pi, SDR 2 cos(pi a/2)/pi, ISDR 4 cos(pi a/2)/pi.
double representation_constant(Method method, FractionalOrder alpha) noexcept;

/// Node stiffness: z^4 for ISDR, z^2 otherwise.
double stiffness(Method method, double z) noexcept;

/// Multiplier of the forcing increment at node z (ISDR carries an extra z^2).
double forcing_gain(Method method, FractionalOrder alpha, double z) noexcept;

/// True when the forcing increments are differences of y' (CDR) rather than y.
constexpr bool forces_with_derivative(Method method) noexcept { return method == Method::CDR; }

/// State at t = 0. Only CDR starts with a non-zero x2 = kappa y'(0).
DiffusiveState initial_state(Method method, FractionalOrder alpha, std::size_t order, double y_prime0);

/// One backward-Euler step from t_{k-1} to t_k.
///
/// For the oscillator methods the x2 update is implicit and, following the
/// printed scheme, x1 advances with the previous x2 unless fully_implicit.
/// forcing_prev/curr are y' values for CDR and y values otherwise.
DiffusiveState advance_euler(Method method, FractionalOrder alpha, const DiffusiveState& state,
                             std::span<const double> nodes, const TimeGrid& grid, double forcing_prev,
                             double forcing_curr, bool fully_implicit = false);

/// One trapezoidal step. euler_state must be the advance_euler result at the
/// same new index; its x2 enters the x1 update unless fully_implicit.
DiffusiveState advance_trapezoid(Method method, FractionalOrder alpha, const DiffusiveState& state,
                                 const DiffusiveState& euler_state, std::span<const double> nodes,
                                 const TimeGrid& grid, double forcing_prev, double forcing_curr,
                                 bool fully_implicit = false);

/// omega(z, t) by direct adaptive quadrature of its defining time integral.
/// Test oracle; requires the signal's analytic derivative.
double kernel_reference(Method method, FractionalOrder alpha, double z, double t, const Signal& signal,
                        double tol = 1e-12);

struct StepOptions {
  Solver solver = Solver::Euler;
  bool fully_implicit = false;
  /// nullptr selects simd::active_kernels().
  const simd::KernelTable* kernels = nullptr;
};

/// Precomputed rule and per-node coefficients for one (method, alpha, N, h).
class DiffusiveApproximator {
 public:
  DiffusiveApproximator(Method method, FractionalOrder alpha, std::size_t order, const TimeGrid& grid);

  Method method() const noexcept { return method_; }
  const QuadratureRule& rule() const noexcept { return rule_; }
  const TimeGrid& grid() const noexcept { return grid_; }

  /// Caputo derivative at every grid point; result[0] = 0.
  std::vector<double> run(const SampledSignal& samples, const StepOptions& options = {}) const;

 private:
  Method method_;
  FractionalOrder alpha_;
  TimeGrid grid_;
  QuadratureRule rule_;
  double kappa_;
  std::vector<double> stiffness_h_;
  std::vector<double> euler_damp_;
  std::vector<double> trap_keep_;
  std::vector<double> trap_damp_;
  std::vector<double> gain_;
  std::vector<double> relax_euler_keep_;
  std::vector<double> relax_euler_damp_;
  std::vector<double> relax_trap_keep_;
  std::vector<double> relax_trap_damp_;
};

/// Approximates the Caputo derivative of `signal` on `grid` with an
/// N-point rule. Cost O(n N). Throws std::invalid_argument for CDR when the
/// signal has no analytic derivative in Analytic mode.
std::vector<double> caputo_derivative(Method method, Solver solver, FractionalOrder alpha, std::size_t order,
                                      const TimeGrid& grid, const Signal& signal, bool fully_implicit = false);

/// max_k |approx[k] - exact[k]|.
double max_error(std::span<const double> approx, std::span<const double> exact);

}  // namespace fracdr
