#include "fracdr/simd/kernels.hpp"

namespace fracdr::simd::detail {
namespace {

void oscillator_euler(const OscillatorView& c, std::span<double> x1, std::span<double> x2,
                      double df, bool fully_implicit) {
  const double h = c.h;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    const double a = x1[i];
    const double b = x2[i];
    double t = b - c.stiffness_h[i] * a;
    t = t + c.gain[i] * df;
    const double b_new = c.euler_damp[i] * t;
    x1[i] = a + h * (fully_implicit ? b_new : b);
    x2[i] = b_new;
  }
}

void oscillator_trapezoid(const OscillatorView& c, std::span<double> x1, std::span<double> x2,
                          std::span<const double> euler_x2, double df, bool fully_implicit) {
  const double half_h = 0.5 * c.h;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    const double a = x1[i];
    const double b = x2[i];
    double t = c.trap_keep[i] * b - c.stiffness_h[i] * a;
    t = t + c.gain[i] * df;
    const double b_new = c.trap_damp[i] * t;
    const double partner = fully_implicit ? b_new : euler_x2[i];
    x1[i] = a + half_h * (b + partner);
    x2[i] = b_new;
  }
}

void relaxation(const RelaxationView& c, std::span<double> w, double df) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = c.keep[i] * w[i] + c.gain[i] * df;
    w[i] = c.damp[i] * t;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const KernelTable kScalarTable{Isa::Scalar, &oscillator_euler, &oscillator_trapezoid, &relaxation, &dot};

}  // namespace fracdr::simd::detail
