// AArch64 NEON variant (two doubles per lane group). No fused multiply-add,
// matching the scalar rounding sequence.
#include <arm_neon.h>

#include "fracdr/simd/kernels.hpp"

namespace fracdr::simd::detail {
namespace {

void oscillator_euler(const OscillatorView& c, std::span<double> x1, std::span<double> x2,
                      double df, bool fully_implicit) {
  const std::size_t n = x1.size();
  const float64x2_t vh = vdupq_n_f64(c.h);
  const float64x2_t vdf = vdupq_n_f64(df);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a = vld1q_f64(x1.data() + i);
    const float64x2_t b = vld1q_f64(x2.data() + i);
    float64x2_t t = vsubq_f64(b, vmulq_f64(vld1q_f64(c.stiffness_h.data() + i), a));
    t = vaddq_f64(t, vmulq_f64(vld1q_f64(c.gain.data() + i), vdf));
    const float64x2_t b_new = vmulq_f64(vld1q_f64(c.euler_damp.data() + i), t);
    const float64x2_t drift = fully_implicit ? b_new : b;
    vst1q_f64(x1.data() + i, vaddq_f64(a, vmulq_f64(vh, drift)));
    vst1q_f64(x2.data() + i, b_new);
  }
  for (; i < n; ++i) {
    const double a = x1[i];
    const double b = x2[i];
    double t = b - c.stiffness_h[i] * a;
    t = t + c.gain[i] * df;
    const double b_new = c.euler_damp[i] * t;
    x1[i] = a + c.h * (fully_implicit ? b_new : b);
    x2[i] = b_new;
  }
}

void oscillator_trapezoid(const OscillatorView& c, std::span<double> x1, std::span<double> x2,
                          std::span<const double> euler_x2, double df, bool fully_implicit) {
  const std::size_t n = x1.size();
  const double half_h = 0.5 * c.h;
  const float64x2_t vhh = vdupq_n_f64(half_h);
  const float64x2_t vdf = vdupq_n_f64(df);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a = vld1q_f64(x1.data() + i);
    const float64x2_t b = vld1q_f64(x2.data() + i);
    float64x2_t t = vsubq_f64(vmulq_f64(vld1q_f64(c.trap_keep.data() + i), b),
                              vmulq_f64(vld1q_f64(c.stiffness_h.data() + i), a));
    t = vaddq_f64(t, vmulq_f64(vld1q_f64(c.gain.data() + i), vdf));
    const float64x2_t b_new = vmulq_f64(vld1q_f64(c.trap_damp.data() + i), t);
    const float64x2_t partner = fully_implicit ? b_new : vld1q_f64(euler_x2.data() + i);
    vst1q_f64(x1.data() + i, vaddq_f64(a, vmulq_f64(vhh, vaddq_f64(b, partner))));
    vst1q_f64(x2.data() + i, b_new);
  }
  for (; i < n; ++i) {
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
  const std::size_t n = w.size();
  const float64x2_t vdf = vdupq_n_f64(df);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t t = vaddq_f64(vmulq_f64(vld1q_f64(c.keep.data() + i), vld1q_f64(w.data() + i)),
                                    vmulq_f64(vld1q_f64(c.gain.data() + i), vdf));
    vst1q_f64(w.data() + i, vmulq_f64(vld1q_f64(c.damp.data() + i), t));
  }
  for (; i < n; ++i) {
    const double t = c.keep[i] * w[i] + c.gain[i] * df;
    w[i] = c.damp[i] * t;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a.data() + i), vld1q_f64(b.data() + i)));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const KernelTable kNeonTable{Isa::Neon, &oscillator_euler, &oscillator_trapezoid, &relaxation, &dot};

}  // namespace fracdr::simd::detail
