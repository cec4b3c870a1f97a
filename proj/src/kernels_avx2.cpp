// Compiled with -mavx2 only; reached through the dispatcher after a CPU check.
// No FMA: products and sums are rounded separately, as in the scalar path.
#include <immintrin.h>

#include "fracdr/simd/kernels.hpp"

namespace fracdr::simd::detail {
namespace {

void oscillator_euler(const OscillatorView& c, std::span<double> x1, std::span<double> x2,
                      double df, bool fully_implicit) {
  const std::size_t n = x1.size();
  const __m256d vh = _mm256_set1_pd(c.h);
  const __m256d vdf = _mm256_set1_pd(df);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x1.data() + i);
    const __m256d b = _mm256_loadu_pd(x2.data() + i);
    __m256d t = _mm256_sub_pd(b, _mm256_mul_pd(_mm256_loadu_pd(c.stiffness_h.data() + i), a));
    t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(c.gain.data() + i), vdf));
    const __m256d b_new = _mm256_mul_pd(_mm256_loadu_pd(c.euler_damp.data() + i), t);
    const __m256d drift = fully_implicit ? b_new : b;
    _mm256_storeu_pd(x1.data() + i, _mm256_add_pd(a, _mm256_mul_pd(vh, drift)));
    _mm256_storeu_pd(x2.data() + i, b_new);
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
  const __m256d vhh = _mm256_set1_pd(half_h);
  const __m256d vdf = _mm256_set1_pd(df);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x1.data() + i);
    const __m256d b = _mm256_loadu_pd(x2.data() + i);
    __m256d t = _mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(c.trap_keep.data() + i), b),
                              _mm256_mul_pd(_mm256_loadu_pd(c.stiffness_h.data() + i), a));
    t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(c.gain.data() + i), vdf));
    const __m256d b_new = _mm256_mul_pd(_mm256_loadu_pd(c.trap_damp.data() + i), t);
    const __m256d partner = fully_implicit ? b_new : _mm256_loadu_pd(euler_x2.data() + i);
    _mm256_storeu_pd(x1.data() + i, _mm256_add_pd(a, _mm256_mul_pd(vhh, _mm256_add_pd(b, partner))));
    _mm256_storeu_pd(x2.data() + i, b_new);
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
  const __m256d vdf = _mm256_set1_pd(df);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(c.keep.data() + i), _mm256_loadu_pd(w.data() + i)),
                                    _mm256_mul_pd(_mm256_loadu_pd(c.gain.data() + i), vdf));
    _mm256_storeu_pd(w.data() + i, _mm256_mul_pd(_mm256_loadu_pd(c.damp.data() + i), t));
  }
  for (; i < n; ++i) {
    const double t = c.keep[i] * w[i] + c.gain[i] * df;
    w[i] = c.damp[i] * t;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc0);
  const __m128d hi = _mm256_extractf128_pd(acc0, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const KernelTable kAvx2Table{Isa::Avx2, &oscillator_euler, &oscillator_trapezoid, &relaxation, &dot};

}  // namespace fracdr::simd::detail
