#pragma once

// Per-time-step kernels over the quadrature nodes.
//
// Every kernel exists as a plain scalar reference and, where the target
// allows, as an AVX2 or NEON variant. Vector variants perform the same
// IEEE operations in the same order per element, so the element-wise
// updates are bit-identical to the scalar reference; only `dot` may differ
// by reassociation of the final sum.

#include <cstddef>
#include <span>
#include <string_view>

namespace fracdr::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

/// Per-node coefficients of the 2x2 oscillator system
/// x1' = x2, x2' = -s x1 + forcing, for a fixed step h.
struct OscillatorView {
  std::span<const double> stiffness_h;    // s h
  std::span<const double> euler_damp;     // 1 / (1 + s h^2)
  std::span<const double> trap_keep;      // 1 - s h^2 / 4
  std::span<const double> trap_damp;      // 1 / (1 + s h^2 / 4)
  std::span<const double> gain;           // multiplier of the forcing increment
  double h = 0.0;
};

/// Per-node coefficients of w_k = damp * (keep * w_{k-1} + gain * df).
struct RelaxationView {
  std::span<const double> keep;
  std::span<const double> damp;
  std::span<const double> gain;
};

struct KernelTable {
  Isa isa;

  /// x2 <- damp (x2 - s h x1 + gain df); x1 <- x1 + h x2_old (or x2_new when fully implicit).
  void (*oscillator_euler)(const OscillatorView& c, std::span<double> x1, std::span<double> x2,
                           double df, bool fully_implicit);

  /// x2 <- tdamp (keep x2 - s h x1 + gain df); x1 <- x1 + h/2 (x2_old + partner),
  /// where partner is euler_x2 (the Euler x2 at the new step) or, when
  /// fully implicit, the new trapezoid x2.
  void (*oscillator_trapezoid)(const OscillatorView& c, std::span<double> x1, std::span<double> x2,
                               std::span<const double> euler_x2, double df, bool fully_implicit);

  void (*relaxation)(const RelaxationView& c, std::span<double> w, double df);

  double (*dot)(std::span<const double> a, std::span<const double> b);
};

bool isa_available(Isa isa) noexcept;

/// Kernels for a specific instruction set; throws std::invalid_argument if
/// that set was not compiled in or the running CPU lacks it.
const KernelTable& kernels(Isa isa);

/// Best available kernels, chosen once at first use. Setting the
/// environment variable FRACDR_ISA=scalar forces the reference path.
const KernelTable& active_kernels();

namespace detail {
extern const KernelTable kScalarTable;
#if defined(FRACDR_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(FRACDR_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace fracdr::simd
