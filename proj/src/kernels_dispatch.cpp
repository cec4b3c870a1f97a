#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fracdr/simd/kernels.hpp"

namespace fracdr::simd {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(FRACDR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(FRACDR_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel set '" + std::string(to_string(isa)) + "' is not available");
  }
  switch (isa) {
#if defined(FRACDR_HAVE_AVX2)
    case Isa::Avx2: return detail::kAvx2Table;
#endif
#if defined(FRACDR_HAVE_NEON)
    case Isa::Neon: return detail::kNeonTable;
#endif
    default: return detail::kScalarTable;
  }
}

namespace {
const KernelTable& pick() {
  if (const char* forced = std::getenv("FRACDR_ISA")) {
    const std::string name(forced);
    for (const Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == to_string(isa) && isa_available(isa)) return kernels(isa);
    }
  }
  if (isa_available(Isa::Avx2)) return kernels(Isa::Avx2);
  if (isa_available(Isa::Neon)) return kernels(Isa::Neon);
  return kernels(Isa::Scalar);
}
}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = pick();
  return table;
}

}  // namespace fracdr::simd
