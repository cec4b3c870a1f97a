#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fracdr/error.hpp"
#include "fracdr/quadrature.hpp"

namespace fracdr {
namespace {
constexpr int kMaxSweeps = 30;
}

TridiagonalEigen symmetric_tridiagonal_eigen(const Tridiagonal& matrix) {
  const std::size_t n = matrix.diag.size();
  if (n == 0) {
    throw std::invalid_argument("symmetric_tridiagonal_eigen: empty matrix");
  }
  if (matrix.offdiag.size() + 1 != n) {
    throw std::invalid_argument("symmetric_tridiagonal_eigen: off-diagonal length must be n-1");
  }

  std::vector<double> d = matrix.diag;
  // e[i] couples i and i+1; e[n-1] is a zero sentinel.
  std::vector<double> e(n, 0.0);
  std::copy(matrix.offdiag.begin(), matrix.offdiag.end(), e.begin());
  // First row of the accumulated rotations.
  std::vector<double> v(n, 0.0);
  v[0] = 1.0;

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps) {
        throw ConvergenceError("symmetric_tridiagonal_eigen: no convergence after 30 sweeps");
      }

      // Wilkinson-type shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = v[i + 1];
        v[i + 1] = s * v[i] + c * f;
        v[i] = c * v[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (const std::size_t i : order) {
    out.values.push_back(d[i]);
    out.first_components.push_back(v[i]);
  }
  return out;
}

}  // namespace fracdr
