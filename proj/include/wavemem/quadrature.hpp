#pragma once

// Numerical integration helpers.  Composite Simpson is the workhorse on
// sampled grids (O(h^4) on smooth exponential integrands, with a single
// trapezoid panel as fallback when the interval count is odd).  A composite
// Gauss-Legendre rule is provided for high-accuracy cross-checks of
// closed-form identities, where 1e-10 absolute residuals are asserted.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "wavemem/common.hpp"

namespace wavemem {

// Integral over a uniform grid of the sampled values; values.size() >= 2.
// Simpson on the largest even interval count, trapezoid on the leading
// leftover interval when the count is odd.
template <typename Scalar>
Scalar simpson(const std::vector<Scalar>& values, double h) {
  const std::size_t n = values.size();
  if (n < 2) throw InvalidInput("simpson: need at least 2 samples");
  Scalar total{};
  std::size_t i = 0;
  if ((n - 1) % 2 != 0) {
    total += (values[0] + values[1]) * (h / 2.0);
    i = 1;
  }
  for (; i + 2 <= n - 1; i += 2) {
    total += (values[i] + 4.0 * values[i + 1] + values[i + 2]) * (h / 3.0);
  }
  return total;
}

namespace detail {

// 20-point Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
// iteration on the Legendre polynomial.
struct GaussLegendre20 {
  double node[20];
  double weight[20];
  GaussLegendre20() {
    const int n = 20;
    for (int i = 0; i < n / 2; ++i) {
      // Chebyshev-like initial guess.
      double x = std::cos(PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      node[i] = -x;
      node[n - 1 - i] = x;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weight[i] = w;
      weight[n - 1 - i] = w;
    }
  }
};

inline const GaussLegendre20& gauss20() {
  static const GaussLegendre20 table;
  return table;
}

}  // namespace detail

// Composite 20-node Gauss-Legendre over `panels` equal panels of [a,b].
inline cplx gauss_integrate(const std::function<cplx(double)>& f, double a,
                            double b, int panels = 32) {
  const auto& gl = detail::gauss20();
  cplx total{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < 20; ++i) {
      total += gl.weight[i] * f(mid + 0.5 * h * gl.node[i]);
    }
  }
  return total * (0.5 * h);
}

}  // namespace wavemem
