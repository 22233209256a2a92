#pragma once

// Test-only 1-d adaptive quadrature oracle. Independent of the library's
// integration path: plain adaptive Simpson with recursion-depth control.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double fa, double b,
                      double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(const std::function<double(double)>& f, double a, double fa, double b,
                       double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("oracle quadrature: depth exhausted");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson on [a, b] with absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  // Pre-split into panels so narrow bumps in long intervals are not missed.
  const int panels = 64;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double pa = a + (b - a) * k / panels;
    const double pb = a + (b - a) * (k + 1) / panels;
    const double pm = 0.5 * (pa + pb);
    const double fa = f(pa), fb = f(pb), fm = f(pm);
    const double whole = detail::simpson(f, pa, fa, pb, fb, pm, fm);
    total += detail::adaptive(f, pa, fa, pb, fb, pm, fm, whole, tol / panels, 60);
  }
  return total;
}

}  // namespace oracle
