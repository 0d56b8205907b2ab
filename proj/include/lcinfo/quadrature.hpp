#ifndef LCINFO_QUADRATURE_HPP
#define LCINFO_QUADRATURE_HPP

#include <cmath>
#include <cstddef>

namespace lcinfo::quad {

// 15-point Gauss-Legendre rule on [a, b].
template <class F>
double gl15(F&& f, double a, double b) {
  static constexpr double xs[8] = {0.0,
                                   0.2011940939974345,
                                   0.3941513470775634,
                                   0.5709721726085388,
                                   0.7244177313601701,
                                   0.8482065834104272,
                                   0.9372733924007060,
                                   0.9879925180204854};
  static constexpr double ws[8] = {0.2025782419255613, 0.1984314853271116,
                                   0.1861610000155622, 0.1662692058169939,
                                   0.1395706779261543, 0.1071592204671719,
                                   0.0703660474881081, 0.0307532419961173};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double acc = ws[0] * f(c);
  for (int k = 1; k < 8; ++k) acc += ws[k] * (f(c - h * xs[k]) + f(c + h * xs[k]));
  return acc * h;
}

namespace detail {
template <class F>
double adaptive_rec(F& f, double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gl15(f, a, m);
  const double right = gl15(f, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= tol) return left + right;
  return adaptive_rec(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_rec(f, m, b, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Gauss-Legendre with absolute tolerance. Bisects until the
// two-panel refinement of each panel moves the estimate by less than the
// local tolerance share.
template <class F>
double adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 40) {
  if (!(b > a)) return 0.0;
  return detail::adaptive_rec(f, a, b, gl15(f, a, b), abs_tol, max_depth);
}

}  // namespace lcinfo::quad

#endif
