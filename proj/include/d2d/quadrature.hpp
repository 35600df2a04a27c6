#pragma once

#include <cmath>
#include <utility>

#include "d2d/errors.hpp"

// Adaptive Gauss-Kronrod (G7, K15) quadrature. Nodes are interior, so
// integrands may be singular or undefined exactly at the endpoints.

namespace d2d {

namespace detail {

// Standard 15-point Kronrod abscissae (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

// One K15 panel; returns {kronrod estimate, |kronrod - gauss|}.
template <typename F>
std::pair<double, double> kronrod_panel(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[8];
  fv[7] = f(center);
  double kronrod = kKronrodWeights[7] * fv[7];
  double gauss = kGaussWeights[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    const double x = half * kKronrodNodes[j];
    const double sum = f(center - x) + f(center + x);
    fv[j] = sum;
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

// Integrates f over [a, b] to the given absolute tolerance by bisecting the
// worst panel first (simple recursive tolerance splitting). Throws
// QuadratureError, carrying the offending subinterval, when the panel budget
// or recursion depth is exhausted or the integrand turns non-finite.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          int max_panels = 100000) {
  if (!(a < b)) return 0.0;
  int budget = max_panels;
  struct Impl {
    F& fn;
    int& budget;
    double helper(double lo, double hi, double tol, int depth) {
      auto [value, err] = detail::kronrod_panel(fn, lo, hi);
      if (!std::isfinite(value)) {
        throw QuadratureError("quadrature: non-finite integrand", lo, hi);
      }
      if (err <= tol || err <= 1e-300) return value;
      if (depth <= 0 || budget <= 0) {
        throw QuadratureError("quadrature: tolerance not reached", lo, hi);
      }
      budget -= 2;
      const double mid = 0.5 * (lo + hi);
      return helper(lo, mid, 0.5 * tol, depth - 1) +
             helper(mid, hi, 0.5 * tol, depth - 1);
    }
  };
  Impl impl{f, budget};
  return impl.helper(a, b, abs_tol, 60);
}

}  // namespace d2d
