#pragma once

#include <stdexcept>

#include "fgrid/common.hpp"

namespace fgrid {
namespace quad {

// 16-point Gauss-Legendre rule on [-1, 1]; nodes are +/- these abscissae.
inline constexpr double kGl16Nodes[8] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
    0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
    0.94457502307323258, 0.98940093499164993};
inline constexpr double kGl16Weights[8] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
    0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
    0.06225352393864789, 0.02715245941175409};

template <class F>
cd gl16(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  cd acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kGl16Nodes[i];
    acc += kGl16Weights[i] * (f(c - dx) + f(c + dx));
  }
  return acc * h;
}

namespace detail {

template <class F>
cd refine(F& f, double a, double b, cd coarse, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const cd left = gl16(f, a, mid);
  const cd right = gl16(f, mid, b);
  const cd fine = left + right;
  if (std::abs(fine - coarse) <= 0.5 * tol) return fine;
  if (depth >= 48)
    throw std::runtime_error("quadrature: panel refinement failed to converge");
  return refine(f, a, mid, left, 0.5 * tol, depth + 1) +
         refine(f, mid, b, right, 0.5 * tol, depth + 1);
}

} // namespace detail

// Adaptive panel-splitting integration to an absolute tolerance.
template <class F>
cd integrate(F&& f, double a, double b, double abs_tol = 1e-12) {
  return detail::refine(f, a, b, gl16(f, a, b), abs_tol, 0);
}

} // namespace quad
} // namespace fgrid
