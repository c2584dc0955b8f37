#pragma once

#include "fgrid/common.hpp"

namespace fgrid {

enum class WindowKind { exponential, constant };

// Window w on [0,1], bounded away from zero, with closed forms for its
// transform and for the reciprocal moments every frame computation needs.
// Further window families can hook in behind the same three integrals.
struct WindowSpec {
  WindowKind kind = WindowKind::constant;
  double a = 0.0; // exponential decay rate
  double alpha_lower = 1.0;
  double alpha_upper = 1.0;
};

// w(x) = e^{-a |x - 1/2|}
inline WindowSpec exponential_window(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("window: a must be positive");
  WindowSpec w;
  w.kind = WindowKind::exponential;
  w.a = a;
  w.alpha_lower = std::exp(-0.5 * a);
  w.alpha_upper = 1.0;
  return w;
}

inline WindowSpec constant_window() { return WindowSpec{}; }

inline double eval(const WindowSpec& w, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("window eval: x outside [0,1]");
  if (w.kind == WindowKind::constant) return 1.0;
  return std::exp(-w.a * std::abs(x - 0.5));
}

// \hat w(xi) = \int_0^1 w(x) e^{-2 pi i xi x} dx, split at x = 1/2 so each
// half is an elementary exponential integral.
inline cd transform(const WindowSpec& w, double xi) {
  const cd phase(0.0, -kTwoPi * xi);
  if (w.kind == WindowKind::constant)
    return detail::integral_of_exp(phase, 0.0, 1.0);
  const double a = w.a;
  return std::exp(-0.5 * a) * detail::integral_of_exp(cd(a, 0.0) + phase, 0.0, 0.5) +
         std::exp(0.5 * a) * detail::integral_of_exp(cd(-a, 0.0) + phase, 0.5, 1.0);
}

// \int_0^1 (1/w(x)) e^{i beta x} dx
inline cd recip_moment(const WindowSpec& w, double beta) {
  const cd phase(0.0, beta);
  if (w.kind == WindowKind::constant)
    return detail::integral_of_exp(phase, 0.0, 1.0);
  const double a = w.a;
  return std::exp(0.5 * a) * detail::integral_of_exp(cd(-a, 0.0) + phase, 0.0, 0.5) +
         std::exp(-0.5 * a) * detail::integral_of_exp(cd(a, 0.0) + phase, 0.5, 1.0);
}

// \int_0^1 (1/w^2(x)) e^{i beta x} dx
inline cd recip_second_moment(const WindowSpec& w, double beta) {
  const cd phase(0.0, beta);
  if (w.kind == WindowKind::constant)
    return detail::integral_of_exp(phase, 0.0, 1.0);
  const double a2 = 2.0 * w.a;
  return std::exp(w.a) * detail::integral_of_exp(cd(-a2, 0.0) + phase, 0.0, 0.5) +
         std::exp(-w.a) * detail::integral_of_exp(cd(a2, 0.0) + phase, 0.5, 1.0);
}

} // namespace fgrid
