// Test-only oracles, kept independent of the library paths they check:
// composite Gauss-Legendre quadrature with uniform panel doubling (the library
// uses adaptive bisection), direct DFT summation, and a golden-section scalar
// minimizer.
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

// 16-point Gauss-Legendre nodes/weights (validated by polynomial exactness in
// the window test suite).
inline constexpr double kNodes[8] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
    0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
    0.94457502307323258, 0.98940093499164993};
inline constexpr double kWeights[8] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
    0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
    0.06225352393864789, 0.02715245941175409};

template <class F>
cd panel(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cd acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kNodes[i];
    acc += kWeights[i] * (f(c - dx) + f(c + dx));
  }
  return acc * h;
}

template <class F>
cd composite(F&& f, double a, double b, int panels) {
  cd acc = 0.0;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) acc += panel(f, a + i * h, a + (i + 1) * h);
  return acc;
}

// Uniform panel doubling until two successive refinements agree.
template <class F>
cd integrate(F&& f, double a, double b, double tol = 1e-13) {
  int panels = 8;
  cd prev = composite(f, a, b, panels);
  for (int round = 0; round < 16; ++round) {
    panels *= 2;
    const cd next = composite(f, a, b, panels);
    if (std::abs(next - prev) < tol) return next;
    prev = next;
  }
  throw std::runtime_error("oracle quadrature did not settle");
}

// 64-panel composite at a fixed resolution (the window-integral cross-check).
template <class F>
cd composite64(F&& f, double a, double b) {
  return composite(f, a, b, 64);
}

// sum_{|l|<=m} c_{l} e^{2 pi i l p / N} by direct summation.
inline std::vector<cd> direct_dft(const Eigen::VectorXcd& coeffs, int grid) {
  const int m = (int(coeffs.size()) - 1) / 2;
  std::vector<cd> out(static_cast<size_t>(grid));
  for (int p = 0; p < grid; ++p) {
    cd acc = 0.0;
    for (int l = -m; l <= m; ++l)
      acc += coeffs(l + m) * std::polar(1.0, 2.0 * kPi * l * double(p) / double(grid));
    out[static_cast<size_t>(p)] = acc;
  }
  return out;
}

// Golden-section minimizer of a unimodal scalar function on [lo, hi].
inline double golden_section(const std::function<double(double)>& f, double lo,
                             double hi, double tol = 1e-10) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Complex scalar argmin of ||a T - P|| via two independent golden sections
// (the objective is separable in Re a and Im a).
inline cd golden_scalar_minimizer(const Eigen::VectorXcd& T, const Eigen::VectorXcd& P) {
  const double tn = T.norm();
  if (tn == 0.0) return cd(0.0);
  const double radius = 2.0 * P.norm() / tn + 1.0;
  const double tol = 1e-10 * std::max(1.0, radius);
  const double re = golden_section(
      [&](double a) { return (cd(a, 0.0) * T - P).norm(); }, -radius, radius, tol);
  const double im = golden_section(
      [&](double a) { return (cd(0.0, a) * T - P).norm(); }, -radius, radius, tol);
  return cd(re, im);
}

// Deterministic pseudo-random doubles for test fixtures.
inline double test_u01(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t x = seed * 0x9e3779b97f4a7c15ull + (i + 1) * 0xbf58476d1ce4e5b9ull;
  x ^= x >> 31;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 29;
  return double(x >> 11) * 0x1.0p-53;
}

inline Eigen::MatrixXcd random_matrix(int rows, int cols, std::uint64_t seed) {
  Eigen::MatrixXcd M(rows, cols);
  std::uint64_t i = 0;
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      M(r, c) = cd(2.0 * test_u01(seed, i) - 1.0, 2.0 * test_u01(seed, i + 1) - 1.0);
      i += 2;
    }
  return M;
}

} // namespace oracle
