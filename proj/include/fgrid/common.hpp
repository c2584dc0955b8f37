#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace fgrid {

using cd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace detail {

// SplitMix64 finalizer. All seeded randomness in the library is counter-based
// on top of this, so draws do not depend on evaluation order.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return mix64(mix64(mix64(seed) ^ (0xa0761d6478bd642full * (stream + 1))) ^
               (0xe7037ed1a0b428dbull * (counter + 1)));
}

// uniform in [0, 1)
inline double u01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// standard normal pair from two uniform draws (Box-Muller)
inline std::pair<double, double> normal_pair(std::uint64_t b1, std::uint64_t b2) {
  const double u1 = 1.0 - u01(b1);  // (0, 1]
  const double u2 = u01(b2);
  const double rho = std::sqrt(-2.0 * std::log(u1));
  return {rho * std::cos(kTwoPi * u2), rho * std::sin(kTwoPi * u2)};
}

// Shortest decimal form that round-trips a double exactly.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// \int_{x0}^{x1} e^{z x} dx. A power-series branch takes over near z = 0,
// where the (e^{z x1} - e^{z x0})/z form cancels catastrophically.
inline cd integral_of_exp(cd z, double x0, double x1) {
  if (std::abs(z) < 0.5) {
    cd sum = 0.0;
    cd zk = 1.0;             // z^k / k!
    double p0 = x0, p1 = x1; // x^{k+1}
    for (int k = 0; k < 64; ++k) {
      const cd term = zk * ((p1 - p0) / double(k + 1));
      sum += term;
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
      zk *= z / double(k + 1);
      p0 *= x0;
      p1 *= x1;
    }
    return sum;
  }
  return (std::exp(z * x1) - std::exp(z * x0)) / z;
}

// \int_{x0}^{x1} x e^{z x} dx, same small-|z| guard.
inline cd integral_of_x_exp(cd z, double x0, double x1) {
  if (std::abs(z) < 0.5) {
    cd sum = 0.0;
    cd zk = 1.0;
    double p0 = x0 * x0, p1 = x1 * x1; // x^{k+2}
    for (int k = 0; k < 64; ++k) {
      const cd term = zk * ((p1 - p0) / double(k + 2));
      sum += term;
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
      zk *= z / double(k + 1);
      p0 *= x0;
      p1 *= x1;
    }
    return sum;
  }
  const cd e1 = std::exp(z * x1);
  const cd e0 = std::exp(z * x0);
  return (e1 * (z * x1 - 1.0) - e0 * (z * x0 - 1.0)) / (z * z);
}

} // namespace detail
} // namespace fgrid
