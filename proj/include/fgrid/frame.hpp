#pragma once

#include <vector>

#include "fgrid/fft.hpp"
#include "fgrid/linalg.hpp"
#include "fgrid/sampling.hpp"
#include "fgrid/window.hpp"

namespace fgrid {

// The two matrices every frame computation runs on, for a fixed
// (pattern, window, m) triple:
//   Psi(j, l)   = \int_0^1 (1/w) e^{2 pi i (l - lambda_j) x} dx
//   Omega(l, j) = \hat w(l - lambda_j)
// Psi is the collocation matrix of the forward map: row j evaluates the
// measurement <., e^{2 pi i lambda_j x}> of each basis element psi_l, so the
// coefficient solve d = Psi^dagger fhat reproduces the data in least squares.
// Row/column offsets: sample index j -> j + n, mode index l -> l + m.
struct SpectralSystem {
  SamplingPattern pattern;
  WindowSpec window;
  int m = 0;
  ComplexMatrix Psi;   // (2n+1) x (2m+1)
  ComplexMatrix Omega; // (2m+1) x (2n+1)
};

inline SpectralSystem build_system(const SamplingPattern& pattern,
                                   const WindowSpec& window, int m) {
  if (m < 1) throw std::invalid_argument("build_system: m must be >= 1");
  validate(pattern);
  const int n = pattern.n;
  SpectralSystem sys{pattern, window, m,
                     ComplexMatrix(2 * n + 1, 2 * m + 1),
                     ComplexMatrix(2 * m + 1, 2 * n + 1)};
  for (int j = -n; j <= n; ++j) {
    const double lam = pattern.lambda(j);
    for (int l = -m; l <= m; ++l) {
      sys.Psi(j + n, l + m) = recip_moment(window, kTwoPi * (double(l) - lam));
      sys.Omega(l + m, j + n) = transform(window, double(l) - lam);
    }
  }
  return sys;
}

// Coefficients c_l, |l| <= m, of an expansion in psi_l = e^{2 pi i l x} / w.
struct CoefficientVector {
  int m = 0;
  ComplexVector values; // length 2m+1, index l + m

  cd value(int l) const { return values(l + m); }
};

// d = Psi^dagger fhat (minimum-norm least squares).
inline CoefficientVector frame_coeffs(const SpectralSystem& sys,
                                      const ComplexVector& fhat) {
  if (fhat.size() != sys.Psi.rows())
    throw std::invalid_argument("frame_coeffs: dimension mismatch");
  return {sys.m, lstsq(sys.Psi, fhat)};
}

// Evaluates sum_l c_l e^{2 pi i l x} / w(x) at x_p = p/N, p = 0..N-1, via the
// inverse DFT of the zero-extended coefficient array.
inline std::vector<cd> evaluate(const CoefficientVector& coeffs,
                                const WindowSpec& window, int grid_size) {
  const int m = coeffs.m;
  if (grid_size < 2 * m + 1)
    throw std::invalid_argument("evaluate: grid must have at least 2m+1 points");
  std::vector<cd> samples(static_cast<std::size_t>(grid_size), cd(0.0));
  for (int l = -m; l <= m; ++l)
    samples[static_cast<std::size_t>(l >= 0 ? l : grid_size + l)] = coeffs.value(l);
  fft(samples, +1);
  for (int p = 0; p < grid_size; ++p)
    samples[static_cast<std::size_t>(p)] /= eval(window, double(p) / double(grid_size));
  return samples;
}

inline int default_grid_size(int m) { return std::max(1024, 4 * (2 * m + 1)); }

} // namespace fgrid
