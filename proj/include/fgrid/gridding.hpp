#pragma once

#include <optional>
#include <vector>

#include "fgrid/dcf.hpp"

namespace fgrid {

// Optional spectral filter applied to the regridded coefficients.
struct FilterSpec {
  enum class Kind { none, exponential };
  Kind kind = Kind::none;
  int order = 2;          // p in sigma(eta) = exp(-c |eta|^p)
  double strength = 36.0; // c; sigma(1) reaches machine-epsilon scale at c >= 36

  bool operator==(const FilterSpec&) const = default;
};

inline double filter_value(const FilterSpec& f, double eta) {
  if (f.kind == FilterSpec::Kind::none) return 1.0;
  return std::exp(-f.strength * std::pow(std::abs(eta), double(f.order)));
}

// Kernel-truncated regridding:
//   g(l) = sum over { k : |l - lambda_k| <= q } of alpha_k fhat_k what(l - lambda_k).
// q = nullopt keeps every term and reproduces Omega D fhat exactly.
inline CoefficientVector regrid(const SpectralSystem& sys, const DcfOperator& D,
                                const ComplexVector& fhat,
                                std::optional<double> q = std::nullopt) {
  if (!D.diagonal())
    throw std::invalid_argument("regrid: D must be diagonal");
  if (fhat.size() != sys.Omega.cols() || D.size() != int(sys.Omega.cols()))
    throw std::invalid_argument("regrid: dimension mismatch");
  if (q && !(*q > 0.0))
    throw std::invalid_argument("regrid: q must be positive");
  const ComplexVector v = D.apply(fhat);
  const int n = sys.pattern.n;
  const int m = sys.m;
  ComplexVector c = ComplexVector::Zero(2 * m + 1);
  for (int l = -m; l <= m; ++l) {
    cd acc = 0.0;
    for (int j = -n; j <= n; ++j) {
      if (q && std::abs(double(l) - sys.pattern.lambda(j)) > *q) continue;
      acc += sys.Omega(l + m, j + n) * v(j + n);
    }
    c(l + m) = acc;
  }
  return {m, std::move(c)};
}

inline void apply_filter(CoefficientVector& coeffs, const FilterSpec& filter) {
  if (filter.kind == FilterSpec::Kind::none) return;
  const int m = coeffs.m;
  for (int l = -m; l <= m; ++l)
    coeffs.values(l + m) *= filter_value(filter, double(std::abs(l)) / double(m));
}

// Regrid, filter, inverse FFT to the N-grid, divide out the window.
inline std::vector<cd> reconstruct_cg(const SpectralSystem& sys, const DcfOperator& D,
                                      const ComplexVector& fhat,
                                      std::optional<double> q, const FilterSpec& filter,
                                      int grid_size) {
  CoefficientVector coeffs = regrid(sys, D, fhat, q);
  apply_filter(coeffs, filter);
  return evaluate(coeffs, sys.window, grid_size);
}

} // namespace fgrid
