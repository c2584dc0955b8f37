#pragma once

#include <algorithm>
#include <vector>

#include "fgrid/gridding.hpp"
#include "fgrid/testfns.hpp"

namespace fgrid {

// Regularization and peak-acceptance parameters for jump detection. The
// recovered field approximates sum_j [f](xi_j) h((x - xi_j)/epsilon) with
// h(u) = exp(-b u^2).
struct EdgeConfig {
  double epsilon = 0.02;
  double bump_b = 5.0;
  double threshold = 0.3;      // fraction of the global max
  double min_amplitude = 0.25; // absolute floor, rejects smooth-residue peaks
};

inline void validate(const EdgeConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("edge: epsilon must be positive");
  if (!(cfg.bump_b > 0.0)) throw std::invalid_argument("edge: bump width must be positive");
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0))
    throw std::invalid_argument("edge: threshold must lie in (0,1)");
  if (!(cfg.min_amplitude >= 0.0))
    throw std::invalid_argument("edge: min amplitude must be nonnegative");
}

// Full-line transform of the Gaussian bump: hhat(xi) = sqrt(pi/b) e^{-pi^2 xi^2 / b}.
inline double bump_transform(double b, double xi) {
  return std::sqrt(kPi / b) * std::exp(-kPi * kPi * xi * xi / b);
}

// Spectral data of the regularized jump field:
//   h_j = 2 pi i lambda_j epsilon fhat_j hhat(lambda_j epsilon);
// exactly zero wherever lambda_j = 0.
inline ComplexVector concentration_coeffs(const SamplingPattern& pattern,
                                          const ComplexVector& fhat,
                                          const EdgeConfig& cfg) {
  validate(cfg);
  if (fhat.size() != pattern.count())
    throw std::invalid_argument("concentration_coeffs: dimension mismatch");
  ComplexVector h(pattern.count());
  for (int j = -pattern.n; j <= pattern.n; ++j) {
    const double lam = pattern.lambda(j);
    h(j + pattern.n) = cd(0.0, kTwoPi * lam * cfg.epsilon) * fhat(j + pattern.n) *
                       bump_transform(cfg.bump_b, lam * cfg.epsilon);
  }
  return h;
}

// Grid evaluation of an edge coefficient vector; the real part carries the
// signal, the imaginary residue is kept as a quality diagnostic.
struct EdgeMap {
  std::vector<double> values;
  double imag_l2 = 0.0;
};

inline EdgeMap edge_map_from_coeffs(const CoefficientVector& coeffs,
                                    const WindowSpec& window, int grid_size) {
  const std::vector<cd> samples = evaluate(coeffs, window, grid_size);
  EdgeMap out;
  out.values.resize(samples.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out.values[i] = samples[i].real();
    acc += samples[i].imag() * samples[i].imag();
  }
  out.imag_l2 = std::sqrt(acc / double(samples.size()));
  return out;
}

struct JumpPeak {
  double location;
  double amplitude; // signed sample value at the peak
};
using JumpEstimate = std::vector<JumpPeak>;

// Strict local extrema of |samples| above both the relative threshold and the
// absolute floor, greedily separated by at least epsilon.
inline JumpEstimate locate_jumps(const std::vector<double>& samples,
                                 const EdgeConfig& cfg) {
  validate(cfg);
  const int grid_n = int(samples.size());
  if (grid_n < 3) return {};
  double gmax = 0.0;
  for (double s : samples) gmax = std::max(gmax, std::abs(s));
  const double floor_value = std::max(cfg.threshold * gmax, cfg.min_amplitude);

  std::vector<int> candidates;
  for (int p = 1; p + 1 < grid_n; ++p) {
    const double v = std::abs(samples[p]);
    if (v < floor_value) continue;
    if (v > std::abs(samples[p - 1]) && v > std::abs(samples[p + 1]))
      candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    const double va = std::abs(samples[a]), vb = std::abs(samples[b]);
    if (va != vb) return va > vb;
    return a < b;
  });

  JumpEstimate accepted;
  for (int p : candidates) {
    const double x = double(p) / double(grid_n);
    bool clear = true;
    for (const auto& peak : accepted)
      if (std::abs(x - peak.location) < cfg.epsilon) {
        clear = false;
        break;
      }
    if (clear) accepted.push_back({x, samples[p]});
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const JumpPeak& a, const JumpPeak& b) { return a.location < b.location; });
  return accepted;
}

// The exact regularized field sum_j amp_j h((x - xi_j)/epsilon) on the grid.
inline std::vector<double> target_edge_field(const JumpList& jump_list,
                                             const EdgeConfig& cfg, int grid_size) {
  std::vector<double> field(static_cast<std::size_t>(grid_size), 0.0);
  for (int p = 0; p < grid_size; ++p) {
    const double x = double(p) / double(grid_size);
    double acc = 0.0;
    for (const auto& jmp : jump_list) {
      const double u = (x - jmp.xi) / cfg.epsilon;
      acc += jmp.amplitude * std::exp(-cfg.bump_b * u * u);
    }
    field[static_cast<std::size_t>(p)] = acc;
  }
  return field;
}

} // namespace fgrid
