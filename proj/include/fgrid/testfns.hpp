#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fgrid/common.hpp"
#include "fgrid/quadrature.hpp"
#include "fgrid/sampling.hpp"

namespace fgrid {

enum class PieceKind {
  constant,   // p
  affine,     // p + q x
  affine_sin, // p + q x + sin(u x + phi)
  chirp       // cos^2(pi (x-1/2)^2) sin(10 (x-1/2)^2)
};

// One branch of a piecewise definition, live on [x0, x1). A piece whose right
// endpoint is the domain end x = 1 is closed there.
struct Piece {
  PieceKind kind = PieceKind::constant;
  double x0 = 0.0, x1 = 1.0;
  double p = 0.0, q = 0.0;
  double u = 0.0, phi = 0.0;
};

struct PiecewiseFunction {
  std::vector<Piece> pieces; // sorted, pairwise disjoint, inside [0,1]
};

struct Jump {
  double xi;        // location in (0,1)
  double amplitude; // right limit minus left limit
};
using JumpList = std::vector<Jump>;

namespace detail {

inline double chirp_value(double x) {
  const double t = (x - 0.5) * (x - 0.5);
  const double c = std::cos(kPi * t);
  return c * c * std::sin(10.0 * t);
}

inline double piece_value(const Piece& pc, double x) {
  switch (pc.kind) {
    case PieceKind::constant: return pc.p;
    case PieceKind::affine: return pc.p + pc.q * x;
    case PieceKind::affine_sin: return pc.p + pc.q * x + std::sin(pc.u * x + pc.phi);
    case PieceKind::chirp: return chirp_value(x);
  }
  return 0.0;
}

// \int_{x0}^{x1} term(x) e^{z x} dx with z = -2 pi i lambda.
inline cd piece_fourier(const Piece& pc, double lambda, double abs_tol) {
  const cd z(0.0, -kTwoPi * lambda);
  switch (pc.kind) {
    case PieceKind::constant:
      return pc.p * integral_of_exp(z, pc.x0, pc.x1);
    case PieceKind::affine:
      return pc.p * integral_of_exp(z, pc.x0, pc.x1) +
             pc.q * integral_of_x_exp(z, pc.x0, pc.x1);
    case PieceKind::affine_sin: {
      // sin(u x + phi) = (e^{i(u x + phi)} - e^{-i(u x + phi)}) / 2i; the
      // small-denominator guard in integral_of_exp covers resonance with z.
      const cd up(0.0, pc.u);
      const cd eip = std::polar(1.0, pc.phi);
      const cd sine = (eip * integral_of_exp(z + up, pc.x0, pc.x1) -
                       std::conj(eip) * integral_of_exp(z - up, pc.x0, pc.x1)) /
                      cd(0.0, 2.0);
      return pc.p * integral_of_exp(z, pc.x0, pc.x1) +
             pc.q * integral_of_x_exp(z, pc.x0, pc.x1) + sine;
    }
    case PieceKind::chirp:
      return quad::integrate(
          [&](double x) { return chirp_value(x) * std::polar(1.0, -kTwoPi * lambda * x); },
          pc.x0, pc.x1, abs_tol);
  }
  return cd(0.0);
}

} // namespace detail

inline void validate(const PiecewiseFunction& f) {
  double prev_end = 0.0;
  for (const auto& pc : f.pieces) {
    if (!(pc.x0 >= 0.0 && pc.x1 <= 1.0 && pc.x0 < pc.x1))
      throw std::invalid_argument("piecewise: intervals must be ordered inside [0,1]");
    if (pc.x0 < prev_end)
      throw std::invalid_argument("piecewise: intervals must be pairwise disjoint");
    prev_end = pc.x1;
  }
}

// Smooth chirp product supported on [0,1].
inline PiecewiseFunction ex41() {
  PiecewiseFunction f;
  f.pieces.push_back({PieceKind::chirp, 0.0, 1.0, 0, 0, 0, 0});
  return f;
}

// Piecewise-continuous profile with six jumps; zero at both domain ends.
inline PiecewiseFunction ex42() {
  PiecewiseFunction f;
  f.pieces.push_back({PieceKind::constant, 0.125, 0.25, 1.5, 0, 0, 0});
  f.pieces.push_back({PieceKind::affine_sin, 0.375, 0.5625, 1.75, -0.5, kTwoPi, -0.25});
  f.pieces.push_back({PieceKind::affine, 0.6875, 0.875, -5.0, 2.75, 0, 0});
  return f;
}

// Exact branch evaluation; returns the right limit at breakpoints.
inline double eval(const PiecewiseFunction& f, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("piecewise eval: x outside [0,1]");
  for (const auto& pc : f.pieces) {
    const bool inside = x >= pc.x0 && (x < pc.x1 || (x == pc.x1 && pc.x1 == 1.0));
    if (inside) return detail::piece_value(pc, x);
  }
  return 0.0;
}

// \hat f(lambda) = \int_0^1 f(x) e^{-2 pi i lambda x} dx; closed form for all
// elementary branches, adaptive quadrature for the chirp product.
inline cd fourier(const PiecewiseFunction& f, double lambda, double abs_tol = 1e-12) {
  cd acc = 0.0;
  for (const auto& pc : f.pieces) acc += detail::piece_fourier(pc, lambda, abs_tol);
  return acc;
}

// One-sided limits at every interval endpoint where they differ.
inline JumpList jumps(const PiecewiseFunction& f) {
  std::vector<double> points;
  for (const auto& pc : f.pieces) {
    if (pc.x0 > 0.0 && pc.x0 < 1.0) points.push_back(pc.x0);
    if (pc.x1 > 0.0 && pc.x1 < 1.0) points.push_back(pc.x1);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  JumpList out;
  for (double b : points) {
    double left = 0.0, right = 0.0;
    for (const auto& pc : f.pieces) {
      if (pc.x0 < b && b <= pc.x1) left = detail::piece_value(pc, b);
      if (pc.x0 <= b && b < pc.x1) right = detail::piece_value(pc, b);
    }
    const double amp = right - left;
    if (std::abs(amp) > 1e-14) out.push_back({b, amp});
  }
  return out;
}

// Frame data \hat f(lambda_j), j = -n..n.
inline Eigen::VectorXcd sample_fourier(const PiecewiseFunction& f, const SamplingPattern& p) {
  Eigen::VectorXcd fhat(p.count());
  for (int j = -p.n; j <= p.n; ++j) fhat(j + p.n) = fourier(f, p.lambda(j));
  return fhat;
}

// Adds a complex Gaussian perturbation of standard deviation sigma (total
// complex std; each component gets sigma/sqrt(2)) to every sample.
inline void perturb_samples(Eigen::VectorXcd& fhat, double sigma, std::uint64_t seed) {
  if (sigma == 0.0) return;
  const double comp = sigma / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < fhat.size(); ++j) {
    const auto g = detail::normal_pair(detail::draw(seed, std::uint64_t(j), 101),
                                       detail::draw(seed, std::uint64_t(j), 102));
    fhat(j) += cd(comp * g.first, comp * g.second);
  }
}

struct SampledData {
  std::vector<double> lambdas;
  Eigen::VectorXcd fhat;
};

// Three-column text: lambda, Re fhat, Im fhat.
inline void save_samples(const SampledData& d, std::ostream& os) {
  os << "# samples lambda re im\n";
  for (std::size_t i = 0; i < d.lambdas.size(); ++i)
    os << detail::fmt17(d.lambdas[i]) << " "
       << detail::fmt17(d.fhat(Eigen::Index(i)).real()) << " "
       << detail::fmt17(d.fhat(Eigen::Index(i)).imag()) << "\n";
}

inline SampledData load_samples(std::istream& is) {
  SampledData d;
  std::vector<cd> vals;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!(row >> a >> b >> c))
      throw std::invalid_argument("sample file: malformed row: " + line);
    d.lambdas.push_back(std::strtod(a.c_str(), nullptr));
    vals.emplace_back(std::strtod(b.c_str(), nullptr), std::strtod(c.c_str(), nullptr));
  }
  if (vals.empty() || vals.size() % 2 == 0)
    throw std::invalid_argument("sample file: expected an odd number of rows");
  d.fhat = Eigen::Map<const Eigen::VectorXcd>(vals.data(), Eigen::Index(vals.size()));
  return d;
}

// Wraps externally supplied frequencies as a pattern.
inline SamplingPattern pattern_from_lambdas(const std::vector<double>& lambdas) {
  SamplingPattern p;
  p.kind = SamplingKind::custom;
  p.n = (int(lambdas.size()) - 1) / 2;
  p.lambdas = lambdas;
  validate(p);
  return p;
}

} // namespace fgrid
