#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fgrid/common.hpp"

namespace fgrid {

enum class SamplingKind { uniform, jittered, logarithmic, custom };

// Ordered frequencies lambda_{-n..n} together with their generation metadata.
// Immutable after construction; safe to share across threads.
struct SamplingPattern {
  SamplingKind kind = SamplingKind::uniform;
  int n = 0;
  double theta = 0.0;     // jittered: max jitter
  std::uint64_t seed = 0; // jittered
  double v = 0.0;         // logarithmic: min magnitude 10^{-v}
  std::vector<double> lambdas; // size 2n+1, strictly increasing

  int count() const { return 2 * n + 1; }
  double lambda(int k) const { return lambdas[static_cast<std::size_t>(k + n)]; }
};

inline void validate(const SamplingPattern& p) {
  if (p.n < 1) throw std::invalid_argument("sampling: n must be >= 1");
  if (p.lambdas.size() != static_cast<std::size_t>(2 * p.n + 1))
    throw std::invalid_argument("sampling: expected 2n+1 frequencies");
  for (std::size_t i = 1; i < p.lambdas.size(); ++i)
    if (!(p.lambdas[i] > p.lambdas[i - 1]))
      throw std::invalid_argument("sampling: frequencies must be strictly increasing");
}

inline SamplingPattern uniform_pattern(int n) {
  if (n < 1) throw std::invalid_argument("uniform: n must be >= 1");
  SamplingPattern p;
  p.kind = SamplingKind::uniform;
  p.n = n;
  p.lambdas.resize(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) p.lambdas[k + n] = double(k);
  return p;
}

// lambda_k = k + s_k tau_k with tau_k ~ U[0, theta] and an independent
// equiprobable sign. Bit-identical for a fixed (n, theta, seed).
inline SamplingPattern jittered_pattern(int n, double theta, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("jittered: n must be >= 1");
  if (!(theta >= 0.0 && theta < 0.5))
    throw std::invalid_argument("jittered: theta must lie in [0, 1/2)");
  SamplingPattern p;
  p.kind = SamplingKind::jittered;
  p.n = n;
  p.theta = theta;
  p.seed = seed;
  p.lambdas.resize(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) {
    const std::uint64_t idx = std::uint64_t(k + n);
    const double tau = theta * detail::u01(detail::draw(seed, idx, 0));
    const bool plus = detail::draw(seed, idx, 1) & 1ull;
    p.lambdas[idx] = double(k) + (plus ? tau : -tau);
  }
  validate(p);
  return p;
}

// Symmetric pattern with lambda_0 = 0 and n log-spaced magnitudes per side,
// running from exactly 10^{-v} up to exactly n.
inline SamplingPattern logarithmic_pattern(int n, double v) {
  if (n < 2) throw std::invalid_argument("logarithmic: n must be >= 2");
  if (!(v > 0.0)) throw std::invalid_argument("logarithmic: v must be positive");
  SamplingPattern p;
  p.kind = SamplingKind::logarithmic;
  p.n = n;
  p.v = v;
  p.lambdas.assign(static_cast<std::size_t>(2 * n + 1), 0.0);
  const double step = (std::log10(double(n)) + v) / double(n - 1);
  for (int k = 1; k <= n; ++k) {
    const double mag = (k == n) ? double(n) : std::pow(10.0, -v + double(k - 1) * step);
    p.lambdas[n + k] = mag;
    p.lambdas[n - k] = -mag;
  }
  validate(p);
  return p;
}

inline const char* to_token(SamplingKind k) {
  switch (k) {
    case SamplingKind::uniform: return "uniform";
    case SamplingKind::jittered: return "jittered";
    case SamplingKind::logarithmic: return "log";
    case SamplingKind::custom: return "custom";
  }
  return "uniform";
}

inline SamplingKind sampling_kind_from_token(const std::string& s) {
  if (s == "uniform") return SamplingKind::uniform;
  if (s == "jittered") return SamplingKind::jittered;
  if (s == "log") return SamplingKind::logarithmic;
  if (s == "custom") return SamplingKind::custom;
  throw std::invalid_argument("unknown sampling kind: " + s);
}

// Two-column text: index k and lambda_k with 17 significant digits, so the
// values survive a write/read cycle bit-exactly.
inline void save_pattern(const SamplingPattern& p, std::ostream& os) {
  os << "# sampling kind=" << to_token(p.kind) << " n=" << p.n;
  if (p.kind == SamplingKind::jittered)
    os << " theta=" << detail::fmt17(p.theta) << " seed=" << p.seed;
  if (p.kind == SamplingKind::logarithmic) os << " v=" << detail::fmt17(p.v);
  os << "\n";
  for (int k = -p.n; k <= p.n; ++k)
    os << k << " " << detail::fmt17(p.lambda(k)) << "\n";
}

inline SamplingPattern load_pattern(std::istream& is) {
  SamplingPattern p;
  std::vector<double> lambdas;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string word;
      while (meta >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = word.substr(0, eq);
        const std::string val = word.substr(eq + 1);
        if (key == "kind") p.kind = sampling_kind_from_token(val);
        else if (key == "n") p.n = std::stoi(val);
        else if (key == "theta") p.theta = std::strtod(val.c_str(), nullptr);
        else if (key == "seed") p.seed = std::stoull(val);
        else if (key == "v") p.v = std::strtod(val.c_str(), nullptr);
      }
      continue;
    }
    std::istringstream row(line);
    long long k;
    std::string val;
    if (!(row >> k >> val)) throw std::invalid_argument("pattern file: malformed row: " + line);
    lambdas.push_back(std::strtod(val.c_str(), nullptr));
  }
  if (lambdas.empty() || lambdas.size() % 2 == 0)
    throw std::invalid_argument("pattern file: expected an odd number of rows");
  if (p.n == 0) p.n = (int(lambdas.size()) - 1) / 2;
  p.lambdas = std::move(lambdas);
  validate(p);
  return p;
}

} // namespace fgrid
