#include <catch2/catch.hpp>

#include <sstream>

#include "fgrid/sampling.hpp"

using namespace fgrid;

TEST_CASE("uniform pattern is the integer grid", "[sampling]") {
  const auto p1 = uniform_pattern(1);
  REQUIRE(p1.lambdas == std::vector<double>{-1.0, 0.0, 1.0});

  const auto p4 = uniform_pattern(4);
  REQUIRE(p4.count() == 9);
  for (int k = -4; k <= 4; ++k) REQUIRE(p4.lambda(k) == double(k));

  // theta = 0 degeneracy
  const auto j4 = jittered_pattern(4, 0.0, 12345);
  REQUIRE(j4.lambdas == p4.lambdas);

  REQUIRE_THROWS_AS(uniform_pattern(0), std::invalid_argument);
}

TEST_CASE("jittered pattern respects the jitter bound", "[sampling]") {
  const auto p = jittered_pattern(16, 0.25, 7);
  REQUIRE(p.count() == 33);
  for (int k = -16; k <= 16; ++k) REQUIRE(std::abs(p.lambda(k) - k) <= 0.25);
  for (int k = -16; k < 16; ++k) REQUIRE(p.lambda(k + 1) > p.lambda(k));

  // consecutive gaps at least 1 - 2 theta
  for (int k = -16; k < 16; ++k)
    REQUIRE(p.lambda(k + 1) - p.lambda(k) >= 1.0 - 2.0 * 0.25);

  const auto zero = jittered_pattern(16, 0.0, 7);
  for (int k = -16; k <= 16; ++k) REQUIRE(zero.lambda(k) == double(k));

  REQUIRE_THROWS_AS(jittered_pattern(16, 0.5, 7), std::invalid_argument);
  REQUIRE_THROWS_AS(jittered_pattern(16, 0.7, 7), std::invalid_argument);
  REQUIRE_THROWS_AS(jittered_pattern(0, 0.1, 7), std::invalid_argument);
}

TEST_CASE("jittered pattern is seed-deterministic", "[sampling]") {
  const auto a = jittered_pattern(64, 0.25, 42);
  const auto b = jittered_pattern(64, 0.25, 42);
  REQUIRE(a.lambdas == b.lambdas); // bit-identical
  const auto c = jittered_pattern(64, 0.25, 43);
  REQUIRE(a.lambdas != c.lambdas);
}

TEST_CASE("jitter mean stays near zero", "[sampling]") {
  // tolerance 0.05 established by this Monte-Carlo sweep (worst observed
  // |mean| over 100 seeds is 0.028 at n=128, theta=1/4)
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto p = jittered_pattern(128, 0.25, seed);
    double mean = 0.0;
    for (int k = -128; k <= 128; ++k) mean += p.lambda(k) - k;
    mean /= double(p.count());
    worst = std::max(worst, std::abs(mean));
    if (seed == 1) REQUIRE(std::abs(mean) <= 0.05);
  }
  REQUIRE(worst <= 0.05);
}

TEST_CASE("logarithmic pattern endpoints and spacing", "[sampling]") {
  const auto p2 = logarithmic_pattern(2, 1.0);
  REQUIRE(p2.lambdas == std::vector<double>{-2.0, -0.1, 0.0, 0.1, 2.0});

  const auto p = logarithmic_pattern(16, 1.0);
  REQUIRE(p.count() == 33);
  for (int k = -16; k < 16; ++k) REQUIRE(p.lambda(k + 1) > p.lambda(k));
  REQUIRE(p.lambda(0) == 0.0);
  REQUIRE(p.lambda(1) == std::pow(10.0, -1.0));
  REQUIRE(p.lambda(16) == 16.0);
  for (int k = 1; k <= 16; ++k) REQUIRE(p.lambda(-k) == -p.lambda(k));

  // geometric spacing: constant ratio on the positive side
  const double ratio = p.lambda(2) / p.lambda(1);
  for (int k = 1; k < 16; ++k)
    REQUIRE(p.lambda(k + 1) / p.lambda(k) == Approx(ratio).epsilon(1e-12));

  REQUIRE_THROWS_AS(logarithmic_pattern(1, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(logarithmic_pattern(16, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(logarithmic_pattern(16, -1.0), std::invalid_argument);
}

TEST_CASE("pattern serialization round-trips bit-exactly", "[sampling]") {
  const auto patterns = {jittered_pattern(32, 0.25, 99), logarithmic_pattern(8, 2.0),
                         uniform_pattern(5)};
  for (const auto& p : patterns) {
    std::stringstream ss;
    save_pattern(p, ss);
    const auto q = load_pattern(ss);
    REQUIRE(q.kind == p.kind);
    REQUIRE(q.n == p.n);
    REQUIRE(q.lambdas == p.lambdas); // decimal round-trip must be exact
    if (p.kind == SamplingKind::jittered) {
      REQUIRE(q.theta == p.theta);
      REQUIRE(q.seed == p.seed);
    }
    if (p.kind == SamplingKind::logarithmic) REQUIRE(q.v == p.v);
  }
}

TEST_CASE("pattern validation rejects malformed input", "[sampling]") {
  SamplingPattern p;
  p.n = 1;
  p.lambdas = {0.0, 1.0};
  REQUIRE_THROWS_AS(validate(p), std::invalid_argument);
  p.lambdas = {1.0, 0.0, 2.0};
  REQUIRE_THROWS_AS(validate(p), std::invalid_argument);
}
