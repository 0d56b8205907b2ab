#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "lcinfo/capacity.hpp"
#include "lcinfo/functionals.hpp"

using namespace lcinfo;

namespace {
constexpr double kLog2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
}  // namespace

TEST_CASE("awgn closed form") {
  CHECK(awgn_capacity(1.0, 1.0) == doctest::Approx(0.5 * kLog2).epsilon(1e-12));
  CHECK(awgn_capacity(0.0, 2.0) == 0.0);
  CHECK(awgn_capacity(3.0, 1.0) == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK_THROWS_AS(awgn_capacity(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(awgn_capacity(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("shannon bounds fixtures") {
  const NoiseStats gs = noise_stats(gaussian_fixture(1.0));
  const CapacityBounds gb = shannon_bounds(gs, 1.0);
  CHECK(gb.lower == doctest::Approx(0.5 * kLog2).epsilon(1e-12));
  CHECK(gb.upper == doctest::Approx(0.5 * kLog2).epsilon(1e-12));

  const NoiseStats us = noise_stats(uniform_density(std::sqrt(3.0)), "uniform_var1");
  const CapacityBounds ub = shannon_bounds(us, 1.0);
  CHECK(ub.lower == doctest::Approx(0.5 * std::log1p(kPi * kE / 6.0)).epsilon(1e-10));
  CHECK(ub.upper == doctest::Approx(0.5 * std::log(2.0 * kPi * kE / 6.0)).epsilon(1e-10));
  CHECK(ub.lower == doctest::Approx(0.4425).epsilon(1e-4));
  CHECK(ub.upper == doctest::Approx(0.5231).epsilon(1e-4));

  const PiecewiseLogLinearDensity se = symexp_density(1.0);
  const CapacityBounds sb = shannon_bounds(noise_stats(se, "symexp"), 2.0);
  const double N = 2.0 * kE / kPi;
  CHECK(sb.lower == doctest::Approx(0.5 * std::log1p(2.0 / N)).epsilon(1e-10));
  CHECK(sb.upper == doctest::Approx(0.5 * std::log(4.0 / N)).epsilon(1e-10));
  CHECK(sb.lower <= sb.upper);
}

TEST_CASE("ihara upper bound") {
  const NoiseStats gs = noise_stats(gaussian_fixture(1.0));
  CHECK(ihara_upper(gs, 1.0) == doctest::Approx(awgn_capacity(1.0, 1.0)).epsilon(1e-12));
  const NoiseStats us = noise_stats(uniform_density(std::sqrt(3.0)), "uniform_var1");
  CHECK(ihara_upper(us, 1.0) ==
        doctest::Approx(0.5 * kLog2 + 0.5 * std::log(kPi * kE / 6.0)).epsilon(1e-10));
  // coincides with the shannon upper bound by construction
  CHECK(ihara_upper(us, 1.0) ==
        doctest::Approx(shannon_bounds(us, 1.0).upper).epsilon(1e-12));
  // excess over awgn is capped by the log-concave bound on random noises
  for (std::uint64_t seed : {3ull, 14ull, 15ull}) {
    const PiecewiseLogLinearDensity d = random_density(seed, 4, SupportStyle::Unbounded);
    const NoiseStats s = noise_stats(d, "r");
    const double excess = ihara_upper(s, 1.0) - awgn_capacity(1.0, s.var);
    CHECK(excess >= -1e-10);
    CHECK(excess <= 0.5 * std::log(kPi * kE / 6.0) + 1e-9);
    CHECK(shannon_bounds(s, 1.0).lower <= ihara_upper(s, 1.0) + 1e-9);
  }
}

TEST_CASE("restricted capacity chain") {
  const NoiseStats us = noise_stats(uniform_density(std::sqrt(3.0)), "uniform_var1");
  const BoundReport unchecked = restricted_capacity_chain(us, 1.0);
  CHECK(unchecked.verdict == Verdict::Unchecked);
  CHECK(unchecked.lhs == doctest::Approx(0.5 * kLog2).epsilon(1e-10));
  const NoiseStats gs = noise_stats(gaussian_fixture(1.0));
  const BoundReport g = restricted_capacity_chain(gs, 1.0);
  CHECK(g.lhs <= awgn_capacity(1.0, 1.0));  // L below the true capacity
  // with a consistent estimate the chain holds
  const BoundReport ok = restricted_capacity_chain(us, 1.0, 0.48, 5e-3);
  CHECK(ok.verdict == Verdict::Holds);
}

TEST_CASE("positive channel closed forms") {
  CHECK(panc_exponential_capacity(1.0, 1.0) == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(panc_exponential_capacity(0.0, 1.0) == 0.0);
  CHECK(panc_exponential_capacity(1.0, 0.5) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("verdu bounds") {
  const PositiveNoiseStats es = positive_noise_stats(exponential_density(1.0), "exp1");
  const CapacityBounds eb = verdu_bounds(es, 1.0);
  CHECK(eb.upper == doctest::Approx(eb.lower).epsilon(1e-10));  // D term vanishes
  // uniform [0, 2a]: D(N||E) = log(e/2) exactly
  const PositiveNoiseStats us = positive_noise_stats(positive_uniform_density(2.0), "u");
  CHECK(divergence_from_exponential(us) ==
        doctest::Approx(std::log(kE / 2.0)).epsilon(1e-10));
  const CapacityBounds ub = verdu_bounds(us, 1.0);
  CHECK(ub.upper - ub.lower == doctest::Approx(std::log(kE / 2.0)).epsilon(1e-10));
  // half-gaussian sits strictly inside the 0.443-bit slack
  const PositiveNoiseStats hs =
      positive_noise_stats(half_gaussian_positive(1.0), "halfgauss");
  const double d = divergence_from_exponential(hs);
  CHECK(d > 0.0);
  CHECK(d < std::log(kE / 2.0));
  // random nonincreasing log-concave noises respect the slack too
  for (std::uint64_t seed : {4ull, 9ull}) {
    const PositiveDensity pd = random_positive_density(seed, 3, SupportStyle::Unbounded);
    const PositiveNoiseStats ps = positive_noise_stats(pd, "rp");
    CHECK(divergence_from_exponential(ps) <= std::log(kE / 2.0) + 1e-9);
    CHECK(divergence_from_exponential(ps) >= -1e-10);
  }
}

TEST_CASE("gaussian mixture bound") {
  CHECK(gaussian_mixture_bound({{1.0}, {1.0}}, 1.0) ==
        doctest::Approx(awgn_capacity(1.0, 1.0)).epsilon(1e-12));
  CHECK(gaussian_mixture_bound({{0.5, 0.5}, {1.0, 4.0}}, 1.0) ==
        doctest::Approx(0.25 * kLog2 + 0.25 * std::log(1.25)).epsilon(1e-12));
  CHECK(gaussian_mixture_bound({{1.0, 0.0}, {1.0, 9.0}}, 2.0) ==
        doctest::Approx(awgn_capacity(2.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("water filling: pinned example and KKT structure") {
  const WaterFill w = water_filling({{1.0, 4.0}}, 3.0);
  CHECK(w.level == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(w.allocation[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(w.allocation[1] == 0.0);
  CHECK(w.capacity == doctest::Approx(kLog2).epsilon(1e-12));

  const WaterFill w2 = water_filling({{1.0, 1.0}}, 2.0);
  CHECK(w2.allocation[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w2.capacity == doctest::Approx(kLog2).epsilon(1e-12));

  CHECK(water_filling({{1.0, 2.0}}, 0.0).capacity == 0.0);

  std::uint64_t h = 77;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> lam;
    for (int i = 0; i < 6; ++i) {
      h = h * 6364136223846793005ull + 1442695040888963407ull;
      lam.push_back(0.2 + 4.0 * static_cast<double>(h >> 44) / 1048576.0);
    }
    const double P = 2.5;
    const WaterFill wf = water_filling({lam}, P);
    double sum = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      sum += wf.allocation[i];
      if (wf.allocation[i] > 0.0)
        CHECK(lam[i] + wf.allocation[i] == doctest::Approx(wf.level).epsilon(1e-9));
      else
        CHECK(lam[i] >= wf.level - 1e-9);
    }
    CHECK(sum == doctest::Approx(P).epsilon(1e-12));
  }
}

TEST_CASE("water-filling capacity is midpoint convex in the spectrum") {
  std::uint64_t h = 1234;
  auto rnd = [&] {
    h = h * 6364136223846793005ull + 1442695040888963407ull;
    return 0.2 + 4.0 * static_cast<double>(h >> 44) / 1048576.0;
  };
  for (int k = 0; k < 50; ++k) {
    std::vector<double> a(4), b(4), m(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = rnd();
      b[i] = rnd();
      m[i] = 0.5 * (a[i] + b[i]);
    }
    const double P = 1.7;
    const double cm = water_filling({m}, P).capacity;
    const double ca = water_filling({a}, P).capacity;
    const double cb = water_filling({b}, P).capacity;
    CHECK(cm <= 0.5 * (ca + cb) + 1e-9);
  }
}
