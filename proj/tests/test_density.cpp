#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "lcinfo/density.hpp"
#include "lcinfo/functionals.hpp"
#include "lcinfo/quadrature.hpp"

using namespace lcinfo;

namespace {
constexpr double kLog2 = std::numbers::ln2;
}

TEST_CASE("normalize: flat bounded piece gives the uniform density") {
  PiecewiseLogLinearDensity d({0.0, 1.0}, {0.0}, 0.7, true);
  d.normalize();
  CHECK(d.f0() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalize: unit-slope unbounded piece gives the symmetrized exponential") {
  PiecewiseLogLinearDensity d({0.0}, {1.0}, 3.0, false);
  d.normalize();
  CHECK(d.f0() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d(1.0) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("normalize: plateau plus exponential cut matches the closed form") {
  PiecewiseLogLinearDensity d({0.0, 1.0, 2.0}, {0.0, 1.0}, 0.0, true);
  d.normalize();
  const double c = 1.0 / (2.0 * (2.0 - std::exp(-1.0)));
  CHECK(d.f0() == doctest::Approx(c).epsilon(1e-12));
  // quadrature cross-check of the closed-form mass
  const double m = quad::adaptive([&](double x) { return d(x); }, -2.0, 2.0, 1e-12);
  CHECK(m == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("normalize rejects infinite mass") {
  PiecewiseLogLinearDensity d({0.0}, {0.0}, 0.0, false);
  CHECK_THROWS_AS(d.normalize(), std::domain_error);
}

TEST_CASE("constructor rejects malformed inputs") {
  CHECK_THROWS_AS(PiecewiseLogLinearDensity({0.5, 1.0}, {1.0}, 0.0, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLogLinearDensity({0.0, 1.0}, {2.0, 1.0}, 0.0, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLogLinearDensity({0.0, 1.0}, {-0.5}, 0.0, true),
                  std::invalid_argument);
}

TEST_CASE("random_density: determinism, uniform base case, invariants") {
  const PiecewiseLogLinearDensity a = random_density(7, 3, SupportStyle::Unbounded);
  const PiecewiseLogLinearDensity b = random_density(7, 3, SupportStyle::Unbounded);
  REQUIRE(a.breakpoints().size() == b.breakpoints().size());
  for (std::size_t i = 0; i < a.breakpoints().size(); ++i)
    CHECK(a.breakpoints()[i] == b.breakpoints()[i]);  // bit identical
  for (std::size_t i = 0; i < a.slopes().size(); ++i)
    CHECK(a.slopes()[i] == b.slopes()[i]);
  CHECK(a.log_f0() == b.log_f0());

  const PiecewiseLogLinearDensity u = random_density(7, 1, SupportStyle::Bounded);
  CHECK(u.slopes().size() == 1);
  CHECK(u.slopes()[0] == 0.0);  // one flat piece = uniform

  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    for (SupportStyle st : {SupportStyle::Bounded, SupportStyle::Unbounded}) {
      const PiecewiseLogLinearDensity d = random_density(seed, 4, st);
      CHECK(d.mass() == doctest::Approx(1.0).epsilon(1e-10));
      double prev = -1.0;
      for (double s : d.slopes()) {
        CHECK(s >= 0.0);
        CHECK(s >= prev);
        prev = s;
      }
      // midpoint log-concavity probe
      std::uint64_t h = seed * 1234567 + 1;
      const double edge = d.bounded() ? d.support_edge() : d.tail_cutoff(1e-6);
      for (int k = 0; k < 32; ++k) {
        h = h * 6364136223846793005ull + 1442695040888963407ull;
        const double x1 = edge * static_cast<double>(h >> 40) / 16777216.0;
        h = h * 6364136223846793005ull + 1442695040888963407ull;
        const double x2 = edge * static_cast<double>(h >> 40) / 16777216.0;
        const double lm = d.log_value(0.5 * (x1 + x2));
        CHECK(lm >= 0.5 * (d.log_value(x1) + d.log_value(x2)) - 1e-12);
      }
    }
  }
}

TEST_CASE("to_grid hits the stated quadrature accuracy") {
  const PiecewiseLogLinearDensity u = uniform_density(1.0);
  const GridDensity gu = to_grid(u, 1.5, 4096);
  CHECK(shannon_entropy(gu) == doctest::Approx(kLog2).epsilon(1e-6));
  CHECK(gu.trapezoid_mass() == doctest::Approx(1.0).epsilon(1e-12));

  const PiecewiseLogLinearDensity se = symexp_density(1.0);
  const GridDensity gs = to_grid(se, se.tail_cutoff(1e-10), 4096);
  CHECK(shannon_entropy(gs) == doctest::Approx(1.0 + kLog2).epsilon(1e-5));

  const GridDensity gg = gaussian_grid(1.0, 4096);
  CHECK(shannon_entropy(gg) ==
        doctest::Approx(0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e))
            .epsilon(1e-6));
}

TEST_CASE("to_grid rejects insufficient coverage and reports the need") {
  const PiecewiseLogLinearDensity se = symexp_density(1.0);
  try {
    to_grid(se, 3.0, 1024);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("required half_width") != std::string::npos);
  }
}

TEST_CASE("convolve: uniform pair gives the triangle") {
  const PiecewiseLogLinearDensity u = uniform_density(1.0);
  const GridDensity g = to_grid(u, 1.2, 4097);
  const GridDensity tri = convolve(g, g);
  for (double x : {0.0, 0.5, -1.3, 1.9}) {
    const double expect = std::abs(x) <= 2.0 ? (2.0 - std::abs(x)) / 4.0 : 0.0;
    CHECK(tri.interpolate(x) == doctest::Approx(expect).epsilon(2e-3));
  }
  CHECK(shannon_entropy(tri) == doctest::Approx(0.5 + kLog2).epsilon(1e-4));
}

TEST_CASE("convolve: gaussian additivity in L1") {
  const GridDensity a = gaussian_grid(1.0, 4097);
  GridDensity b = gaussian_grid(2.0, 4097);
  // rebuild b on the step of a for a common grid
  const std::size_t n = 6144;
  b = sample_grid([&](double x) { return std::exp(-x * x / 4.0) /
                                         std::sqrt(4.0 * std::numbers::pi); },
                  -0.5 * a.step * static_cast<double>(n - 1), a.step, n);
  const GridDensity c = convolve(a, b);
  double l1 = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = c.x(i);
    const double expect = std::exp(-x * x / 6.0) / std::sqrt(6.0 * std::numbers::pi);
    l1 += std::abs(c.values[i] - expect) * c.step;
  }
  CHECK(l1 <= 1e-4);
}

TEST_CASE("convolve: variance additivity and symmetry preservation") {
  const PiecewiseLogLinearDensity a = random_density(11, 3, SupportStyle::Unbounded);
  const PiecewiseLogLinearDensity b = random_density(12, 2, SupportStyle::Bounded);
  const double hw = std::max(a.tail_cutoff(1e-12), b.tail_cutoff(1e-12));
  const std::size_t n = 8193;
  const double h = hw / static_cast<double>((n - 1) / 2);
  const double left = -h * static_cast<double>((n - 1) / 2);
  const GridDensity ga = sample_grid([&](double x) { return a(x); }, left, h, n);
  const GridDensity gb = sample_grid([&](double x) { return b(x); }, left, h, n);
  const GridDensity gc = convolve(ga, gb);
  CHECK(variance(gc) == doctest::Approx(variance(ga) + variance(gb)).epsilon(1e-6));
  for (std::size_t i = 0; i < gc.size() / 2; ++i)
    CHECK(std::abs(gc.values[i] - gc.values[gc.size() - 1 - i]) <= 1e-10);
  CHECK_THROWS_AS(convolve(ga, gaussian_grid(1.0, 1025)), std::invalid_argument);
}

TEST_CASE("symmetrize carries entropy and moments per the folding identities") {
  const PositiveDensity e = exponential_density(1.0);
  const PiecewiseLogLinearDensity se = symmetrize(e);
  CHECK(shannon_entropy(se) == doctest::Approx(1.0 + kLog2).epsilon(1e-12));
  CHECK(shannon_entropy(se) ==
        doctest::Approx(shannon_entropy(e) + kLog2).epsilon(1e-12));

  const PositiveDensity u01 = positive_uniform_density(1.0);
  const PiecewiseLogLinearDensity su = symmetrize(u01);
  CHECK(su.f0() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(su.support_edge() == doctest::Approx(1.0));

  const PositiveDensity hg = half_gaussian_positive(1.0);
  const PiecewiseLogLinearDensity shg = symmetrize(hg);
  CHECK(shannon_entropy(shg) ==
        doctest::Approx(shannon_entropy(hg) + kLog2).epsilon(1e-8));
  for (double p : {0.5, 1.0, 2.0}) {
    const double folded = std::pow(moment_p(shg, p), p);
    const double half = std::pow(moment_p(hg, p), p);
    CHECK(folded == doctest::Approx(half).epsilon(1e-8));
  }
}

TEST_CASE("generalized gaussian: q=1 members and normalizers") {
  const GeneralizedGaussian g21 = GeneralizedGaussian::make(2.0, 1.0);
  CHECK(g21.A == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK(g21.pdf(0.7) ==
        doctest::Approx(std::exp(-0.245) / std::sqrt(2.0 * std::numbers::pi))
            .epsilon(1e-12));
  const GeneralizedGaussian g11 = GeneralizedGaussian::make(1.0, 1.0);
  CHECK(g11.A == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(GeneralizedGaussian::make(2.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(GeneralizedGaussian::make(2.5, 0.9), std::invalid_argument);
}

TEST_CASE("generalized gaussian: unit mass and unit p-th moment") {
  for (auto [p, q] : {std::pair{2.0, 0.5}, std::pair{2.0, 0.8}, std::pair{1.0, 0.75}}) {
    const GeneralizedGaussian g = GeneralizedGaussian::make(p, q);
    const double m = 1.0 / (1.0 - q);
    // mass by quadrature, tail bounded analytically
    const double T = 3.0e3;
    const double mass =
        2.0 * quad::adaptive([&](double x) { return g.pdf(x); }, 0.0, T, 1e-10);
    const double mass_tail = 2.0 * g.pdf(T) * T / (p * m - 1.0) * 2.0;
    CHECK(mass <= 1.0 + 1e-8);
    CHECK(mass + mass_tail >= 1.0 - 1e-6);
    // p-th moment brackets 1
    const double mom = 2.0 * quad::adaptive(
                                 [&](double x) { return std::pow(x, p) * g.pdf(x); },
                                 0.0, T, 1e-10);
    const double mom_tail =
        2.0 * std::pow(T, p) * g.pdf(T) * T / std::max(p * m - p - 1.0, 0.3) * 2.0;
    CHECK(mom <= 1.0 + 1e-6);
    CHECK(mom + mom_tail >= 1.0 - 1e-4);
  }
  const GridDensity g = generalized_gaussian(2.0, 0.5);
  CHECK(g.trapezoid_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mixture grids carry the spec variance") {
  CHECK(variance(mixture({{1.0}, {1.0}})) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(variance(mixture({{0.5, 0.5}, {1.0, 4.0}})) ==
        doctest::Approx(2.5).epsilon(1e-6));
  CHECK(variance(mixture({{0.3, 0.7}, {0.5, 2.0}})) ==
        doctest::Approx(1.55).epsilon(1e-6));
  CHECK_THROWS_AS(mixture({{0.5, 0.2}, {1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("json round trip preserves the exact representation") {
  const PiecewiseLogLinearDensity d = random_density(42, 4, SupportStyle::Unbounded);
  const PiecewiseLogLinearDensity r = density_from_json(to_json(d));
  CHECK(r.bounded() == d.bounded());
  CHECK(r.log_f0() == d.log_f0());
  REQUIRE(r.breakpoints().size() == d.breakpoints().size());
  for (std::size_t i = 0; i < d.breakpoints().size(); ++i)
    CHECK(r.breakpoints()[i] == d.breakpoints()[i]);
  const GridDensity g = to_grid(d, d.tail_cutoff(1e-10), 257);
  const std::string csv = to_csv(g);
  CHECK(csv.rfind("x,f\n", 0) == 0);
}

TEST_CASE("scaled density transforms moments and entropy correctly") {
  const PiecewiseLogLinearDensity d = random_density(5, 3, SupportStyle::Unbounded);
  const PiecewiseLogLinearDensity s = d.scaled(2.5);
  CHECK(s.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shannon_entropy(s) ==
        doctest::Approx(shannon_entropy(d) + std::log(2.5)).epsilon(1e-10));
  CHECK(moment_p(s, 1.3) == doctest::Approx(2.5 * moment_p(d, 1.3)).epsilon(1e-9));
}
