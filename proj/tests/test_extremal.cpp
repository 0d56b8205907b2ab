#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "lcinfo/extremal.hpp"
#include "lcinfo/functionals.hpp"
#include "lcinfo/inequalities.hpp"

using namespace lcinfo;

namespace {
constexpr double kLog2 = std::numbers::ln2;
}

TEST_CASE("simple density entropy closed form against the exact path") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{0.0, 3.0},
                      std::pair{4.0, 0.3}}) {
    const SimpleDensity sd{a, b};
    CHECK(simple_entropy(sd) ==
          doctest::Approx(shannon_entropy(sd.to_density())).epsilon(1e-10));
  }
  // b large, a = 0: approaches the symmetrized exponential entropy
  CHECK(simple_entropy({0.0, 40.0}) == doctest::Approx(1.0 + kLog2).epsilon(1e-10));
  // a = 1, b -> 0+: approaches the uniform
  CHECK(simple_entropy({1.0, 1e-4}) == doctest::Approx(kLog2).epsilon(1e-4));
  // the (1,1) closed form verbatim
  const double c = 1.0 / (2.0 * (2.0 - std::exp(-1.0)));
  CHECK(simple_entropy({1.0, 1.0}) ==
        doctest::Approx(-std::log(c) +
                        (1.0 - 2.0 * std::exp(-1.0)) / (2.0 - std::exp(-1.0)))
            .epsilon(1e-12));
}

TEST_CASE("gap_G: limits, cross-module identity, sign") {
  // p -> 0 collapses to equality
  CHECK(std::abs(gap_G(1.0, 1.0, 1e-9)) <= 1e-8);
  CHECK(std::abs(gap_G(0.0, 2.0, 1e-9)) <= 1e-8);
  // G(a,b;p) = p * thm1 gap of the simple density
  for (auto [s, t, p] : {std::tuple{1.0, 1.0, 2.0}, std::tuple{0.5, 2.0, 1.0},
                         std::tuple{3.0, 0.7, 0.5}}) {
    const SimpleDensity sd{s, t};
    const BoundReport r = thm1_gap(stats_of(sd.to_density(), "simple"), p);
    CHECK(gap_G(s, t, p) == doctest::Approx(p * r.gap).epsilon(1e-8));
  }
  // s = 0, t large, p = 2 reduces to 2 - log 6
  CHECK(gap_G(0.0, 30.0, 2.0) ==
        doctest::Approx(2.0 - std::log(6.0)).epsilon(1e-6));
  CHECK_THROWS_AS(gap_G(1.0, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(gap_G(-1.0, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("p=2 polynomial closed form") {
  CHECK(p2_closed_form_check(0.0, 1.0).verdict == Verdict::Holds);
  CHECK(p2_closed_form_check(1.0, 1.0).verdict == Verdict::Holds);
  const BoundReport near = p2_closed_form_check(5.0, 0.1);
  CHECK(near.verdict == Verdict::Holds);
  const BoundReport nearer = p2_closed_form_check(5.0, 0.01);
  CHECK(nearer.gap < near.gap);  // margin shrinks as t -> 0
  CHECK(nearer.gap > 0.0);
}

TEST_CASE("auxiliary u, v, w") {
  CHECK(aux_uvw(1.0).u == doctest::Approx(std::numbers::e - 2.0).epsilon(1e-12));
  CHECK(aux_uvw(0.0).v == 0.0);
  CHECK(aux_uvw(0.0).w == 0.0);
  // vanishing derivatives at 0 by central differences
  const double h = 1e-3;
  auto v = [](double t) { return aux_uvw(t).v; };
  auto w = [](double t) { return aux_uvw(t).w; };
  CHECK(std::abs((v(h) - v(-h)) / (2.0 * h)) <= 1e-4);
  CHECK(std::abs((v(h) - 2.0 * v(0.0) + v(-h)) / (h * h)) <= 1e-4);
  CHECK(std::abs((w(h) - w(-h)) / (2.0 * h)) <= 1e-4);
  CHECK(std::abs((w(h) - 2.0 * w(0.0) + w(-h)) / (h * h)) <= 1e-4);
  CHECK(std::abs((w(2 * h) - 2.0 * w(h) + 2.0 * w(-h) - w(-2 * h)) /
                 (2.0 * h * h * h)) <= 1e-4);
  // nonnegativity with the e^{3t} relative tolerance
  for (double t = 0.0; t <= 50.0; t += 0.37) {
    const UVW r = aux_uvw(t);
    const double tol = 1e-9 * std::exp(3.0 * t);
    CHECK(r.u >= -tol);
    CHECK(r.v >= -tol);
    CHECK(r.w >= -tol);
  }
}

TEST_CASE("necessary condition root") {
  CHECK(std::lgamma(4.0) - 2.0 < 0.0);
  CHECK(std::lgamma(5.0) - 3.0 > 0.0);
  const double root = necessary_condition_root();
  CHECK(root > 2.614);
  CHECK(root < 2.616);
}

TEST_CASE("grid scan stays nonnegative with the minimum at the t edge") {
  const GridRange sr{0.0, 4.0, 0.25};
  const GridRange tr{0.05, 4.0, 0.25};
  for (double p : {0.5, 1.0, 2.0}) {
    const ScanResult r = extremal_grid_scan(p, sr, tr, 2);
    CHECK(r.min_G >= 0.0);
    CHECK(r.argmin_t == doctest::Approx(0.05));
    CHECK(r.points == sr.count() * tr.count());
  }
  // deterministic across worker counts
  const ScanResult r1 = extremal_grid_scan(2.0, sr, tr, 1);
  const ScanResult r2 = extremal_grid_scan(2.0, sr, tr, 3);
  CHECK(r1.min_G == r2.min_G);
}

TEST_CASE("log-integral term is convex in p") {
  std::uint64_t h = 9001;
  for (int k = 0; k < 24; ++k) {
    h = h * 6364136223846793005ull + 1442695040888963407ull;
    const double s = 5.0 * static_cast<double>(h >> 44) / 1048576.0;
    h = h * 6364136223846793005ull + 1442695040888963407ull;
    const double t = 0.1 + 5.0 * static_cast<double>(h >> 44) / 1048576.0;
    h = h * 6364136223846793005ull + 1442695040888963407ull;
    const double p1 = 2.0 * static_cast<double>(h >> 44) / 1048576.0;
    h = h * 6364136223846793005ull + 1442695040888963407ull;
    const double p2 = 2.0 * static_cast<double>(h >> 44) / 1048576.0;
    const double mid = gap_log_integral_term(s, t, 0.5 * (p1 + p2));
    const double chord = 0.5 * (gap_log_integral_term(s, t, p1) +
                                gap_log_integral_term(s, t, p2));
    CHECK(mid <= chord + 1e-9);
    // the proof's chord bound between p = 0 and p = 2
    const double p = p1;
    const double bound = (1.0 - 0.5 * p) * gap_log_integral_term(s, t, 0.0) +
                         0.5 * p * gap_log_integral_term(s, t, 2.0);
    CHECK(gap_log_integral_term(s, t, p) <= bound + 1e-9);
  }
}

TEST_CASE("G vanishes as t -> 0: quadratically for s > 0, linearly at s = 0") {
  for (double s : {1.0, 5.0}) {
    const double g1 = gap_G(s, 0.1, 2.0);
    const double g2 = gap_G(s, 0.05, 2.0);
    const double g3 = gap_G(s, 0.025, 2.0);
    CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.4));
    CHECK(g2 / g3 == doctest::Approx(4.0).epsilon(0.4));
  }
  // at s = 0 the small-t expansion gives G ~ t p/(2(p+2))
  const double g1 = gap_G(0.0, 0.01, 2.0);
  const double g2 = gap_G(0.0, 0.005, 2.0);
  CHECK(g1 / g2 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(g2 / 0.005 == doctest::Approx(2.0 / (2.0 * 4.0)).epsilon(0.05));
}

TEST_CASE("reduction to the simple family is consistent with random densities") {
  const GridRange sr{0.0, 5.0, 0.25};
  const GridRange tr{0.05, 5.0, 0.25};
  const ReductionCheck rc = reduction_check(2.0, sr, tr, 3, 200);
  CHECK(rc.min_simple >= 0.0);
  CHECK(rc.min_random >= -1e-9);
  CHECK(std::abs(rc.min_simple - rc.min_random) <= 1e-3);
}

TEST_CASE("range parser") {
  const GridRange r = parse_range("0:10:0.1");
  CHECK(r.count() == 101);
  CHECK(r.at(100) == doctest::Approx(10.0));
  CHECK_THROWS_AS(parse_range("0:10"), std::invalid_argument);
}
