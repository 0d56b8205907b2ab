#include "lcinfo/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lcinfo/functionals.hpp"

namespace lcinfo {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
const double kCor21Bound = 0.5 * std::log(kPi * kE / 6.0);
}  // namespace

NoiseStats noise_stats(const PiecewiseLogLinearDensity& d, std::string descriptor) {
  return {std::move(descriptor), variance(d), shannon_entropy(d), true};
}

NoiseStats noise_stats(const Fixture& f) { return {f.name, f.var, f.h, true}; }

NoiseStats noise_stats(const GridDensity& d, std::string descriptor,
                       bool symmetric_log_concave) {
  return {std::move(descriptor), variance(d), shannon_entropy(d),
          symmetric_log_concave};
}

double awgn_capacity(double P, double noise_var) {
  if (!(P >= 0.0)) throw std::invalid_argument("awgn_capacity: P must be >= 0");
  if (!(noise_var > 0.0))
    throw std::invalid_argument("awgn_capacity: noise variance must be > 0");
  return 0.5 * std::log1p(P / noise_var);
}

CapacityBounds shannon_bounds(const NoiseStats& noise, double P) {
  if (!(P >= 0.0)) throw std::invalid_argument("shannon_bounds: P must be >= 0");
  if (!(noise.var > 0.0) || !std::isfinite(noise.var))
    throw std::invalid_argument("shannon_bounds: noise needs finite variance");
  const double N = entropy_power_from_h(noise.entropy);
  CapacityBounds b;
  b.noise = noise.descriptor;
  b.budget = P;
  b.lower = 0.5 * std::log1p(P / N);
  b.upper = 0.5 * std::log((P + noise.var) / N);
  b.lower_provenance = "shannon entropy-power lower bound";
  b.upper_provenance = "shannon max-entropy upper bound";
  return b;
}

double ihara_upper(const NoiseStats& noise, double P) {
  const double D = relative_entropy_from_gaussianity_h(noise.entropy, noise.var);
  if (noise.symmetric_log_concave && D > kCor21Bound + 1e-7)
    throw std::logic_error("ihara_upper: D(N) exceeds the log-concave bound; "
                           "inconsistent noise stats");
  return awgn_capacity(P, noise.var) + D;
}

BoundReport restricted_capacity_chain(const NoiseStats& noise, double P,
                                      std::optional<double> ba_estimate, double ba_tol) {
  const double L = 0.5 * std::log(12.0 * (P + noise.var)) - noise.entropy;
  BoundReport r;
  r.name = "cor2.4";
  r.inputs = noise.descriptor + ",P=" + std::to_string(P);
  r.lhs = L;
  r.rhs = kCor21Bound;
  r.tolerance = ba_tol;
  if (!ba_estimate) {
    r.verdict = Verdict::Unchecked;
    r.gap = 0.0;
    return r;
  }
  const double excess = *ba_estimate - L;
  r.gap = std::min(excess, kCor21Bound - excess);
  r.verdict = r.gap < -ba_tol ? Verdict::Violated : Verdict::Holds;
  return r;
}

double panc_exponential_capacity(double P, double a) {
  if (!(P >= 0.0)) throw std::invalid_argument("panc: P must be >= 0");
  if (!(a > 0.0)) throw std::invalid_argument("panc: mean must be > 0");
  return std::log1p(P / a);
}

PositiveNoiseStats positive_noise_stats(const PositiveDensity& d,
                                        std::string descriptor) {
  return {std::move(descriptor), mean(d), shannon_entropy(d), true};
}

double divergence_from_exponential(const PositiveNoiseStats& noise) {
  return 1.0 + std::log(noise.mean) - noise.entropy;
}

CapacityBounds verdu_bounds(const PositiveNoiseStats& noise, double P) {
  if (!(P >= 0.0)) throw std::invalid_argument("verdu_bounds: P must be >= 0");
  if (!(noise.mean > 0.0))
    throw std::invalid_argument("verdu_bounds: noise mean must be > 0");
  const double D = divergence_from_exponential(noise);
  if (noise.nonincreasing_log_concave && D > std::log(kE / 2.0) + 1e-7)
    throw std::logic_error("verdu_bounds: D(N||E) exceeds log(e/2); "
                           "inconsistent noise stats");
  CapacityBounds b;
  b.noise = noise.descriptor;
  b.budget = P;
  b.lower = panc_exponential_capacity(P, noise.mean);
  b.upper = b.lower + D;
  b.lower_provenance = "exponential worst noise";
  b.upper_provenance = "exponential bound + D(N||E)";
  return b;
}

double gaussian_mixture_bound(const GaussianMixtureSpec& spec, double P) {
  spec.validate();
  double c = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i)
    c += spec.weights[i] * awgn_capacity(P, spec.variances[i]);
  return c;
}

WaterFill water_filling(const EigenSpectrum& spectrum, double P) {
  const std::vector<double>& lam = spectrum.eigenvalues;
  if (lam.empty()) throw std::invalid_argument("water_filling: empty spectrum");
  for (double l : lam)
    if (!(l > 0.0)) throw std::invalid_argument("water_filling: eigenvalues must be > 0");
  if (!(P >= 0.0)) throw std::invalid_argument("water_filling: P must be >= 0");
  WaterFill w;
  w.allocation.assign(lam.size(), 0.0);
  if (P == 0.0) {
    w.level = *std::min_element(lam.begin(), lam.end());
    return w;
  }
  const double lo0 = *std::min_element(lam.begin(), lam.end());
  double lo = lo0, hi = lo0 + P;
  auto filled = [&](double nu) {
    double s = 0.0;
    for (double l : lam) s += std::max(nu - l, 0.0);
    return s;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (filled(mid) < P ? lo : hi) = mid;
  }
  // exact water level over the bisected active set
  double nu = 0.5 * (lo + hi);
  double sum_active = 0.0;
  int n_active = 0;
  for (double l : lam)
    if (nu > l) {
      sum_active += l;
      ++n_active;
    }
  nu = (P + sum_active) / static_cast<double>(n_active);
  for (std::size_t i = 0; i < lam.size(); ++i)
    w.allocation[i] = std::max(nu - lam[i], 0.0);
  w.level = nu;
  for (std::size_t i = 0; i < lam.size(); ++i)
    w.capacity += 0.5 * std::log1p(w.allocation[i] / lam[i]);
  return w;
}

}  // namespace lcinfo
