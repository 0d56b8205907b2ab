#ifndef LCINFO_CAPACITY_HPP
#define LCINFO_CAPACITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "lcinfo/density.hpp"
#include "lcinfo/fixtures.hpp"
#include "lcinfo/inequalities.hpp"

namespace lcinfo {

// What the closed-form capacity bounds need to know about a noise.
struct NoiseStats {
  std::string descriptor;
  double var = 1.0;
  double entropy = 0.0;
  bool symmetric_log_concave = false;
};
NoiseStats noise_stats(const PiecewiseLogLinearDensity& d, std::string descriptor);
NoiseStats noise_stats(const Fixture& f);
NoiseStats noise_stats(const GridDensity& d, std::string descriptor,
                       bool symmetric_log_concave);

struct CapacityBounds {
  double lower = 0.0;  // nats
  double upper = 0.0;
  std::string lower_provenance;
  std::string upper_provenance;
  std::string noise;
  double budget = 0.0;
};

// C_P of the additive Gaussian channel, (1/2) log(1 + P/var)
double awgn_capacity(double P, double noise_var);

// (1/2) log(1 + P/N(N)) <= C_P(N) <= (1/2) log((P+Var N)/N(N))
CapacityBounds shannon_bounds(const NoiseStats& noise, double P);

// C_P(Z) + D(N); for symmetric log-concave noise the D term may not exceed
// (1/2) log(pi e/6) - violating that is a numerical inconsistency
double ihara_upper(const NoiseStats& noise, double P);

// lower bound L = (1/2) log[12(P+Var)] - h(N) on the restricted capacity;
// when a BA estimate of C_P(N) is supplied, checks 0 <= BA - L <=
// (1/2) log(pi e/6) within tolerance, otherwise verdict Unchecked
BoundReport restricted_capacity_chain(const NoiseStats& noise, double P,
                                      std::optional<double> ba_estimate = std::nullopt,
                                      double ba_tol = 5e-3);

// exponential-noise positive channel, log(1 + P/a)
double panc_exponential_capacity(double P, double a);

struct PositiveNoiseStats {
  std::string descriptor;
  double mean = 1.0;
  double entropy = 0.0;
  bool nonincreasing_log_concave = false;
};
PositiveNoiseStats positive_noise_stats(const PositiveDensity& d, std::string descriptor);

// relative entropy against the mean-matched exponential, log(e a) - h(N)
double divergence_from_exponential(const PositiveNoiseStats& noise);

// C_P^+(E) <= C_P^+(N) <= C_P^+(E) + D(N||E); for nonincreasing log-concave
// noise the D term may not exceed log(e/2)
CapacityBounds verdu_bounds(const PositiveNoiseStats& noise, double P);

// sum_i alpha_i (1/2) log(1 + P/sigma_i^2)
double gaussian_mixture_bound(const GaussianMixtureSpec& spec, double P);

struct EigenSpectrum {
  std::vector<double> eigenvalues;  // noise covariance eigenvalues, all > 0
};

struct WaterFill {
  std::vector<double> allocation;  // sigma~_i = max(level - lambda_i, 0)
  double level = 0.0;
  double capacity = 0.0;  // nats
};
WaterFill water_filling(const EigenSpectrum& spectrum, double P);

}  // namespace lcinfo

#endif
