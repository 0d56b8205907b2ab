#ifndef LCINFO_BA_HPP
#define LCINFO_BA_HPP

#include <functional>
#include <string>
#include <vector>

#include "lcinfo/capacity.hpp"
#include "lcinfo/density.hpp"

namespace lcinfo {

// Evaluation view of a noise density for channel discretization: pdf values
// plus a tail-truncated support range and a resolution scale.
struct ChannelNoise {
  std::string descriptor;
  std::function<double(double)> pdf;
  double lo = 0.0;
  double hi = 0.0;
  double scale = 1.0;
};

ChannelNoise channel_noise(const PiecewiseLogLinearDensity& d, std::string descriptor,
                           double eps_tail = 1e-8);
ChannelNoise channel_noise(const PositiveDensity& d, std::string descriptor,
                           double eps_tail = 1e-8);
ChannelNoise channel_noise(const GridDensity& d, std::string descriptor);
ChannelNoise gaussian_channel_noise(double var, std::string descriptor = "gaussian",
                                    double eps_tail = 1e-9);
ChannelNoise exponential_channel_noise(double mean_a,
                                       std::string descriptor = "exponential",
                                       double eps_tail = 1e-9);
ChannelNoise mixture_channel_noise(const GaussianMixtureSpec& spec,
                                   double eps_tail = 1e-9);

enum class CostKind { Power, Mean };

struct ChannelGridSpec {
  std::size_t m = 257;        // input grid points
  std::size_t n = 0;          // output grid points, 0 = auto
  double input_radius = 0.0;  // 0 = auto: 4 sqrt(P), or [0, 12P] for Mean
};

// Discretized additive-noise channel under an average-cost budget.
struct ChannelInstance {
  std::vector<double> x;     // input grid
  std::vector<double> y;     // output grid
  std::vector<double> cost;  // x^2 (Power) or x (Mean)
  std::vector<double> W;     // row-major m x n transition matrix, rows sum to 1
  double P = 1.0;
  CostKind kind = CostKind::Power;

  std::size_t m() const { return x.size(); }
  std::size_t n() const { return y.size(); }
};

ChannelInstance build_channel(const ChannelNoise& noise, double P, CostKind kind,
                              ChannelGridSpec spec = {});

struct BAResult {
  double capacity = 0.0;  // nats
  std::vector<double> input_dist;
  double multiplier = 0.0;       // Lagrange multiplier on the cost
  long iterations = 0;           // total inner iterations across the bisection
  double convergence_gap = 0.0;  // duality gap at exit
  double achieved_cost = 0.0;
  bool converged = true;
};

// Constrained Blahut-Arimoto: inner alternating maximization at a fixed
// multiplier, outer root-finding on the multiplier until the cost budget
// binds (multiplier 0 when the unconstrained optimum is feasible). tol is
// the duality-gap target at the final multiplier; the reported gap certifies
// the estimate either way.
BAResult ba_capacity(const ChannelInstance& ch, double tol = 1e-5, long max_iter = 30000);

// Capacity convexity in the noise: BA(lambda W1 + (1-lambda) W2) against the
// lambda-mix of the endpoint capacities, one report over the lambda set.
BoundReport convexity_probe(const ChannelNoise& u1, const ChannelNoise& u2,
                            const std::vector<double>& lambdas, double P,
                            double tol = 5e-3, ChannelGridSpec spec = {});

}  // namespace lcinfo

#endif
