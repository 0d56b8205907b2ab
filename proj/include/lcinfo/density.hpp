#ifndef LCINFO_DENSITY_HPP
#define LCINFO_DENSITY_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace lcinfo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Closed-form exponential segment primitives, used everywhere a density is a
// patchwork of c * e^{-s u} pieces.  All take the in-segment coordinate
// u in [0, L]; L may be +inf when s > 0.
double seg_exp_mass(double s, double L);    // ∫ e^{-s u} du
double seg_exp_first(double s, double L);   // ∫ u e^{-s u} du
double seg_exp_second(double s, double L);  // ∫ u^2 e^{-s u} du

// One piece of a log-linear potential: f(x0 + u) = exp(log_f - s u).
struct Segment {
  double x0;     // start of the piece (absolute coordinate, >= 0)
  double len;    // piece length, +inf for an unbounded tail
  double slope;  // potential slope s >= 0
  double log_f;  // log f at x0
};

// ---------------------------------------------------------------------------
// Even log-concave density represented exactly through a convex piecewise
// linear potential on [0, inf), extended to the negative axis by symmetry.
//
// breakpoints: 0 = b[0] < b[1] < ... ; when bounded, the last breakpoint is
// the support edge and slopes.size() == breakpoints.size() - 1; when
// unbounded, slopes.size() == breakpoints.size() and the last piece runs to
// +inf (its slope must be positive for the mass to be finite).
class PiecewiseLogLinearDensity {
 public:
  PiecewiseLogLinearDensity(std::vector<double> breakpoints, std::vector<double> slopes,
                            double log_f0, bool bounded);

  const std::vector<double>& breakpoints() const { return bp_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double log_f0() const { return log_f0_; }
  bool bounded() const { return bounded_; }
  double support_edge() const { return bounded_ ? bp_.back() : kInf; }

  double f0() const;
  double operator()(double x) const;    // density value, 0 outside support
  double log_value(double x) const;     // log f(x), -inf outside support
  std::vector<Segment> segments() const;

  double mass() const;                  // closed form
  PiecewiseLogLinearDensity& normalize();  // throws on infinite mass
  PiecewiseLogLinearDensity scaled(double lambda) const;  // density of lambda*X

  // analytic |x| beyond which the two-sided tail mass is < eps (support edge
  // when bounded)
  double tail_cutoff(double eps) const;

 private:
  std::vector<double> bp_;
  std::vector<double> slopes_;
  double log_f0_;
  bool bounded_;
};

// Non-increasing log-concave density on [0, inf); same representation, no
// even extension.
class PositiveDensity {
 public:
  PositiveDensity(std::vector<double> breakpoints, std::vector<double> slopes,
                  double log_f0, bool bounded);

  const std::vector<double>& breakpoints() const { return bp_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double log_f0() const { return log_f0_; }
  bool bounded() const { return bounded_; }
  double support_edge() const { return bounded_ ? bp_.back() : kInf; }

  double f0() const;
  double operator()(double x) const;
  std::vector<Segment> segments() const;

  double mass() const;
  PositiveDensity& normalize();
  PositiveDensity scaled(double lambda) const;
  double tail_cutoff(double eps) const;

 private:
  std::vector<double> bp_;
  std::vector<double> slopes_;
  double log_f0_;
  bool bounded_;
};

// Even density f_sym(x) = f(|x|)/2 of a positive density f.
PiecewiseLogLinearDensity symmetrize(const PositiveDensity& f);

// Named members of the class.
PiecewiseLogLinearDensity uniform_density(double half_width);
PiecewiseLogLinearDensity symexp_density(double rate);  // (c/2) e^{-c|x|}
PositiveDensity exponential_density(double mean);
PositiveDensity positive_uniform_density(double edge);
// Secant-slope approximation of the half-Gaussian with the given underlying
// variance; a genuine member of the nonincreasing log-concave class.
PositiveDensity half_gaussian_positive(double var, int segments = 96);

// ---------------------------------------------------------------------------
// Uniform-grid density with the trapezoidal mass convention.
struct GridDensity {
  double left = 0.0;
  double step = 1.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t i) const { return left + step * static_cast<double>(i); }
  double right() const { return x(values.size() - 1); }

  double trapezoid_mass() const;
  GridDensity& normalize();
  // linear interpolation, 0 outside the grid
  double interpolate(double xq) const;
};

// Deterministic random even log-concave density generator for the test
// harness. Same (seed, pieces, style) always yields the identical density.
enum class SupportStyle { Bounded, Unbounded };
PiecewiseLogLinearDensity random_density(std::uint64_t seed, int pieces,
                                         SupportStyle style);
PositiveDensity random_positive_density(std::uint64_t seed, int pieces,
                                        SupportStyle style);

// Discretizes an exact density on roughly [-half_width, half_width] with n
// points. 0 is always a grid node; a bounded support edge is aligned to the
// midpoint of a cell so trapezoidal integrals keep their O(step^2) accuracy
// across the jump. Throws if half_width leaves more than eps_tail of mass
// uncovered (the message carries the required half width).
GridDensity to_grid(const PiecewiseLogLinearDensity& d, double half_width,
                    std::size_t n_points, double eps_tail = 1e-10);

// Samples an arbitrary nonnegative function on a fixed grid and renormalizes.
GridDensity sample_grid(const std::function<double(double)>& f, double left, double step,
                        std::size_t n);

// Discrete convolution of two grid densities with identical steps, scaled by
// step and renormalized. Throws on mismatched steps.
GridDensity convolve(const GridDensity& a, const GridDensity& b);

// ---------------------------------------------------------------------------
// Scale mixture of centered Gaussians.
struct GaussianMixtureSpec {
  std::vector<double> weights;
  std::vector<double> variances;

  void validate() const;  // throws on bad weights/variances
  double variance() const;
  double pdf(double x) const;
};

// Grid materialization of a Gaussian mixture. n = 0 picks the default grid.
GridDensity mixture(const GaussianMixtureSpec& spec, std::size_t n = 0,
                    double eps_tail = 1e-12);

GridDensity gaussian_grid(double variance, std::size_t n = 0, double eps_tail = 1e-12);

// ---------------------------------------------------------------------------
// Generalized Gaussian g_{p,q}: the maximum-Renyi-entropy density of order q
// under a fixed p-th absolute moment, normalized so sigma_p = 1.
// Requires p in (0,2] and q in (1/(1+p), 1].
struct GeneralizedGaussian {
  double p;
  double q;
  double beta;  // q/(1-q) - 1/p  (unused when q == 1)
  double A;     // normalizing constant

  static GeneralizedGaussian make(double p, double q);
  double pdf(double x) const;
  double hq() const;                 // Renyi entropy of order q of this density
  double tail_T(double eps) const;   // |x| beyond which two-sided mass < eps
};

// Grid materialization (n = 0 -> default grid sized from the tail).
GridDensity generalized_gaussian(double p, double q, std::size_t n = 0,
                                 double eps_tail = 1e-7);

// ---------------------------------------------------------------------------
// JSON round trip of the exact representation:
//   {"breakpoints":[...], "slopes":[...], "log_f0":x, "bounded":bool}
std::string to_json(const PiecewiseLogLinearDensity& d);
PiecewiseLogLinearDensity density_from_json(const std::string& text);

// GridDensity CSV: two columns x,f(x).
std::string to_csv(const GridDensity& g);

}  // namespace lcinfo

#endif
