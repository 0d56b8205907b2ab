#ifndef LCINFO_EXTREMAL_HPP
#define LCINFO_EXTREMAL_HPP

#include <string>
#include <vector>

#include "lcinfo/density.hpp"
#include "lcinfo/inequalities.hpp"

namespace lcinfo {

// Two-parameter extremal family: even density that is flat on [0,a] and
// decays like e^{-(x-a)} on [a, a+b] (unit tail rate; scaling is free).
struct SimpleDensity {
  double a = 0.0;  // plateau half-width, >= 0
  double b = 1.0;  // exponential tail length, > 0

  double c() const;  // normalizing constant, 1/(2(a+1-e^{-b}))
  PiecewiseLogLinearDensity to_density() const;
};

// closed form -log c + (1-(1+b)e^{-b})/(a+1-e^{-b})
double simple_entropy(const SimpleDensity& sd);

// Two-point gap of the reduction: for s >= 0, t > 0 and p in (0,2],
//   G(s,t;p) = (p+1) log(s+1-e^{-t}) + p (1-(1+t)e^{-t})/(s+1-e^{-t})
//              - log[s^{p+1} + (p+1) ∫_0^t (s+x)^p e^{-x} dx],
// which is p times the entropy-moment gap of SimpleDensity(s,t).
double gap_G(double s, double t, double p);

// log of the bracket term, log ∫_0^t (s+x)^{p+1} dmu with the e^{-t} atom at
// t folded in as the exact boundary term; convex in p
double gap_log_integral_term(double s, double t, double p);

// p = 2 closed-form polynomial route; verifies the printed polynomial
// inequality and that exp(G) reproduces the polynomial ratio
BoundReport p2_closed_form_check(double s, double t, double tol = 1e-8);

struct UVW {
  double u = 0.0, v = 0.0, w = 0.0;
};
UVW aux_uvw(double t);

// positive root of log Gamma(p+2) = p, bisected to 1e-9
double necessary_condition_root();

struct GridRange {
  double lo = 0.0, hi = 1.0, step = 0.1;
  std::size_t count() const;
  double at(std::size_t i) const;
};
GridRange parse_range(const std::string& text);  // "lo:hi:step"

struct ScanPoint {
  double s, t, p, G;
};
struct ScanResult {
  double min_G = kInf;
  double argmin_s = 0.0, argmin_t = 0.0;
  std::size_t points = 0;
  std::vector<ScanPoint> surface;  // filled when keep_surface
};
ScanResult extremal_grid_scan(double p, const GridRange& s_range, const GridRange& t_range,
                              int workers = 1, bool keep_surface = false);

// min of the simple-family gap over the (s,t) grid against the min of the
// piecewise gap over random densities; the reduction claim made numerical
struct ReductionCheck {
  double min_simple = kInf;   // min over the grid of G/p
  double min_random = kInf;   // min thm1 gap over random densities
  std::uint64_t argmin_seed = 0;
};
ReductionCheck reduction_check(double p, const GridRange& s_range,
                               const GridRange& t_range, std::uint64_t seed,
                               int random_trials);

}  // namespace lcinfo

#endif
