#ifndef LCINFO_INEQUALITIES_HPP
#define LCINFO_INEQUALITIES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lcinfo/density.hpp"
#include "lcinfo/fixtures.hpp"

namespace lcinfo {

enum class Verdict { Holds, Equality, Violated, Unchecked };
const char* to_string(Verdict v);

// One named inequality evaluation. Gaps are oriented so that >= 0 means the
// inequality holds; verdict is Equality iff |gap| <= tolerance, Violated iff
// gap < -tolerance.
struct BoundReport {
  std::string name;
  std::string inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Holds;
  std::string units = "nats";
};

BoundReport make_report(std::string name, std::string inputs, double lhs, double rhs,
                        double tol, bool allow_equality = true);

// Default tolerance for closed-form gap evaluations, 1e-7 unless overridden
// through the LCINFO_TOL environment variable. Grid-quadrature paths carry
// their own looser defaults.
double default_tol();

// Value bundle the gap functionals read; filled from the exact piecewise
// path or from closed-form fixtures.
struct DensityStats {
  std::string descriptor;
  double f0 = 0.0;
  double var = 0.0;
  double elogx = 0.0;
  double support_edge = kInf;
  std::function<double(double)> hq;
  std::function<double(double)> sigma_p;
};

DensityStats stats_of(const PiecewiseLogLinearDensity& d, std::string descriptor);
DensityStats stats_of(const Fixture& f);

// --- gap functionals -------------------------------------------------------
// h(X) >= log sigma_p(X) + log[2(p+1)^{1/p}], p in (0,2]
BoundReport thm1_gap(const DensityStats& s, double p, double tol = default_tol());
// 6/(pi e) <= N(X)/Var(X) <= 1
BoundReport sandwich(const DensityStats& s, double tol = default_tol());
// 2^{-p} Gamma(p+1) >= f(0)^p E|X|^p  (any p > 0)
BoundReport rev_hensley_gap(const DensityStats& s, double p, double tol = default_tol());
// h_inf(X) >= log sigma_p(X) + (1/p) log[2^p / Gamma(p+1)]
BoundReport hinf_gap(const DensityStats& s, double p, double tol = default_tol());
// h_q(X) >= log sigma_p(X) + log[2(p+1)^{1/p}], q in [0,1]
BoundReport renyi_gap(const DensityStats& s, double p, double q, double tol = default_tol());
// p->0 variant: h_q(X) >= E log|X| + log(2e)
BoundReport renyi_gap_p0(const DensityStats& s, double q, double tol = default_tol());
// q > 1 variant with the order-comparison slack; never sharp
BoundReport renyi_gap_above_one(const DensityStats& s, double p, double q,
                                double tol = default_tol());
// h(f) >= (1/p)[log E X^p + log(p+1)] on the positive half-line
BoundReport positive_halfline_gap(const PositiveDensity& f, double p,
                                  std::string descriptor, double tol = default_tol());
// L_f^2 = f(0)^2 Var <= 1/2
BoundReport iso_gap(const DensityStats& s, double tol = default_tol());
// D(X) <= (1/2) log(pi e/6)
BoundReport cor21_gap(const DensityStats& s, double tol = default_tol());
// I_q(X||Z) <= log[A_pq (1+1/(p beta))^{1/(1-q)} / (2(p+1)^{1/p})]
BoundReport cor54_iq_gap(const DensityStats& s, double p, double q, double tol = default_tol());

// Reverse entropy power inequality on a convolution grid; q = 1 gives the
// Shannon pi e/6 form, q in (1/3,1) the N_q form.
BoundReport repi_check(const PiecewiseLogLinearDensity& a,
                       const PiecewiseLogLinearDensity& b, double q,
                       std::size_t grid_n = 4097, double tol = 2e-3);
double repi_constant(double q);  // pi e/6 at q=1

// Isotropic constant along the symexp/uniform mixture path: reports whether
// l''(t) takes both signs on (0.02, 0.98).
BoundReport iso_nonconvexity_fixture(double a = 1.4);
double iso_mixture_l(double t, double a);

// --- randomized batch verification -----------------------------------------
struct BatchConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  std::vector<std::string> suites;  // empty = all
  std::vector<double> p_set = {0.25, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> p_set_unrestricted = {0.5, 1.0, 2.0, 3.0};
  std::vector<double> q_set = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> q_repi = {0.4, 0.7};
  std::size_t repi_grid_n = 2049;
  bool include_fixtures = true;
  int workers = 1;
};

struct SuiteSummary {
  std::string inequality;
  long trials = 0;
  double min_gap = kInf;
  std::uint64_t argmin_seed = 0;
  std::string argmin_inputs;
  long equalities = 0;
  long violations = 0;
};

struct BatchResult {
  std::vector<BoundReport> reports;
  std::vector<SuiteSummary> summaries;
  bool any_violation = false;
};

std::vector<std::string> known_suites();
BatchResult batch_verify(const BatchConfig& cfg);

// per-trial derived seed, shared with the CLI so worst cases reproduce
std::uint64_t trial_seed(std::uint64_t seed, long trial);

}  // namespace lcinfo

#endif
