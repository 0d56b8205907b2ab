#ifndef LCINFO_FUNCTIONALS_HPP
#define LCINFO_FUNCTIONALS_HPP

#include <cmath>

#include "lcinfo/density.hpp"

namespace lcinfo {

// Renyi order with tagged limits. Orders within 1e-6 of 1 take the Shannon
// branch; the 1/(1-q) form is numerically hopeless there.
struct RenyiOrder {
  double q = 1.0;

  static RenyiOrder of(double q);
  static RenyiOrder zero() { return RenyiOrder{0.0}; }
  static RenyiOrder one() { return RenyiOrder{1.0}; }
  static RenyiOrder infinity() { return RenyiOrder{kInf}; }

  bool is_zero() const { return q == 0.0; }
  bool is_one() const { return std::abs(q - 1.0) < 1e-6; }
  bool is_infinity() const { return std::isinf(q); }
};

// Constants of the maximum-Renyi-entropy family under a p-th moment
// constraint, all normalized so that sigma_p(Z_{p,q}) = 1 and so that the
// order-1 entropy power normalizer reduces to the classical 2*pi*e.
struct ConstantsPQ {
  double p = 2.0;
  double q = 1.0;
  double beta = kInf;         // q/(1-q) - 1/p, +inf at q = 1
  double A_p1 = 0.0;          // 2 p^{1/p} Gamma(1 + 1/p)
  double A_pq = 0.0;          // normalizer of g_{p,q}
  double Nq_normalizer = 0.0; // A_{2,q}^2 e; equals 2 pi e at q = 1
  double Nq_max = 0.0;        // N_q(Z_{p,q})
};

// Requires p in (0,2] and q in (1/(1+p), 1].
ConstantsPQ constants(double p, double q);

// --------------------------------------------------------------------------
// Functionals on the exact piecewise representation (closed forms plus
// per-segment Gauss-Legendre for non-integer moments).
double shannon_entropy(const PiecewiseLogLinearDensity& d);
double renyi_entropy(const PiecewiseLogLinearDensity& d, RenyiOrder order);
double moment_p(const PiecewiseLogLinearDensity& d, double p);  // sigma_p
double log_moment_limit(const PiecewiseLogLinearDensity& d);    // E log|X|
double variance(const PiecewiseLogLinearDensity& d);

double shannon_entropy(const PositiveDensity& d);
double moment_p(const PositiveDensity& d, double p);  // (E X^p)^{1/p}
double mean(const PositiveDensity& d);

// --------------------------------------------------------------------------
// Grid counterparts (trapezoidal quadrature through the kernel layer).
double shannon_entropy(const GridDensity& d);
double renyi_entropy(const GridDensity& d, RenyiOrder order);
double moment_p(const GridDensity& d, double p);
double log_moment_limit(const GridDensity& d);
double variance(const GridDensity& d);
double mean(const GridDensity& d);
double sup_value(const GridDensity& d);

// --------------------------------------------------------------------------
double entropy_power_from_h(double h);

template <class D>
double entropy_power(const D& d) {
  return entropy_power_from_h(shannon_entropy(d));
}

// N_q with the A_{2,q}^2 e normalizer; q must lie in (1/3, 1].
double renyi_entropy_power_from_h(double hq, double q);

template <class D>
double renyi_entropy_power(const D& d, double q) {
  return renyi_entropy_power_from_h(renyi_entropy(d, RenyiOrder::of(q)), q);
}

// --------------------------------------------------------------------------
// Divergences on a shared grid geometry. A support violation of mass
// greater than 1e-10 yields value = +inf and the offending mass.
struct RelEntropyResult {
  double value = 0.0;
  double offending_mass = 0.0;
};
RelEntropyResult relative_entropy_checked(const GridDensity& f, const GridDensity& u);
double relative_entropy(const GridDensity& f, const GridDensity& u);

// D(X) = h(matched Gaussian) - h(X)
double relative_entropy_from_gaussianity_h(double h, double var);

template <class D>
double relative_entropy_from_gaussianity(const D& d) {
  return relative_entropy_from_gaussianity_h(shannon_entropy(d), variance(d));
}

double renyi_divergence(const GridDensity& f, const GridDensity& u, double alpha);
GridDensity escort(const GridDensity& f, double alpha);

// Relative q-entropy I_q(f||u) = D_{1/q}(f_q || u_q) for q in (0,1]. The
// q-norms are taken on the grid unless positive overrides are supplied
// (needed when u has heavy tails that the shared grid truncates).
double relative_q_entropy(const GridDensity& f, const GridDensity& u, double q,
                          double f_q_norm = 0.0, double u_q_norm = 0.0);

// --------------------------------------------------------------------------
// 1-D isotropic constant squared, ||f||_inf^2 Var(f).
double isotropic_constant_sq_values(double f_sup, double var);

template <class D>
double isotropic_constant_sq(const D& d) {
  return isotropic_constant_sq_values(d.f0(), variance(d));
}
double isotropic_constant_sq(const GridDensity& d);

}  // namespace lcinfo

#endif
