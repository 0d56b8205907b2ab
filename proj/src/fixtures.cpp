#include "lcinfo/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace lcinfo {

namespace {
constexpr double kEuler = std::numbers::egamma;
constexpr double kPi = std::numbers::pi;

// (log q)/(q-1) extended continuously: 1 at q=1, 0 at q=inf
double order_factor(double q) {
  if (std::isinf(q)) return 0.0;
  if (std::abs(q - 1.0) < 1e-9) return 1.0;
  return std::log(q) / (q - 1.0);
}
}  // namespace

Fixture uniform_fixture(double L) {
  Fixture f;
  f.name = "uniform[-" + std::to_string(L) + "," + std::to_string(L) + "]";
  f.var = L * L / 3.0;
  f.f0 = 0.5 / L;
  f.support_edge = L;
  f.h = std::log(2.0 * L);
  f.elogx = std::log(L) - 1.0;
  f.hq = [L](double) { return std::log(2.0 * L); };
  f.sigma_p = [L](double p) { return L * std::pow(p + 1.0, -1.0 / p); };
  return f;
}

Fixture gaussian_fixture(double var) {
  Fixture f;
  const double sigma = std::sqrt(var);
  f.name = "gaussian(var=" + std::to_string(var) + ")";
  f.var = var;
  f.f0 = 1.0 / std::sqrt(2.0 * kPi * var);
  f.h = 0.5 * std::log(2.0 * kPi * std::numbers::e * var);
  f.elogx = std::log(sigma) - 0.5 * (kEuler + std::log(2.0));
  f.hq = [var](double q) {
    const double base = 0.5 * std::log(2.0 * kPi * var);
    if (std::isinf(q)) return base;
    if (std::abs(q - 1.0) < 1e-9) return base + 0.5;
    if (q == 0.0) return kInf;
    return base + 0.5 * std::log(q) / (q - 1.0);
  };
  f.sigma_p = [sigma](double p) {
    // E|X|^p = sigma^p 2^{p/2} Gamma((p+1)/2)/sqrt(pi)
    const double lg = 0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) -
                      0.5 * std::log(kPi);
    return sigma * std::exp(lg / p);
  };
  return f;
}

Fixture symexp_fixture(double c) {
  Fixture f;
  f.name = "symexp(c=" + std::to_string(c) + ")";
  f.var = 2.0 / (c * c);
  f.f0 = 0.5 * c;
  f.h = 1.0 + std::log(2.0 / c);
  f.elogx = -kEuler - std::log(c);
  f.hq = [c](double q) {
    if (q == 0.0) return kInf;
    return std::log(2.0 / c) + order_factor(q);
  };
  f.sigma_p = [c](double p) { return std::exp(std::lgamma(p + 1.0) / p) / c; };
  return f;
}

Fixture triangle_fixture(double w) {
  Fixture f;
  f.name = "triangle[-" + std::to_string(w) + "," + std::to_string(w) + "]";
  const double lscale = std::log(0.5 * w);  // scaling from the [-2,2] reference
  f.var = w * w / 6.0;
  f.f0 = 1.0 / w;
  f.support_edge = w;
  f.h = 0.5 + std::log(w);
  f.elogx = std::log(2.0) - 1.5 + lscale;
  f.hq = [w, lscale](double q) {
    if (std::isinf(q)) return std::log(w);
    if (std::abs(q - 1.0) < 1e-9) return 0.5 + std::log(w);
    return (std::log(4.0) - q * std::log(2.0) - std::log(q + 1.0)) / (1.0 - q) + lscale;
  };
  f.sigma_p = [w](double p) {
    const double ref =
        std::exp(((p + 1.0) * std::log(2.0) - std::log(p + 1.0) - std::log(p + 2.0)) / p);
    return 0.5 * w * ref;
  };
  return f;
}

}  // namespace lcinfo
