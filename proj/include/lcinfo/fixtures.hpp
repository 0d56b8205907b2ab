#ifndef LCINFO_FIXTURES_HPP
#define LCINFO_FIXTURES_HPP

#include <functional>
#include <string>

#include "lcinfo/density.hpp"

namespace lcinfo {

// Closed-form reference distributions for the equality cases of the
// inequality suite. Everything here is exact; no quadrature enters.
struct Fixture {
  std::string name;
  double var = 0.0;
  double f0 = 0.0;           // sup of the density
  double support_edge = kInf;
  double h = 0.0;            // Shannon entropy
  double elogx = 0.0;        // E log|X|
  std::function<double(double)> hq;       // Renyi entropy of order q (0, inf ok)
  std::function<double(double)> sigma_p;  // p-th moment root
};

Fixture uniform_fixture(double half_width);
Fixture gaussian_fixture(double var);
Fixture symexp_fixture(double rate);   // f = (c/2) e^{-c|x|}
Fixture triangle_fixture(double half_width);

}  // namespace lcinfo

#endif
