#include "lcinfo/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lcinfo/kernels.hpp"
#include "json.hpp"

namespace lcinfo {

namespace {

// series cutoffs keep the closed forms accurate when s*L underflows the
// subtraction in the exact expressions
double exp_mass_impl(double s, double L) {
  if (s <= 0.0) return L;
  if (std::isinf(L)) return 1.0 / s;
  return -std::expm1(-s * L) / s;
}

double exp_first_impl(double s, double L) {
  if (s <= 0.0) return 0.5 * L * L;
  if (std::isinf(L)) return 1.0 / (s * s);
  const double x = s * L;
  if (x < 1e-4) {
    // L^2 (1/2 - x/3 + x^2/8 - x^3/30 + x^4/144)
    return L * L * (0.5 + x * (-1.0 / 3 + x * (0.125 + x * (-1.0 / 30 + x / 144))));
  }
  return (1.0 - (1.0 + x) * std::exp(-x)) / (s * s);
}

double exp_second_impl(double s, double L) {
  if (s <= 0.0) return L * L * L / 3.0;
  if (std::isinf(L)) return 2.0 / (s * s * s);
  const double x = s * L;
  if (x < 1e-4) {
    // L^3 (1/3 - x/4 + x^2/10 - x^3/36 + x^4/168)
    return L * L * L *
           (1.0 / 3 + x * (-0.25 + x * (0.1 + x * (-1.0 / 36 + x / 168))));
  }
  return (2.0 - (2.0 + 2.0 * x + x * x) * std::exp(-x)) / (s * s * s);
}

void validate_core(const std::vector<double>& bp, const std::vector<double>& slopes,
                   double log_f0, bool bounded) {
  if (bp.empty() || bp.front() != 0.0)
    throw std::invalid_argument("density: breakpoints must start at 0");
  for (std::size_t i = 1; i < bp.size(); ++i)
    if (!(bp[i] > bp[i - 1]))
      throw std::invalid_argument("density: breakpoints must be strictly ascending");
  const std::size_t pieces = bounded ? bp.size() - 1 : bp.size();
  if (bounded && bp.size() < 2)
    throw std::invalid_argument("density: bounded support needs an edge breakpoint");
  if (slopes.size() != pieces)
    throw std::invalid_argument("density: slope count does not match piece count");
  double prev = 0.0;
  for (double s : slopes) {
    if (!(s >= 0.0)) throw std::invalid_argument("density: slopes must be >= 0");
    if (s + 1e-15 < prev)
      throw std::invalid_argument("density: slopes must be nondecreasing");
    prev = s;
  }
  if (!std::isfinite(log_f0)) throw std::invalid_argument("density: log_f0 not finite");
}

std::vector<Segment> segments_core(const std::vector<double>& bp,
                                   const std::vector<double>& slopes, double log_f0,
                                   bool bounded) {
  std::vector<Segment> segs;
  segs.reserve(slopes.size());
  double logf = log_f0;
  for (std::size_t k = 0; k < slopes.size(); ++k) {
    const bool last = k + 1 == slopes.size();
    const double len =
        (!bounded && last) ? kInf : bp[k + 1] - bp[k];
    segs.push_back({bp[k], len, slopes[k], logf});
    if (!last) logf -= slopes[k] * (bp[k + 1] - bp[k]);
  }
  return segs;
}

double side_mass(const std::vector<Segment>& segs) {
  double m = 0.0;
  for (const Segment& s : segs) m += std::exp(s.log_f) * exp_mass_impl(s.slope, s.len);
  return m;
}

double log_value_core(const std::vector<double>& bp, const std::vector<double>& slopes,
                      double log_f0, bool bounded, double ax) {
  if (ax < 0.0) return -kInf;
  if (bounded && ax > bp.back()) return -kInf;
  double logf = log_f0;
  for (std::size_t k = 0; k < slopes.size(); ++k) {
    const bool last = k + 1 == slopes.size();
    const double hi = (!bounded && last) ? kInf : bp[k + 1];
    if (ax <= hi || last) return logf - slopes[k] * (ax - bp[k]);
    logf -= slopes[k] * (bp[k + 1] - bp[k]);
  }
  return logf;  // unreachable for valid inputs
}

double tail_cutoff_core(const std::vector<Segment>& segs, bool bounded, double edge,
                        double sides, double eps) {
  if (bounded) return edge;
  const Segment& t = segs.back();
  if (!(t.slope > 0.0)) return kInf;
  const double T =
      t.x0 + (t.log_f - std::log(eps * t.slope / sides)) / t.slope;
  return std::max(T, t.x0);
}

double frac(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

double seg_exp_mass(double s, double L) { return exp_mass_impl(s, L); }
double seg_exp_first(double s, double L) { return exp_first_impl(s, L); }
double seg_exp_second(double s, double L) { return exp_second_impl(s, L); }

// ---------------------------------------------------------------------------

PiecewiseLogLinearDensity::PiecewiseLogLinearDensity(std::vector<double> breakpoints,
                                                     std::vector<double> slopes,
                                                     double log_f0, bool bounded)
    : bp_(std::move(breakpoints)), slopes_(std::move(slopes)), log_f0_(log_f0),
      bounded_(bounded) {
  validate_core(bp_, slopes_, log_f0_, bounded_);
}

double PiecewiseLogLinearDensity::f0() const { return std::exp(log_f0_); }

double PiecewiseLogLinearDensity::log_value(double x) const {
  return log_value_core(bp_, slopes_, log_f0_, bounded_, std::abs(x));
}

double PiecewiseLogLinearDensity::operator()(double x) const {
  const double lv = log_value(x);
  return std::isinf(lv) ? 0.0 : std::exp(lv);
}

std::vector<Segment> PiecewiseLogLinearDensity::segments() const {
  return segments_core(bp_, slopes_, log_f0_, bounded_);
}

double PiecewiseLogLinearDensity::mass() const { return 2.0 * side_mass(segments()); }

PiecewiseLogLinearDensity& PiecewiseLogLinearDensity::normalize() {
  if (!bounded_ && slopes_.back() <= 0.0)
    throw std::domain_error("normalize: infinite mass (flat unbounded tail)");
  const double m = mass();
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::domain_error("normalize: mass not positive and finite");
  log_f0_ -= std::log(m);
  return *this;
}

PiecewiseLogLinearDensity PiecewiseLogLinearDensity::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaled: lambda must be > 0");
  std::vector<double> bp(bp_);
  std::vector<double> sl(slopes_);
  for (double& b : bp) b *= lambda;
  for (double& s : sl) s /= lambda;
  return PiecewiseLogLinearDensity(std::move(bp), std::move(sl),
                                   log_f0_ - std::log(lambda), bounded_);
}

double PiecewiseLogLinearDensity::tail_cutoff(double eps) const {
  return tail_cutoff_core(segments(), bounded_, support_edge(), 2.0, eps);
}

// ---------------------------------------------------------------------------

PositiveDensity::PositiveDensity(std::vector<double> breakpoints,
                                 std::vector<double> slopes, double log_f0, bool bounded)
    : bp_(std::move(breakpoints)), slopes_(std::move(slopes)), log_f0_(log_f0),
      bounded_(bounded) {
  validate_core(bp_, slopes_, log_f0_, bounded_);
}

double PositiveDensity::f0() const { return std::exp(log_f0_); }

double PositiveDensity::operator()(double x) const {
  if (x < 0.0) return 0.0;
  const double lv = log_value_core(bp_, slopes_, log_f0_, bounded_, x);
  return std::isinf(lv) ? 0.0 : std::exp(lv);
}

std::vector<Segment> PositiveDensity::segments() const {
  return segments_core(bp_, slopes_, log_f0_, bounded_);
}

double PositiveDensity::mass() const { return side_mass(segments()); }

PositiveDensity& PositiveDensity::normalize() {
  if (!bounded_ && slopes_.back() <= 0.0)
    throw std::domain_error("normalize: infinite mass (flat unbounded tail)");
  const double m = mass();
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::domain_error("normalize: mass not positive and finite");
  log_f0_ -= std::log(m);
  return *this;
}

PositiveDensity PositiveDensity::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaled: lambda must be > 0");
  std::vector<double> bp(bp_);
  std::vector<double> sl(slopes_);
  for (double& b : bp) b *= lambda;
  for (double& s : sl) s /= lambda;
  return PositiveDensity(std::move(bp), std::move(sl), log_f0_ - std::log(lambda),
                         bounded_);
}

double PositiveDensity::tail_cutoff(double eps) const {
  return tail_cutoff_core(segments(), bounded_, support_edge(), 1.0, eps);
}

PiecewiseLogLinearDensity symmetrize(const PositiveDensity& f) {
  return PiecewiseLogLinearDensity(f.breakpoints(), f.slopes(),
                                   f.log_f0() - std::log(2.0), f.bounded());
}

PiecewiseLogLinearDensity uniform_density(double L) {
  if (!(L > 0.0)) throw std::invalid_argument("uniform_density: edge must be > 0");
  return PiecewiseLogLinearDensity({0.0, L}, {0.0}, -std::log(2.0 * L), true);
}

PiecewiseLogLinearDensity symexp_density(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("symexp_density: rate must be > 0");
  return PiecewiseLogLinearDensity({0.0}, {c}, std::log(0.5 * c), false);
}

PositiveDensity exponential_density(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("exponential_density: mean must be > 0");
  return PositiveDensity({0.0}, {1.0 / a}, -std::log(a), false);
}

PositiveDensity positive_uniform_density(double L) {
  if (!(L > 0.0)) throw std::invalid_argument("positive_uniform: edge must be > 0");
  return PositiveDensity({0.0, L}, {0.0}, -std::log(L), true);
}

PositiveDensity half_gaussian_positive(double var, int segments) {
  if (!(var > 0.0)) throw std::invalid_argument("half_gaussian: var must be > 0");
  if (segments < 2) throw std::invalid_argument("half_gaussian: need >= 2 segments");
  const double sigma = std::sqrt(var);
  const double edge = 8.0 * sigma;
  std::vector<double> bp, slopes;
  bp.reserve(segments + 1);
  slopes.reserve(segments);
  const double h = edge / segments;
  auto V = [&](double x) { return 0.5 * x * x / var; };
  bp.push_back(0.0);
  for (int k = 1; k <= segments; ++k) {
    const double x1 = h * k;
    bp.push_back(x1);
    slopes.push_back((V(x1) - V(x1 - h)) / h);
  }
  PositiveDensity d(std::move(bp), std::move(slopes), 0.0, true);
  d.normalize();
  return d;
}

// ---------------------------------------------------------------------------

double GridDensity::trapezoid_mass() const {
  if (values.size() < 2) return 0.0;
  const double s = kern::active().sum(values.data(), values.size());
  return step * (s - 0.5 * (values.front() + values.back()));
}

GridDensity& GridDensity::normalize() {
  const double m = trapezoid_mass();
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::domain_error("grid normalize: mass not positive and finite");
  for (double& v : values) v /= m;
  return *this;
}

double GridDensity::interpolate(double xq) const {
  const double t = (xq - left) / step;
  if (t <= 0.0 || t >= static_cast<double>(values.size() - 1))
    return (t == 0.0 || t == static_cast<double>(values.size() - 1))
               ? values[static_cast<std::size_t>(t)]
               : 0.0;
  const std::size_t i = static_cast<std::size_t>(t);
  const double w = t - static_cast<double>(i);
  return values[i] * (1.0 - w) + values[i + 1] * w;
}

// ---------------------------------------------------------------------------

namespace {

struct SeededRng {
  std::uint64_t state;
  explicit SeededRng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  // splitmix64; fixed algorithm keeps densities bit-identical across builds
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return frac(next()); }
  double exponential() { return -std::log1p(-uniform()); }
};

struct RandomCore {
  std::vector<double> bp;
  std::vector<double> slopes;
  bool bounded;
};

RandomCore random_core(std::uint64_t seed, int pieces, SupportStyle style) {
  if (pieces < 1) throw std::invalid_argument("random_density: pieces must be >= 1");
  SeededRng rng(seed);
  RandomCore c;
  c.bounded = style == SupportStyle::Bounded;
  const int k = pieces;
  const int n_edges = c.bounded ? k : k - 1;  // interior/edge breakpoints past 0
  c.bp.push_back(0.0);
  double x = 0.0;
  for (int i = 0; i < n_edges; ++i) {
    x += 0.05 + rng.exponential();
    c.bp.push_back(x);
  }
  double s = c.bounded ? 0.0 : 0.1 + rng.exponential();
  c.slopes.push_back(s);
  for (int i = 1; i < k; ++i) {
    s += 0.1 + rng.exponential();
    c.slopes.push_back(s);
  }
  return c;
}

}  // namespace

PiecewiseLogLinearDensity random_density(std::uint64_t seed, int pieces,
                                         SupportStyle style) {
  RandomCore c = random_core(seed, pieces, style);
  PiecewiseLogLinearDensity d(std::move(c.bp), std::move(c.slopes), 0.0, c.bounded);
  d.normalize();
  return d;
}

PositiveDensity random_positive_density(std::uint64_t seed, int pieces,
                                        SupportStyle style) {
  RandomCore c = random_core(seed ^ 0x517cc1b727220a95ull, pieces, style);
  PositiveDensity d(std::move(c.bp), std::move(c.slopes), 0.0, c.bounded);
  d.normalize();
  return d;
}

// ---------------------------------------------------------------------------

GridDensity to_grid(const PiecewiseLogLinearDensity& d, double half_width,
                    std::size_t n_points, double eps_tail) {
  if (n_points < 9) throw std::invalid_argument("to_grid: too few points");
  const double required = d.tail_cutoff(eps_tail);
  if (half_width + 1e-12 < required)
    throw std::invalid_argument("to_grid: insufficient coverage, required half_width = " +
                                std::to_string(required));
  const std::size_t i0 = (n_points - 1) / 2;
  const std::size_t side = std::min(i0, n_points - 1 - i0);
  double h = half_width / static_cast<double>(side);
  if (d.bounded()) {
    // land the support edge on a cell midpoint: the trapezoid ramp across the
    // jump then integrates the boundary cells exactly to O(step^2)
    const double edge = d.support_edge();
    const long k = std::clamp<long>(std::lround(edge / h - 0.5), 0,
                                    static_cast<long>(side) - 1);
    h = edge / (static_cast<double>(k) + 0.5);
  }
  GridDensity g;
  g.step = h;
  g.left = -static_cast<double>(i0) * h;
  g.values.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) g.values[i] = d(g.x(i));
  g.normalize();
  return g;
}

GridDensity sample_grid(const std::function<double(double)>& f, double left, double step,
                        std::size_t n) {
  GridDensity g;
  g.left = left;
  g.step = step;
  g.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.values[i] = std::max(0.0, f(g.x(i)));
  g.normalize();
  return g;
}

GridDensity convolve(const GridDensity& a, const GridDensity& b) {
  if (a.values.size() < 2 || b.values.size() < 2)
    throw std::invalid_argument("convolve: degenerate grid");
  if (std::abs(a.step - b.step) > 1e-12 * std::max(a.step, b.step))
    throw std::invalid_argument("convolve: mismatched grid steps");
  GridDensity out;
  out.step = a.step;
  out.left = a.left + b.left;
  out.values.assign(a.values.size() + b.values.size() - 1, 0.0);
  kern::active().conv_full(a.values.data(), a.values.size(), b.values.data(),
                           b.values.size(), out.values.data());
  for (double& v : out.values) v *= a.step;
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------

void GaussianMixtureSpec::validate() const {
  if (weights.empty() || weights.size() != variances.size())
    throw std::invalid_argument("mixture: weights/variances size mismatch");
  double tot = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("mixture: negative weight");
    tot += w;
  }
  if (std::abs(tot - 1.0) > 1e-9)
    throw std::invalid_argument("mixture: weights must sum to 1");
  for (double v : variances)
    if (!(v > 0.0)) throw std::invalid_argument("mixture: variances must be > 0");
}

double GaussianMixtureSpec::variance() const {
  double v = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) v += weights[i] * variances[i];
  return v;
}

double GaussianMixtureSpec::pdf(double x) const {
  double f = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double v = variances[i];
    f += weights[i] * std::exp(-0.5 * x * x / v) / std::sqrt(2.0 * std::numbers::pi * v);
  }
  return f;
}

namespace {
constexpr std::size_t kDefaultGridPoints = 8192;
}

GridDensity mixture(const GaussianMixtureSpec& spec, std::size_t n, double eps_tail) {
  spec.validate();
  if (n == 0) n = kDefaultGridPoints;
  double sigma_max = 0.0;
  for (double v : spec.variances) sigma_max = std::max(sigma_max, std::sqrt(v));
  const double hw = sigma_max * std::sqrt(2.0 * std::log(4.0 / eps_tail)) + sigma_max;
  const std::size_t i0 = (n - 1) / 2;
  const double h = hw / static_cast<double>(std::min(i0, n - 1 - i0));
  return sample_grid([&spec](double x) { return spec.pdf(x); },
                     -static_cast<double>(i0) * h, h, n);
}

GridDensity gaussian_grid(double variance, std::size_t n, double eps_tail) {
  if (!(variance > 0.0)) throw std::invalid_argument("gaussian_grid: variance <= 0");
  return mixture(GaussianMixtureSpec{{1.0}, {variance}}, n, eps_tail);
}

// ---------------------------------------------------------------------------

GeneralizedGaussian GeneralizedGaussian::make(double p, double q) {
  if (!(p > 0.0) || p > 2.0)
    throw std::invalid_argument("generalized_gaussian: p must be in (0,2]");
  if (!(q > 1.0 / (1.0 + p)) || q > 1.0)
    throw std::invalid_argument("generalized_gaussian: q must be in (1/(1+p), 1]");
  GeneralizedGaussian g;
  g.p = p;
  g.q = q;
  const double log_Ap1 = std::log(2.0) + std::log(p) / p + std::lgamma(1.0 + 1.0 / p);
  if (q >= 1.0 - 1e-12) {
    g.q = 1.0;
    g.beta = 0.0;
    g.A = std::exp(log_Ap1);
    return g;
  }
  const double m = 1.0 / (1.0 - q);
  g.beta = q * m - 1.0 / p;
  g.A = std::exp(log_Ap1 + std::log(g.beta) / p + std::lgamma(m - 1.0 / p) -
                 std::lgamma(m));
  return g;
}

double GeneralizedGaussian::pdf(double x) const {
  const double ax = std::abs(x);
  if (q == 1.0) return std::exp(-std::pow(ax, p) / p) / A;
  const double m = 1.0 / (1.0 - q);
  return std::exp(-m * std::log1p(std::pow(ax, p) / (p * beta))) / A;
}

double GeneralizedGaussian::hq() const {
  if (q == 1.0) return std::log(A) + 1.0 / p;
  const double m = 1.0 / (1.0 - q);
  return std::log(A) + m * std::log1p(1.0 / (p * beta));
}

double GeneralizedGaussian::tail_T(double eps) const {
  double T = 1.0;
  for (int it = 0; it < 200; ++it) {
    double bound;
    if (q == 1.0) {
      bound = 2.0 * pdf(T) * 2.0 * std::max(1.0, std::pow(T, 1.0 - p));
    } else {
      const double m = 1.0 / (1.0 - q);
      bound = 2.0 * pdf(T) * 2.0 * T / std::max(p * m - 1.0, 0.5);
    }
    if (bound < eps) return T;
    T *= 1.5;
  }
  return T;
}

GridDensity generalized_gaussian(double p, double q, std::size_t n, double eps_tail) {
  const GeneralizedGaussian g = GeneralizedGaussian::make(p, q);
  const double T = g.tail_T(eps_tail);
  if (n == 0) {
    n = std::max<std::size_t>(kDefaultGridPoints,
                              std::min<std::size_t>(131073, static_cast<std::size_t>(T / 0.005)));
  }
  const std::size_t i0 = (n - 1) / 2;
  const double h = T / static_cast<double>(std::min(i0, n - 1 - i0));
  return sample_grid([&g](double x) { return g.pdf(x); }, -static_cast<double>(i0) * h,
                     h, n);
}

// ---------------------------------------------------------------------------

std::string to_json(const PiecewiseLogLinearDensity& d) {
  nlohmann::json j;
  j["breakpoints"] = d.breakpoints();
  j["slopes"] = d.slopes();
  j["log_f0"] = d.log_f0();
  j["bounded"] = d.bounded();
  return j.dump();
}

PiecewiseLogLinearDensity density_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  return PiecewiseLogLinearDensity(j.at("breakpoints").get<std::vector<double>>(),
                                   j.at("slopes").get<std::vector<double>>(),
                                   j.at("log_f0").get<double>(),
                                   j.at("bounded").get<bool>());
}

std::string to_csv(const GridDensity& g) {
  std::string out = "x,f\n";
  char buf[64];
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.x(i), g.values[i]);
    out += buf;
  }
  return out;
}

}  // namespace lcinfo
