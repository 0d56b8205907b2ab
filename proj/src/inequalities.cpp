#include "lcinfo/inequalities.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "lcinfo/functionals.hpp"

namespace lcinfo {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double thm1_rhs(double sigma_p, double p) {
  return std::log(sigma_p) + std::log(2.0) + std::log1p(p) / p;
}

double order_factor(double q) {  // (log q)/(q-1), continuous at 1, 0 at inf
  if (std::isinf(q)) return 0.0;
  if (std::abs(q - 1.0) < 1e-9) return 1.0;
  return std::log(q) / (q - 1.0);
}
}  // namespace

double default_tol() {
  static const double v = [] {
    if (const char* env = std::getenv("LCINFO_TOL")) return std::atof(env);
    return 1e-7;
  }();
  return v;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Equality: return "equality";
    case Verdict::Violated: return "violated";
    case Verdict::Unchecked: return "unchecked";
  }
  return "?";
}

BoundReport make_report(std::string name, std::string inputs, double lhs, double rhs,
                        double tol, bool allow_equality) {
  BoundReport r;
  r.name = std::move(name);
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  r.tolerance = tol;
  if (r.gap < -tol)
    r.verdict = Verdict::Violated;
  else if (std::abs(r.gap) <= tol && allow_equality)
    r.verdict = Verdict::Equality;
  else
    r.verdict = Verdict::Holds;
  return r;
}

DensityStats stats_of(const PiecewiseLogLinearDensity& d, std::string descriptor) {
  auto dp = std::make_shared<PiecewiseLogLinearDensity>(d);
  DensityStats s;
  s.descriptor = std::move(descriptor);
  s.f0 = dp->f0();
  s.var = variance(*dp);
  s.elogx = log_moment_limit(*dp);
  s.support_edge = dp->support_edge();
  s.hq = [dp](double q) { return renyi_entropy(*dp, RenyiOrder::of(q)); };
  s.sigma_p = [dp](double p) { return moment_p(*dp, p); };
  return s;
}

DensityStats stats_of(const Fixture& f) {
  DensityStats s;
  s.descriptor = f.name;
  s.f0 = f.f0;
  s.var = f.var;
  s.elogx = f.elogx;
  s.support_edge = f.support_edge;
  s.hq = f.hq;
  s.sigma_p = f.sigma_p;
  return s;
}

// ---------------------------------------------------------------------------

BoundReport thm1_gap(const DensityStats& s, double p, double tol) {
  if (!(p > 0.0) || p > 2.0) throw std::invalid_argument("thm1_gap: p must be in (0,2]");
  const double lhs = s.hq(1.0);
  const double rhs = thm1_rhs(s.sigma_p(p), p);
  return make_report("thm1(p=" + std::to_string(p) + ")", s.descriptor, lhs, rhs, tol);
}

BoundReport sandwich(const DensityStats& s, double tol) {
  const double ratio = entropy_power_from_h(s.hq(1.0)) / s.var;
  const double low = 6.0 / (kPi * kE);
  BoundReport r;
  r.name = "sandwich";
  r.inputs = s.descriptor;
  r.tolerance = tol;
  r.lhs = ratio;
  r.rhs = low;  // reported against the lower (theorem) side
  r.gap = std::min(ratio - low, 1.0 - ratio);
  if (r.gap < -tol)
    r.verdict = Verdict::Violated;
  else if (std::abs(r.gap) <= tol)
    r.verdict = Verdict::Equality;
  else
    r.verdict = Verdict::Holds;
  return r;
}

BoundReport rev_hensley_gap(const DensityStats& s, double p, double tol) {
  if (!(p > 0.0)) throw std::invalid_argument("rev_hensley_gap: p must be > 0");
  const double sp = s.sigma_p(p);
  const double lhs = std::exp(-p * std::log(2.0) + std::lgamma(p + 1.0));
  const double rhs = std::pow(s.f0, p) * std::pow(sp, p);
  return make_report("lemma3.3(p=" + std::to_string(p) + ")", s.descriptor, lhs, rhs,
                     tol);
}

BoundReport hinf_gap(const DensityStats& s, double p, double tol) {
  if (!(p > 0.0)) throw std::invalid_argument("hinf_gap: p must be > 0");
  const double lhs = -std::log(s.f0);
  const double rhs = std::log(s.sigma_p(p)) +
                     (p * std::log(2.0) - std::lgamma(p + 1.0)) / p;
  return make_report("prop3.4(p=" + std::to_string(p) + ")", s.descriptor, lhs, rhs,
                     tol);
}

BoundReport renyi_gap(const DensityStats& s, double p, double q, double tol) {
  if (!(p > 0.0) || p > 2.0) throw std::invalid_argument("renyi_gap: p must be in (0,2]");
  if (!(q >= 0.0) || q > 1.0)
    throw std::invalid_argument("renyi_gap: q must be in [0,1]");
  const std::string name =
      "thm5.1(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
  if (q == 0.0 && std::isinf(s.support_edge)) {
    BoundReport r = make_report(name, s.descriptor, kInf, thm1_rhs(s.sigma_p(p), p), tol);
    r.verdict = Verdict::Holds;  // h_0 = +inf on unbounded support
    return r;
  }
  return make_report(name, s.descriptor, s.hq(q), thm1_rhs(s.sigma_p(p), p), tol);
}

BoundReport renyi_gap_p0(const DensityStats& s, double q, double tol) {
  if (!(q >= 0.0) || q > 1.0)
    throw std::invalid_argument("renyi_gap_p0: q must be in [0,1]");
  const std::string name = "thm5.1(p->0,q=" + std::to_string(q) + ")";
  const double rhs = s.elogx + std::log(2.0) + 1.0;
  if (q == 0.0 && std::isinf(s.support_edge)) {
    BoundReport r = make_report(name, s.descriptor, kInf, rhs, tol);
    r.verdict = Verdict::Holds;
    return r;
  }
  return make_report(name, s.descriptor, s.hq(q), rhs, tol);
}

BoundReport renyi_gap_above_one(const DensityStats& s, double p, double q, double tol) {
  if (!(p > 0.0) || p > 2.0)
    throw std::invalid_argument("renyi_gap_above_one: p must be in (0,2]");
  if (!(q > 1.0)) throw std::invalid_argument("renyi_gap_above_one: q must be > 1");
  // The printed slack (log q)/(q-1) stops being provable past q ~ 2.36 (the
  // symmetrized exponential crosses it); from there the order-comparison
  // route gives 1 - (log q)/(q-1), so take the larger of the two.
  const double slack = std::max(order_factor(q), 1.0 - order_factor(q));
  const double rhs = thm1_rhs(s.sigma_p(p), p) - slack;
  const std::string name =
      "renyi_q>1(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
  return make_report(name, s.descriptor, s.hq(q), rhs, tol, /*allow_equality=*/false);
}

BoundReport positive_halfline_gap(const PositiveDensity& f, double p,
                                  std::string descriptor, double tol) {
  if (!(p > 0.0) || p > 2.0)
    throw std::invalid_argument("positive_halfline_gap: p must be in (0,2]");
  const double h = shannon_entropy(f);
  const double mp = moment_p(f, p);
  const double rhs = std::log(mp) + std::log1p(p) / p;
  return make_report("thm2.6(p=" + std::to_string(p) + ")", std::move(descriptor), h,
                     rhs, tol);
}

BoundReport iso_gap(const DensityStats& s, double tol) {
  const double l2 = isotropic_constant_sq_values(s.f0, s.var);
  return make_report("iso_L2", s.descriptor, 0.5, l2, tol);
}

BoundReport cor21_gap(const DensityStats& s, double tol) {
  const double d = relative_entropy_from_gaussianity_h(s.hq(1.0), s.var);
  return make_report("cor2.1", s.descriptor, 0.5 * std::log(kPi * kE / 6.0), d, tol);
}

BoundReport cor54_iq_gap(const DensityStats& s, double p, double q, double tol) {
  const ConstantsPQ c = constants(p, q);
  if (c.q >= 1.0) throw std::invalid_argument("cor54_iq_gap: q must be < 1");
  const double m = 1.0 / (1.0 - q);
  // Z scaled to the p-th moment of X maximizes h_q, so I_q(X||Z) is the
  // entropy difference (the projection identity for linear families)
  const double hz = std::log(c.A_pq) + m * std::log1p(1.0 / (p * c.beta)) +
                    std::log(s.sigma_p(p));
  const double iq = hz - s.hq(q);
  const double bound = std::log(c.A_pq) + m * std::log1p(1.0 / (p * c.beta)) -
                       std::log(2.0) - std::log1p(p) / p;
  const std::string name =
      "cor5.4(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
  return make_report(name, s.descriptor, bound, iq, tol);
}

// ---------------------------------------------------------------------------

double repi_constant(double q) {
  if (std::abs(q - 1.0) < 1e-9) return kPi * kE / 6.0;
  if (!(q > 1.0 / 3.0) || q > 1.0)
    throw std::invalid_argument("repi_constant: q must be in (1/3, 1]");
  const GeneralizedGaussian g2 = GeneralizedGaussian::make(2.0, q);
  const double m = 1.0 / (1.0 - q);
  return g2.A * g2.A / 12.0 * std::exp(2.0 * m * std::log1p(1.0 / (2.0 * g2.beta)));
}

BoundReport repi_check(const PiecewiseLogLinearDensity& a,
                       const PiecewiseLogLinearDensity& b, double q, std::size_t grid_n,
                       double tol) {
  const double hw = std::max(a.tail_cutoff(1e-10), b.tail_cutoff(1e-10));
  const std::size_t side = (grid_n - 1) / 2;
  const double h = hw / static_cast<double>(side);
  const double left = -static_cast<double>(side) * h;
  const GridDensity ga = sample_grid([&a](double x) { return a(x); }, left, h, grid_n);
  const GridDensity gb = sample_grid([&b](double x) { return b(x); }, left, h, grid_n);
  const GridDensity gc = convolve(ga, gb);
  const bool shannon = std::abs(q - 1.0) < 1e-9;
  double n_sum, n_conv;
  if (shannon) {
    n_sum = entropy_power(a) + entropy_power(b);
    n_conv = entropy_power(gc);
  } else {
    n_sum = renyi_entropy_power(a, q) + renyi_entropy_power(b, q);
    n_conv = renyi_entropy_power(gc, q);
  }
  const double rhs = repi_constant(q) * n_sum;
  const std::string name = shannon ? "cor5.5(N)" : "cor5.5(Nq,q=" + std::to_string(q) + ")";
  return make_report(name, "pair", rhs, n_conv, tol, /*allow_equality=*/false);
}

double iso_mixture_l(double t, double a) {
  return std::sqrt(2.0 * t + a * a / 3.0 * (1.0 - t)) *
         (0.5 * t + 0.5 * (1.0 - t) / a);
}

BoundReport iso_nonconvexity_fixture(double a) {
  const double h = 1e-3;
  double min_dd = kInf, max_dd = -kInf;
  for (double t = 0.02; t <= 0.98 + 1e-12; t += 0.005) {
    const double dd =
        (iso_mixture_l(t - h, a) - 2.0 * iso_mixture_l(t, a) + iso_mixture_l(t + h, a)) /
        (h * h);
    min_dd = std::min(min_dd, dd);
    max_dd = std::max(max_dd, dd);
  }
  BoundReport r;
  r.name = "iso_nonconvexity(a=" + std::to_string(a) + ")";
  r.inputs = "symexp/uniform mixture path";
  r.lhs = min_dd;
  r.rhs = max_dd;
  r.tolerance = 1e-6;
  const bool both = min_dd < -r.tolerance && max_dd > r.tolerance;
  r.gap = both ? std::min(-min_dd, max_dd) : -1.0;
  r.verdict = both ? Verdict::Holds : Verdict::Violated;
  return r;
}

// ---------------------------------------------------------------------------

std::uint64_t trial_seed(std::uint64_t seed, long trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<std::string> known_suites() {
  return {"thm1",   "sandwich", "cor21", "lemma33",       "prop34",
          "thm51",  "renyiq1",  "iso",   "cor54",         "halfline",
          "repi",   "fixtures", "nonconvexity"};
}

namespace {

struct TrialContext {
  std::uint64_t tseed;
  int pieces;
  SupportStyle style;
  std::string descriptor;
  DensityStats stats;
};

TrialContext make_trial(std::uint64_t seed, long trial) {
  TrialContext t;
  t.tseed = trial_seed(seed, trial);
  t.pieces = 1 + static_cast<int>(t.tseed % 5);
  t.style = (t.tseed >> 8) & 1 ? SupportStyle::Bounded : SupportStyle::Unbounded;
  t.descriptor = "random(seed=" + std::to_string(t.tseed) +
                 ",pieces=" + std::to_string(t.pieces) +
                 ",style=" + (t.style == SupportStyle::Bounded ? "bounded" : "unbounded") +
                 ")";
  t.stats = stats_of(random_density(t.tseed, t.pieces, t.style), t.descriptor);
  return t;
}

bool has_suite(const BatchConfig& cfg, const std::string& s) {
  if (cfg.suites.empty()) return true;
  return std::find(cfg.suites.begin(), cfg.suites.end(), s) != cfg.suites.end();
}

void run_trial(const BatchConfig& cfg, long trial, std::vector<BoundReport>& out) {
  const TrialContext t = make_trial(cfg.seed, trial);
  if (has_suite(cfg, "thm1"))
    for (double p : cfg.p_set) out.push_back(thm1_gap(t.stats, p));
  if (has_suite(cfg, "sandwich")) out.push_back(sandwich(t.stats));
  if (has_suite(cfg, "cor21")) out.push_back(cor21_gap(t.stats));
  if (has_suite(cfg, "lemma33"))
    for (double p : cfg.p_set_unrestricted) out.push_back(rev_hensley_gap(t.stats, p));
  if (has_suite(cfg, "prop34"))
    for (double p : cfg.p_set_unrestricted) out.push_back(hinf_gap(t.stats, p));
  if (has_suite(cfg, "thm51")) {
    for (double q : cfg.q_set) {
      for (double p : cfg.p_set) out.push_back(renyi_gap(t.stats, p, q));
      out.push_back(renyi_gap_p0(t.stats, q));
    }
  }
  if (has_suite(cfg, "renyiq1")) {
    for (double q : {1.5, 2.0, 4.0, kInf})
      for (double p : cfg.p_set) out.push_back(renyi_gap_above_one(t.stats, p, q));
  }
  if (has_suite(cfg, "iso")) out.push_back(iso_gap(t.stats));
  if (has_suite(cfg, "cor54")) {
    out.push_back(cor54_iq_gap(t.stats, 2.0, 0.5));
    out.push_back(cor54_iq_gap(t.stats, 1.0, 0.75));
  }
  if (has_suite(cfg, "halfline")) {
    const PositiveDensity pd =
        random_positive_density(t.tseed, t.pieces, t.style);
    const std::string desc = "random_positive(seed=" + std::to_string(t.tseed) + ")";
    for (double p : cfg.p_set) out.push_back(positive_halfline_gap(pd, p, desc));
  }
  if (has_suite(cfg, "repi")) {
    const PiecewiseLogLinearDensity a = random_density(t.tseed, t.pieces, t.style);
    const std::uint64_t seed_b = trial_seed(t.tseed, 1);
    const PiecewiseLogLinearDensity b = random_density(
        seed_b, 1 + static_cast<int>(seed_b % 5),
        (seed_b >> 8) & 1 ? SupportStyle::Bounded : SupportStyle::Unbounded);
    out.push_back(repi_check(a, b, 1.0, cfg.repi_grid_n));
    for (double q : cfg.q_repi) out.push_back(repi_check(a, b, q, cfg.repi_grid_n));
  }
}

void run_fixtures(const BatchConfig& cfg, std::vector<BoundReport>& out) {
  const std::vector<Fixture> fixtures = {uniform_fixture(1.0), gaussian_fixture(1.0),
                                         symexp_fixture(1.0), triangle_fixture(2.0)};
  for (const Fixture& f : fixtures) {
    const DensityStats s = stats_of(f);
    for (double p : cfg.p_set) out.push_back(thm1_gap(s, p));
    out.push_back(sandwich(s));
    out.push_back(cor21_gap(s));
    for (double p : cfg.p_set_unrestricted) {
      out.push_back(rev_hensley_gap(s, p));
      out.push_back(hinf_gap(s, p));
    }
    for (double q : cfg.q_set) {
      if (q == 0.0 && std::isinf(f.support_edge)) continue;
      for (double p : cfg.p_set) out.push_back(renyi_gap(s, p, q));
      out.push_back(renyi_gap_p0(s, q));
    }
    out.push_back(iso_gap(s));
    out.push_back(cor54_iq_gap(s, 2.0, 0.5));
  }
}

}  // namespace

BatchResult batch_verify(const BatchConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("batch_verify: trials must be >= 1");
  for (const std::string& s : cfg.suites) {
    const auto ks = known_suites();
    if (std::find(ks.begin(), ks.end(), s) == ks.end())
      throw std::invalid_argument("batch_verify: unknown suite " + s);
  }
  BatchResult res;
  const long n = cfg.trials;
  std::vector<std::vector<BoundReport>> per_trial(static_cast<std::size_t>(n));
  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    for (long i = 0; i < n; ++i) run_trial(cfg, i, per_trial[static_cast<std::size_t>(i)]);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1))
          run_trial(cfg, i, per_trial[static_cast<std::size_t>(i)]);
      });
    for (std::thread& th : pool) th.join();
  }
  // merged deterministically by trial index regardless of worker count
  std::vector<std::uint64_t> seeds;
  for (long i = 0; i < n; ++i) {
    const std::uint64_t ts = trial_seed(cfg.seed, i);
    for (BoundReport& r : per_trial[static_cast<std::size_t>(i)]) {
      res.reports.push_back(std::move(r));
      seeds.push_back(ts);
    }
  }
  if (cfg.include_fixtures && has_suite(cfg, "fixtures")) run_fixtures(cfg, res.reports);
  if (has_suite(cfg, "nonconvexity")) res.reports.push_back(iso_nonconvexity_fixture());
  seeds.resize(res.reports.size(), 0);

  std::map<std::string, SuiteSummary> agg;
  for (std::size_t i = 0; i < res.reports.size(); ++i) {
    const BoundReport& r = res.reports[i];
    SuiteSummary& s = agg[r.name];
    s.inequality = r.name;
    s.trials++;
    if (r.gap < s.min_gap) {
      s.min_gap = r.gap;
      s.argmin_seed = seeds[i];
      s.argmin_inputs = r.inputs;
    }
    if (r.verdict == Verdict::Equality) s.equalities++;
    if (r.verdict == Verdict::Violated) {
      s.violations++;
      res.any_violation = true;
    }
  }
  for (auto& [k, v] : agg) res.summaries.push_back(v);
  return res;
}

}  // namespace lcinfo
