#include "lcinfo/ba.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lcinfo/functionals.hpp"
#include "lcinfo/kernels.hpp"

namespace lcinfo {

namespace {

double pll_scale(double var) { return std::max(std::sqrt(var), 1e-6); }

}  // namespace

ChannelNoise channel_noise(const PiecewiseLogLinearDensity& d, std::string descriptor,
                           double eps_tail) {
  ChannelNoise n;
  n.descriptor = std::move(descriptor);
  const double T = d.tail_cutoff(eps_tail);
  n.lo = -T;
  n.hi = T;
  n.scale = pll_scale(variance(d));
  n.pdf = [d](double u) { return d(u); };
  return n;
}

ChannelNoise channel_noise(const PositiveDensity& d, std::string descriptor,
                           double eps_tail) {
  ChannelNoise n;
  n.descriptor = std::move(descriptor);
  n.lo = 0.0;
  n.hi = d.tail_cutoff(eps_tail);
  const double mu = mean(d);
  n.scale = pll_scale(moment_p(d, 2.0) * moment_p(d, 2.0) - mu * mu);
  n.pdf = [d](double u) { return d(u); };
  return n;
}

ChannelNoise channel_noise(const GridDensity& d, std::string descriptor) {
  ChannelNoise n;
  n.descriptor = std::move(descriptor);
  n.lo = d.left;
  n.hi = d.right();
  n.scale = pll_scale(variance(d));
  n.pdf = [d](double u) { return d.interpolate(u); };
  return n;
}

ChannelNoise gaussian_channel_noise(double var, std::string descriptor, double eps_tail) {
  if (!(var > 0.0)) throw std::invalid_argument("gaussian noise: var must be > 0");
  ChannelNoise n;
  n.descriptor = std::move(descriptor);
  const double sigma = std::sqrt(var);
  const double T = sigma * (std::sqrt(2.0 * std::log(2.0 / eps_tail)) + 1.0);
  n.lo = -T;
  n.hi = T;
  n.scale = sigma;
  n.pdf = [var](double u) {
    return std::exp(-0.5 * u * u / var) / std::sqrt(2.0 * std::numbers::pi * var);
  };
  return n;
}

ChannelNoise exponential_channel_noise(double a, std::string descriptor,
                                       double eps_tail) {
  if (!(a > 0.0)) throw std::invalid_argument("exponential noise: mean must be > 0");
  ChannelNoise n;
  n.descriptor = std::move(descriptor);
  n.lo = 0.0;
  n.hi = -a * std::log(eps_tail);
  n.scale = a;
  n.pdf = [a](double u) { return u >= 0.0 ? std::exp(-u / a) / a : 0.0; };
  return n;
}

ChannelNoise mixture_channel_noise(const GaussianMixtureSpec& spec, double eps_tail) {
  spec.validate();
  ChannelNoise n;
  n.descriptor = "gaussian_mixture";
  double smax = 0.0;
  for (double v : spec.variances) smax = std::max(smax, std::sqrt(v));
  const double T = smax * (std::sqrt(2.0 * std::log(2.0 / eps_tail)) + 1.0);
  n.lo = -T;
  n.hi = T;
  n.scale = std::sqrt(spec.variance());
  n.pdf = [spec](double u) { return spec.pdf(u); };
  return n;
}

ChannelInstance build_channel(const ChannelNoise& noise, double P, CostKind kind,
                              ChannelGridSpec spec) {
  if (!(P > 0.0)) throw std::invalid_argument("build_channel: P must be > 0");
  if (spec.m < 3) throw std::invalid_argument("build_channel: need at least 3 inputs");
  ChannelInstance ch;
  ch.P = P;
  ch.kind = kind;
  // input grid
  if (kind == CostKind::Power) {
    const double R = spec.input_radius > 0.0 ? spec.input_radius : 4.0 * std::sqrt(P);
    const double hx = 2.0 * R / static_cast<double>(spec.m - 1);
    for (std::size_t i = 0; i < spec.m; ++i)
      ch.x.push_back(-R + hx * static_cast<double>(i));
  } else {
    const double R = spec.input_radius > 0.0 ? spec.input_radius : 12.0 * P;
    const double hx = R / static_cast<double>(spec.m - 1);
    for (std::size_t i = 0; i < spec.m; ++i) ch.x.push_back(hx * static_cast<double>(i));
  }
  for (double xi : ch.x) ch.cost.push_back(kind == CostKind::Power ? xi * xi : xi);
  // output grid covering input + noise support
  const double ylo = ch.x.front() + noise.lo;
  const double yhi = ch.x.back() + noise.hi;
  std::size_t n = spec.n;
  if (n == 0) {
    const double target = noise.scale / 64.0;
    n = static_cast<std::size_t>(std::ceil((yhi - ylo) / target)) + 1;
    n = std::clamp<std::size_t>(n, 129, 4097);
  }
  const double hy = (yhi - ylo) / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) ch.y.push_back(ylo + hy * static_cast<double>(j));
  // rows renormalized to a proper kernel
  ch.W.assign(spec.m * n, 0.0);
  for (std::size_t i = 0; i < spec.m; ++i) {
    double* row = ch.W.data() + i * n;
    double rs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = noise.pdf(ch.y[j] - ch.x[i]);
      row[j] = w > 0.0 ? w : 0.0;
      rs += row[j];
    }
    if (!(rs > 0.0))
      throw std::invalid_argument(
          "build_channel: output grid misses the noise support of input " +
          std::to_string(i) + "; required extent [" + std::to_string(ylo) + "," +
          std::to_string(yhi) + "]");
    for (std::size_t j = 0; j < n; ++j) row[j] /= rs;
  }
  return ch;
}

namespace {

struct InnerState {
  std::vector<double> p;       // input distribution
  std::vector<double> q;       // output distribution
  std::vector<double> logq;
  std::vector<double> d;       // per-input divergence D(W_i || q)
  std::vector<double> t;       // d - s * cost
  double info = 0.0;           // I(p) in nats
  double cost = 0.0;
  double gap = 0.0;            // max_i t_i - sum_i p_i t_i
  long iterations = 0;
  bool capped = false;         // last inner run hit the iteration budget
};

// relative-entropy rows r_i = sum_j W_ij log W_ij, fixed per channel
std::vector<double> row_neg_entropies(const ChannelInstance& ch) {
  std::vector<double> r(ch.m(), 0.0);
  for (std::size_t i = 0; i < ch.m(); ++i) {
    const double* row = ch.W.data() + i * ch.n();
    double acc = 0.0;
    for (std::size_t j = 0; j < ch.n(); ++j)
      if (row[j] > 0.0) acc += row[j] * std::log(row[j]);
    r[i] = acc;
  }
  return r;
}

// alternating maximization at fixed multiplier s
void inner_ba(const ChannelInstance& ch, const std::vector<double>& rowent, double s,
              double gap_tol, long max_iter, InnerState& st) {
  const std::size_t m = ch.m(), n = ch.n();
  const kern::Ops& K = kern::active();
  st.q.resize(n);
  st.logq.resize(n);
  st.d.resize(m);
  st.t.resize(m);
  std::vector<double> wv(m);
  // revive inputs whose mass underflowed during an earlier, larger
  // multiplier; the exponential update can never resurrect an exact zero
  double z0 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    st.p[i] = std::max(st.p[i], 1e-30);
    z0 += st.p[i];
  }
  for (std::size_t i = 0; i < m; ++i) st.p[i] /= z0;
  double last_info = -kInf;
  st.capped = true;
  for (long it = 0; it < max_iter; ++it) {
    ++st.iterations;
    K.matvec_t(ch.W.data(), m, n, st.p.data(), st.q.data());
    for (std::size_t j = 0; j < n; ++j)
      st.logq[j] = st.q[j] > 0.0 ? std::log(st.q[j]) : -745.0;
    K.matvec(ch.W.data(), m, n, st.logq.data(), wv.data());
    for (std::size_t i = 0; i < m; ++i) {
      st.d[i] = rowent[i] - wv[i];
      st.t[i] = st.d[i] - s * ch.cost[i];
    }
    st.info = K.dot(st.p.data(), st.d.data(), m);
    st.cost = K.dot(st.p.data(), ch.cost.data(), m);
    const double obj = K.dot(st.p.data(), st.t.data(), m);
    double tmax = -kInf;
    for (std::size_t i = 0; i < m; ++i) tmax = std::max(tmax, st.t[i]);
    st.gap = tmax - obj;
    if (st.gap <= gap_tol || std::abs(st.info - last_info) <= 1e-2 * gap_tol) {
      st.capped = false;
      return;
    }
    last_info = st.info;
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      st.p[i] *= std::exp(st.t[i] - tmax);
      z += st.p[i];
    }
    for (std::size_t i = 0; i < m; ++i) st.p[i] /= z;
  }
}

}  // namespace

BAResult ba_capacity(const ChannelInstance& ch, double tol, long max_iter) {
  const std::size_t m = ch.m();
  const std::vector<double> rowent = row_neg_entropies(ch);
  InnerState st;
  st.p.assign(m, 1.0 / static_cast<double>(m));
  const double gap_tol = std::max(tol, 1e-12);
  // multiplier search runs at a coarse inner tolerance; the final multiplier
  // gets polished to the requested one
  const double coarse = std::max(1e-4, 10.0 * gap_tol);

  auto solve_at = [&](double s, double gtol) {
    inner_ba(ch, rowent, s, gtol, max_iter, st);
  };

  solve_at(0.0, coarse);
  double s_final = 0.0;
  if (st.cost > ch.P * (1.0 + 1e-9)) {
    double s_lo = 0.0, c_lo = st.cost;
    double s_hi = 0.5 / (ch.P + 1.0);  // AWGN-like marginal rate as a first guess
    double c_hi = kInf;
    for (int it = 0; it < 90; ++it) {
      solve_at(s_hi, coarse);
      c_hi = st.cost;
      if (c_hi <= ch.P) break;
      s_lo = s_hi;
      c_lo = c_hi;
      s_hi *= 2.0;
    }
    const double cost_tol = 1e-6 * ch.P;
    for (int it = 0; it < 70; ++it) {
      if (std::abs(c_hi - ch.P) <= cost_tol) break;
      // regula falsi with bisection fallback on the monotone cost curve
      double mid = 0.5 * (s_lo + s_hi);
      if (std::isfinite(c_lo) && c_lo > c_hi) {
        const double interp = s_lo + (c_lo - ch.P) * (s_hi - s_lo) / (c_lo - c_hi);
        if (interp > s_lo + 1e-3 * (s_hi - s_lo) && interp < s_hi - 1e-3 * (s_hi - s_lo))
          mid = interp;
      }
      solve_at(mid, coarse);
      if (st.cost > ch.P) {
        s_lo = mid;
        c_lo = st.cost;
      } else {
        s_hi = mid;
        c_hi = st.cost;
      }
      if (s_hi - s_lo <= 1e-12 * (1.0 + s_hi)) break;
    }
    s_final = s_hi;
  }
  solve_at(s_final, gap_tol);  // polish on the feasible side of the budget
  BAResult res;
  res.capacity = st.info;
  res.input_dist = st.p;
  res.multiplier = s_final;
  res.iterations = st.iterations;
  res.convergence_gap = st.gap;
  res.achieved_cost = st.cost;
  res.converged = st.gap <= std::max(1e-4, 10.0 * gap_tol) && st.cost <= ch.P + 1e-8;
  return res;
}

BoundReport convexity_probe(const ChannelNoise& u1, const ChannelNoise& u2,
                            const std::vector<double>& lambdas, double P, double tol,
                            ChannelGridSpec spec) {
  // shared grids so the discretization bias cancels between the three runs
  ChannelNoise hull = u1;
  hull.descriptor = "blend";
  hull.lo = std::min(u1.lo, u2.lo);
  hull.hi = std::max(u1.hi, u2.hi);
  hull.scale = std::min(u1.scale, u2.scale);
  auto p1 = u1.pdf, p2 = u2.pdf;
  hull.pdf = [p1, p2](double u) { return 0.5 * (p1(u) + p2(u)); };
  ChannelInstance base = build_channel(hull, P, CostKind::Power, spec);
  spec.n = base.n();
  spec.input_radius = base.x.back();

  ChannelNoise n1 = u1, n2 = u2;
  n1.lo = n2.lo = hull.lo;
  n1.hi = n2.hi = hull.hi;
  const ChannelInstance ch1 = build_channel(n1, P, CostKind::Power, spec);
  const ChannelInstance ch2 = build_channel(n2, P, CostKind::Power, spec);
  const BAResult r1 = ba_capacity(ch1);
  const BAResult r2 = ba_capacity(ch2);

  double min_slack = kInf;
  double worst_lambda = 0.0;
  for (double lam : lambdas) {
    ChannelInstance mix = ch1;
    for (std::size_t k = 0; k < mix.W.size(); ++k)
      mix.W[k] = lam * ch1.W[k] + (1.0 - lam) * ch2.W[k];
    const BAResult rm = ba_capacity(mix);
    const double slack = lam * r1.capacity + (1.0 - lam) * r2.capacity - rm.capacity;
    if (slack < min_slack) {
      min_slack = slack;
      worst_lambda = lam;
    }
  }
  BoundReport rep = make_report(
      "thm6.1", u1.descriptor + "+" + u2.descriptor + ",P=" + std::to_string(P) +
                    ",worst_lambda=" + std::to_string(worst_lambda),
      min_slack, 0.0, tol, /*allow_equality=*/false);
  return rep;
}

}  // namespace lcinfo
