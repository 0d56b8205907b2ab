// lcinfo: verify the moment-entropy inequality suite, compute capacity
// bounds, run the constrained Blahut-Arimoto estimator and export extremal
// scans.
//
// Exit codes: 0 all checks hold, 1 violation found, 2 usage/config error,
// 3 numerical non-convergence.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lcinfo/ba.hpp"
#include "lcinfo/capacity.hpp"
#include "lcinfo/density.hpp"
#include "lcinfo/extremal.hpp"
#include "lcinfo/functionals.hpp"
#include "lcinfo/inequalities.hpp"
#include "lcinfo/report.hpp"

namespace {

using namespace lcinfo;

struct NoiseSpec {
  bool positive = false;
  std::string name;
  std::optional<NoiseStats> stats;
  std::optional<PositiveNoiseStats> pstats;
  std::optional<ChannelNoise> cnoise;
};

double param_of(const std::string& text, double fallback) {
  const auto c = text.find(':');
  if (c == std::string::npos) return fallback;
  return std::stod(text.substr(c + 1));
}

GaussianMixtureSpec parse_mixture(const std::string& body) {
  GaussianMixtureSpec spec;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto comma = body.find(',', pos);
    const std::string item =
        body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto star = item.find('*');
    if (star == std::string::npos)
      throw std::invalid_argument("mixture items must be weight*variance");
    spec.weights.push_back(std::stod(item.substr(0, star)));
    spec.variances.push_back(std::stod(item.substr(star + 1)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  spec.validate();
  return spec;
}

NoiseSpec parse_noise(const std::string& text) {
  NoiseSpec ns;
  ns.name = text;
  std::string payload = text;
  if (!text.empty() && text[0] != '{' && std::filesystem::exists(text)) {
    std::ifstream in(text);
    payload.assign(std::istreambuf_iterator<char>(in), {});
  }
  if (!payload.empty() && payload[0] == '{') {
    PiecewiseLogLinearDensity d = density_from_json(payload);
    d.normalize();
    ns.name = "json";
    ns.stats = noise_stats(d, ns.name);
    ns.cnoise = channel_noise(d, ns.name);
    return ns;
  }
  if (text.rfind("gaussian", 0) == 0) {
    const double v = param_of(text, 1.0);
    ns.stats = NoiseStats{
        text, v, 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * v), true};
    ns.cnoise = gaussian_channel_noise(v, text);
    return ns;
  }
  if (text.rfind("uniform", 0) == 0) {
    const double v = param_of(text, 1.0);
    const PiecewiseLogLinearDensity d = uniform_density(std::sqrt(3.0 * v));
    ns.stats = noise_stats(d, text);
    ns.cnoise = channel_noise(d, text);
    return ns;
  }
  if (text.rfind("symexp", 0) == 0) {
    const double v = param_of(text, 2.0);
    const PiecewiseLogLinearDensity d = symexp_density(std::sqrt(2.0 / v));
    ns.stats = noise_stats(d, text);
    ns.cnoise = channel_noise(d, text);
    return ns;
  }
  if (text.rfind("mixture", 0) == 0) {
    const GaussianMixtureSpec spec = parse_mixture(text.substr(text.find(':') + 1));
    const GridDensity g = mixture(spec);
    ns.stats = noise_stats(g, text, false);
    ns.cnoise = mixture_channel_noise(spec);
    return ns;
  }
  if (text.rfind("exponential", 0) == 0) {
    const double a = param_of(text, 1.0);
    const PositiveDensity d = exponential_density(a);
    ns.positive = true;
    ns.pstats = positive_noise_stats(d, text);
    ns.cnoise = channel_noise(d, text);
    return ns;
  }
  if (text.rfind("posuniform", 0) == 0) {
    const double L = param_of(text, 2.0);
    const PositiveDensity d = positive_uniform_density(L);
    ns.positive = true;
    ns.pstats = positive_noise_stats(d, text);
    ns.cnoise = channel_noise(d, text);
    return ns;
  }
  if (text.rfind("halfgauss", 0) == 0) {
    const double v = param_of(text, 1.0);
    const PositiveDensity d = half_gaussian_positive(v);
    ns.positive = true;
    ns.pstats = positive_noise_stats(d, text);
    ns.cnoise = channel_noise(d, text);
    return ns;
  }
  throw std::invalid_argument("unknown noise spec: " + text);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    out.push_back(std::stod(
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}


void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int cmd_verify(std::uint64_t seed, int trials, const std::string& suites,
               const std::string& ps, const std::string& qs, const std::string& out_dir,
               int workers, bool bits) {
  BatchConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.workers = workers;
  if (!suites.empty() && suites != "all") {
    std::size_t pos = 0;
    while (pos < suites.size()) {
      const auto comma = suites.find(',', pos);
      cfg.suites.push_back(suites.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (!ps.empty()) cfg.p_set = parse_list(ps);
  if (!qs.empty()) cfg.q_set = parse_list(qs);
  const BatchResult res = batch_verify(cfg);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/reports.jsonl", reports_to_jsonl(res.reports, bits));
    write_file(out_dir + "/summary.csv", summaries_to_csv(res.summaries));
  }
  for (const SuiteSummary& s : res.summaries) {
    std::cout << s.inequality << ": trials=" << s.trials
              << " min_gap=" << format_double(s.min_gap)
              << " equalities=" << s.equalities << " violations=" << s.violations
              << "\n";
  }
  std::cout << (res.any_violation ? "RESULT: VIOLATED" : "RESULT: all hold") << "\n";
  return res.any_violation ? 1 : 0;
}

int cmd_capacity(const std::string& noise, double P, const std::string& constraint,
                 bool run_ba, const std::string& grid, double tol, bool bits) {
  const NoiseSpec ns = parse_noise(noise);
  ChannelGridSpec spec;
  if (!grid.empty()) {
    const auto comma = grid.find(',');
    spec.m = static_cast<std::size_t>(std::stoul(grid.substr(0, comma)));
    if (comma != std::string::npos)
      spec.n = static_cast<std::size_t>(std::stoul(grid.substr(comma + 1)));
  }
  std::optional<double> ba;
  bool converged = true;
  if (run_ba && ns.cnoise) {
    const CostKind kind =
        (constraint == "mean" || ns.positive) ? CostKind::Mean : CostKind::Power;
    const ChannelInstance ch = build_channel(*ns.cnoise, P, kind, spec);
    const BAResult r = ba_capacity(ch, tol);
    ba = r.capacity;
    converged = r.converged;
  }
  if (ns.positive) {
    const CapacityBounds b = verdu_bounds(*ns.pstats, P);
    std::cout << "{\"noise\":\"" << ns.name << "\",\"P\":" << format_double(P)
              << ",\"lower_verdu\":" << format_double(nats_to_units(b.lower, bits))
              << ",\"upper_verdu\":" << format_double(nats_to_units(b.upper, bits))
              << ",\"d_term\":"
              << format_double(nats_to_units(b.upper - b.lower, bits))
              << ",\"slack_bound\":"
              << format_double(nats_to_units(std::log(std::numbers::e / 2.0), bits));
    if (ba) std::cout << ",\"ba_estimate\":" << format_double(nats_to_units(*ba, bits));
    std::cout << ",\"units\":\"" << (bits ? "bits" : "nats") << "\"}\n";
  } else {
    const CapacityBounds b = shannon_bounds(*ns.stats, P);
    const double ih = ihara_upper(*ns.stats, P);
    std::cout << capacity_report_json(ns.name, P, b, ih, ba ? &*ba : nullptr, bits)
              << "\n";
    std::cout << "awgn_reference: "
              << format_double(nats_to_units(awgn_capacity(P, ns.stats->var), bits))
              << (bits ? " bits" : " nats") << "\n";
  }
  return converged ? 0 : 3;
}

int cmd_ba(const std::string& noise, double P, const std::string& constraint,
           const std::string& grid, double tol, bool bits) {
  const NoiseSpec ns = parse_noise(noise);
  if (!ns.cnoise) throw std::invalid_argument("noise spec lacks a density");
  ChannelGridSpec spec;
  if (!grid.empty()) {
    const auto comma = grid.find(',');
    spec.m = static_cast<std::size_t>(std::stoul(grid.substr(0, comma)));
    if (comma != std::string::npos)
      spec.n = static_cast<std::size_t>(std::stoul(grid.substr(comma + 1)));
  }
  const CostKind kind =
      (constraint == "mean" || ns.positive) ? CostKind::Mean : CostKind::Power;
  const ChannelInstance ch = build_channel(*ns.cnoise, P, kind, spec);
  const BAResult r = ba_capacity(ch, tol);
  std::cout << to_json(r, ns.name, P, bits) << "\n";
  return r.converged ? 0 : 3;
}

int cmd_scan(double p, const std::string& s_range, const std::string& t_range, bool uvw,
             bool root, bool explore, const std::string& out_path, int workers) {
  if (root) {
    std::cout << "p* = " << format_double(necessary_condition_root()) << "\n";
    return 0;
  }
  if (uvw) {
    const GridRange tr = parse_range(t_range.empty() ? "0:50:0.01" : t_range);
    std::vector<double> ts;
    for (std::size_t i = 0; i < tr.count(); ++i) ts.push_back(tr.at(i));
    const std::string csv = uvw_csv(ts);
    if (!out_path.empty())
      write_file(out_path, csv);
    else
      std::cout << csv;
    for (double t : ts) {
      const UVW r = aux_uvw(t);
      const double tol = 1e-9 * std::exp(3.0 * t);
      if (r.u < -tol || r.v < -tol || r.w < -tol) {
        std::cerr << "negative auxiliary value at t=" << t << "\n";
        return 1;
      }
    }
    return 0;
  }
  if (explore) {
    const GridRange sr = parse_range(s_range.empty() ? "0:10:0.1" : s_range);
    const GridRange tr = parse_range(t_range.empty() ? "0.05:10:0.05" : t_range);
    const double pstar = necessary_condition_root();
    std::cout << "# EXPLORATORY: p in (2, p*), sufficiency of log Gamma(p+2) <= p is "
                 "open; not a pass/fail gate\n";
    for (double pe = 2.05; pe < pstar; pe += 0.05) {
      const ScanResult r = extremal_grid_scan(pe, sr, tr, workers);
      std::cout << "EXPLORATORY p=" << format_double(pe)
                << " min_G=" << format_double(r.min_G)
                << " at (s=" << format_double(r.argmin_s)
                << ",t=" << format_double(r.argmin_t) << ")\n";
    }
    return 0;
  }
  const GridRange sr = parse_range(s_range.empty() ? "0:10:0.1" : s_range);
  const GridRange tr = parse_range(t_range.empty() ? "0.05:10:0.05" : t_range);
  const ScanResult r = extremal_grid_scan(p, sr, tr, workers, /*keep_surface=*/true);
  const std::string csv = scan_surface_csv(r.surface, r.min_G);
  if (!out_path.empty())
    write_file(out_path, csv);
  else
    std::cout << csv;
  std::cerr << "min_G = " << format_double(r.min_G) << " at (s=" << r.argmin_s
            << ", t=" << r.argmin_t << ")\n";
  return r.min_G >= 0.0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information functionals of log-concave densities"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int trials = 100;
  std::string suites = "all", ps, qs, out_dir;
  int workers = 1;
  bool bits = false;
  CLI::App* verify = app.add_subcommand("verify", "randomized inequality suites");
  verify->add_option("--seed", seed, "rng seed");
  verify->add_option("--trials", trials, "number of random densities");
  verify->add_option("--suite", suites, "comma list or 'all'");
  verify->add_option("--p", ps, "comma list of moment orders");
  verify->add_option("--q", qs, "comma list of Renyi orders");
  verify->add_option("--out", out_dir, "directory for reports.jsonl/summary.csv");
  verify->add_option("--workers", workers, "worker threads");
  verify->add_flag("--bits", bits, "report in bits");

  std::string noise = "gaussian:1";
  double P = 1.0, tol = 1e-7;
  std::string constraint = "power", grid;
  bool run_ba = false;
  CLI::App* capacity = app.add_subcommand("capacity", "closed-form capacity bounds");
  capacity->add_option("--noise", noise, "builtin name[:param], JSON or file");
  capacity->add_option("--budget", P, "power/mean budget");
  capacity->add_option("--constraint", constraint, "power|mean");
  capacity->add_flag("--ba", run_ba, "also run the BA estimator");
  capacity->add_option("--grid", grid, "m,n grid sizes for BA");
  capacity->add_option("--tol", tol, "BA tolerance");
  capacity->add_flag("--bits", bits, "report in bits");

  CLI::App* ba = app.add_subcommand("ba", "constrained Blahut-Arimoto estimate");
  ba->add_option("--noise", noise, "builtin name[:param], JSON or file");
  ba->add_option("--budget", P, "power/mean budget");
  ba->add_option("--constraint", constraint, "power|mean");
  ba->add_option("--grid", grid, "m,n grid sizes");
  ba->add_option("--tol", tol, "duality-gap tolerance");
  ba->add_flag("--bits", bits, "report in bits");

  double scan_p = 2.0;
  std::string s_range, t_range, out_path;
  bool uvw = false, root = false, explore = false;
  CLI::App* scan = app.add_subcommand("scan", "extremal-family gap surfaces");
  scan->add_option("--p", scan_p, "moment order");
  scan->add_option("--s", s_range, "s grid lo:hi:step");
  scan->add_option("--t", t_range, "t grid lo:hi:step");
  scan->add_flag("--uvw", uvw, "tabulate the auxiliary u,v,w functions");
  scan->add_flag("--root", root, "print the root of log Gamma(p+2) = p");
  scan->add_flag("--explore", explore, "exploratory p in (2, p*) sweep");
  scan->add_option("--out", out_path, "CSV output path");
  scan->add_option("--workers", workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(seed, trials, suites, ps, qs, out_dir, workers, bits);
    if (*capacity) return cmd_capacity(noise, P, constraint, run_ba, grid, tol, bits);
    if (*ba) return cmd_ba(noise, P, constraint, grid, tol, bits);
    if (*scan) return cmd_scan(scan_p, s_range, t_range, uvw, root, explore, out_path,
                               workers);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
