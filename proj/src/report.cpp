#include "lcinfo/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace lcinfo {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double nats_to_units(double nats, bool bits) {
  return bits ? nats / std::log(2.0) : nats;
}

std::string to_json_line(const BoundReport& r, bool bits) {
  nlohmann::json j;
  j["name"] = r.name;
  j["inputs"] = r.inputs;
  j["lhs"] = nats_to_units(r.lhs, bits);
  j["rhs"] = nats_to_units(r.rhs, bits);
  j["gap"] = nats_to_units(r.gap, bits);
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  j["units"] = bits ? "bits" : "nats";
  return j.dump();
}

std::string reports_to_jsonl(const std::vector<BoundReport>& rs, bool bits) {
  std::string out;
  for (const BoundReport& r : rs) {
    out += to_json_line(r, bits);
    out += '\n';
  }
  return out;
}

std::string summaries_to_csv(const std::vector<SuiteSummary>& ss) {
  std::string out =
      "inequality,trials,min_gap,argmin_seed,argmin_inputs,equalities,violations\n";
  for (const SuiteSummary& s : ss) {
    out += s.inequality + "," + std::to_string(s.trials) + "," +
           format_double(s.min_gap) + "," + std::to_string(s.argmin_seed) + ",\"" +
           s.argmin_inputs + "\"," + std::to_string(s.equalities) + "," +
           std::to_string(s.violations) + "\n";
  }
  return out;
}

std::string to_json(const BAResult& r, const std::string& noise, double P, bool bits) {
  nlohmann::json j;
  j["noise"] = noise;
  j["P"] = P;
  j["capacity"] = nats_to_units(r.capacity, bits);
  j["multiplier"] = r.multiplier;
  j["iterations"] = r.iterations;
  j["convergence_gap"] = r.convergence_gap;
  j["achieved_cost"] = r.achieved_cost;
  j["converged"] = r.converged;
  j["units"] = bits ? "bits" : "nats";
  j["input_dist"] = r.input_dist;
  return j.dump();
}

std::string capacity_report_json(const std::string& noise, double P,
                                 const CapacityBounds& shannon, double ihara,
                                 const double* ba_estimate, bool bits) {
  nlohmann::json j;
  j["noise"] = noise;
  j["P"] = P;
  j["lower_shannon"] = nats_to_units(shannon.lower, bits);
  j["upper_shannon"] = nats_to_units(shannon.upper, bits);
  j["upper_ihara"] = nats_to_units(ihara, bits);
  if (ba_estimate) j["ba_estimate"] = nats_to_units(*ba_estimate, bits);
  j["units"] = bits ? "bits" : "nats";
  return j.dump();
}

std::string scan_surface_csv(const std::vector<ScanPoint>& pts, double min_G) {
  std::string out = "s,t,p,G\n";
  char buf[128];
  for (const ScanPoint& pt : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", pt.s, pt.t, pt.p, pt.G);
    out += buf;
  }
  out += "# min_G = " + format_double(min_G) + "\n";
  return out;
}

std::string uvw_csv(const std::vector<double>& ts) {
  std::string out = "t,u,v,w\n";
  char buf[160];
  for (double t : ts) {
    const UVW r = aux_uvw(t);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", t, r.u, r.v, r.w);
    out += buf;
  }
  return out;
}

}  // namespace lcinfo
