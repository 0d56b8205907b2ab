#ifndef LCINFO_REPORT_HPP
#define LCINFO_REPORT_HPP

#include <string>
#include <vector>

#include "lcinfo/ba.hpp"
#include "lcinfo/capacity.hpp"
#include "lcinfo/extremal.hpp"
#include "lcinfo/inequalities.hpp"

namespace lcinfo {

// Deterministic shortest-float formatting shared by every report writer so
// identical runs produce byte-identical files.
std::string format_double(double v);

double nats_to_units(double nats, bool bits);

std::string to_json_line(const BoundReport& r, bool bits = false);
std::string reports_to_jsonl(const std::vector<BoundReport>& rs, bool bits = false);

// CSV summary: inequality,trials,min_gap,argmin_seed,argmin_inputs,
// equalities,violations
std::string summaries_to_csv(const std::vector<SuiteSummary>& ss);

std::string to_json(const BAResult& r, const std::string& noise, double P, bool bits);

// {noise, P, lower_shannon, upper_shannon, upper_ihara, ba_estimate?, units}
std::string capacity_report_json(const std::string& noise, double P,
                                 const CapacityBounds& shannon, double ihara,
                                 const double* ba_estimate, bool bits);

std::string scan_surface_csv(const std::vector<ScanPoint>& pts, double min_G);
std::string uvw_csv(const std::vector<double>& ts);

}  // namespace lcinfo

#endif
