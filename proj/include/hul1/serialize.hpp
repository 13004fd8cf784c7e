#pragma once

#include <string>

#include "hul1/hyersulam.hpp"

namespace hul1 {

// Polynomial JSON: {"coeffs": [[re,im], ...]} ascending degree; a zero
// leading coefficient is rejected.
Poly poly_from_json(const std::string& text);
std::string poly_to_json(const Poly& p);

// Function JSON: {"terms":[{"c":[re,im],"m":0,"z":[re,im],
//   "support":"pos"|"neg"|"whole"|{"interval":[a,b]}|{"from":a}|{"to":b}}]}
ExpPolyFunction expfun_from_json(const std::string& text);
std::string expfun_to_json(const ExpPolyFunction& f);

// Samples CSV: header "t,re,im", one row per sample; grid parameters live in
// a JSON sidecar {"T":..., "N":...}.
std::string samples_to_csv(const SampledFunction& s);
SampledFunction samples_from_csv(const std::string& csv, const Grid& grid);
std::string grid_to_json(const Grid& g);
Grid grid_from_json(const std::string& text);

std::string green_to_json(const GreensFunction& g);
std::string stability_report_to_json(const StabilityReport& r);
std::string probe_report_to_json(const ProbeReport& r);
std::string probe_reports_to_csv(const std::vector<ProbeReport>& rows);

}  // namespace hul1
