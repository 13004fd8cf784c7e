#include "hul1/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace hul1 {

using nlohmann::json;

namespace {

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::Parse, "expected [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Parse, "malformed JSON");
  return j;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json support_to_json(const Support& s) {
  if (s == Support::pos_halfline()) return "pos";
  if (s == Support::neg_halfline()) return "neg";
  if (s == Support::whole_line()) return "whole";
  if (s.bounded()) return json{{"interval", {s.lo, s.hi}}};
  if (s.hi_finite()) return json{{"to", s.hi}};
  return json{{"from", s.lo}};
}

Support support_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "pos") return Support::pos_halfline();
    if (s == "neg") return Support::neg_halfline();
    if (s == "whole") return Support::whole_line();
    throw Error(ErrorCode::Parse, "unknown support \"" + s + "\"");
  }
  if (j.is_object()) {
    if (j.contains("interval")) {
      const json& iv = j["interval"];
      if (!iv.is_array() || iv.size() != 2)
        throw Error(ErrorCode::Parse, "interval needs [a, b]");
      double a = iv[0].get<double>(), b = iv[1].get<double>();
      if (!(a < b)) throw Error(ErrorCode::Parse, "interval needs a < b");
      return Support::interval(a, b);
    }
    if (j.contains("from")) return Support::from(j["from"].get<double>());
    if (j.contains("to")) return Support::upto(j["to"].get<double>());
  }
  throw Error(ErrorCode::Parse, "unrecognized support");
}

json jumps_to_json(const std::vector<JumpRecord>& jumps) {
  json arr = json::array();
  for (const JumpRecord& j : jumps)
    arr.push_back({{"order", j.order},
                   {"location", j.location},
                   {"size", complex_to_json(j.size)}});
  return arr;
}

}  // namespace

Poly poly_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() ||
      j["coeffs"].empty())
    throw Error(ErrorCode::Parse, "polynomial needs a non-empty coeffs array");
  std::vector<Complex> coeffs;
  for (const json& c : j["coeffs"]) coeffs.push_back(complex_from_json(c));
  if (coeffs.back() == Complex(0.0, 0.0))
    throw Error(ErrorCode::Parse, "leading coefficient must be nonzero");
  return Poly(std::move(coeffs));
}

std::string poly_to_json(const Poly& p) {
  json arr = json::array();
  for (const Complex& c : p.coeffs()) arr.push_back(complex_to_json(c));
  return json{{"coeffs", arr}}.dump();
}

ExpPolyFunction expfun_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw Error(ErrorCode::Parse, "function needs a terms array");
  std::vector<ExpPolyTerm> terms;
  for (const json& t : j["terms"]) {
    if (!t.is_object() || !t.contains("c") || !t.contains("z") ||
        !t.contains("support"))
      throw Error(ErrorCode::Parse, "term needs c, z, support");
    ExpPolyTerm term;
    term.c = complex_from_json(t["c"]);
    term.z = complex_from_json(t["z"]);
    term.m = t.value("m", 0);
    if (term.m < 0) throw Error(ErrorCode::Parse, "term power m must be >= 0");
    term.support = support_from_json(t["support"]);
    terms.push_back(term);
  }
  return ExpPolyFunction(std::move(terms));
}

std::string expfun_to_json(const ExpPolyFunction& f) {
  json arr = json::array();
  for (const ExpPolyTerm& t : f.terms())
    arr.push_back({{"c", complex_to_json(t.c)},
                   {"m", t.m},
                   {"z", complex_to_json(t.z)},
                   {"support", support_to_json(t.support)}});
  return json{{"terms", arr}}.dump();
}

std::string samples_to_csv(const SampledFunction& s) {
  std::ostringstream out;
  out << "t,re,im\n";
  for (int k = 0; k < s.grid.N; ++k)
    out << fmt17(s.grid.time_at(k)) << ',' << fmt17(s.values[k].real()) << ','
        << fmt17(s.values[k].imag()) << '\n';
  return out.str();
}

SampledFunction samples_from_csv(const std::string& csv, const Grid& grid) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,re,im", 0) != 0)
    throw Error(ErrorCode::Parse, "samples CSV must start with header t,re,im");
  std::vector<Complex> values;
  values.reserve(grid.N);
  int k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
      throw Error(ErrorCode::Parse, "bad CSV row: " + line);
    if (k >= grid.N) throw Error(ErrorCode::Parse, "more samples than grid N");
    if (std::abs(t - grid.time_at(k)) > 1e-9 * std::max(1.0, grid.T))
      throw Error(ErrorCode::Parse,
                  "sample time " + fmt17(t) + " does not match the grid");
    values.emplace_back(re, im);
    ++k;
  }
  if (k != grid.N)
    throw Error(ErrorCode::Parse, "sample count does not match grid N");
  return SampledFunction(grid, std::move(values));
}

std::string grid_to_json(const Grid& g) {
  return json{{"T", g.T}, {"N", g.N}}.dump();
}

Grid grid_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object() || !j.contains("T") || !j.contains("N"))
    throw Error(ErrorCode::Parse, "grid sidecar needs T and N");
  try {
    return Grid(j["T"].get<double>(), j["N"].get<int>());
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

std::string green_to_json(const GreensFunction& g) {
  json roots = json::array();
  for (const RootEntry& e : g.roots.entries)
    roots.push_back({{"root", complex_to_json(e.root)},
                     {"multiplicity", e.multiplicity}});
  json kernel = json::parse(expfun_to_json(g.kernel));
  return json{{"charpoly", json::parse(poly_to_json(g.charpoly))},
              {"roots", roots},
              {"kernel", kernel},
              {"M", g.M},
              {"hyperbolic", g.hyperbolic}}
      .dump();
}

std::string stability_report_to_json(const StabilityReport& r) {
  return json{{"M", r.M},
              {"residual_norm", r.residual_norm},
              {"distance", r.distance},
              {"bound", r.bound},
              {"satisfied", r.satisfied},
              {"quadrature_slack", r.quadrature_slack},
              {"tolerances", {{"slack", r.slack}, {"axis_tol", r.axis_tol}}},
              {"jumps", jumps_to_json(r.jumps)},
              {"identity_checked", r.identity_checked},
              {"identity_error", r.identity_error}}
      .dump();
}

std::string probe_report_to_json(const ProbeReport& r) {
  json j{{"family", r.family},
         {"eps", r.eps},
         {"residual_norm", r.residual_norm},
         {"distance_to_solution_set", r.distance_to_solution_set},
         {"ratio", r.ratio},
         {"implied_K_lower_bound", r.implied_K_lower_bound},
         {"jumps", jumps_to_json(r.jumps)},
         {"note", r.note}};
  if (!std::isnan(r.T)) j["T"] = r.T;
  if (!std::isnan(r.paper_bound)) j["paper_bound"] = r.paper_bound;
  return j.dump();
}

std::string probe_reports_to_csv(const std::vector<ProbeReport>& rows) {
  std::ostringstream out;
  out << "parameter,residual,distance,ratio\n";
  for (const ProbeReport& r : rows) {
    double param = (r.family == "slow") ? r.T : r.eps;
    out << fmt17(param) << ',' << fmt17(r.residual_norm) << ','
        << fmt17(r.distance_to_solution_set) << ',' << fmt17(r.ratio) << '\n';
  }
  return out.str();
}

}  // namespace hul1
