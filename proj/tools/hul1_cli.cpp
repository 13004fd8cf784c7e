// hul1 command line front end. Links only the C API (hul1.h).
//
// Exit codes: 0 ok, 1 parse/input error, 2 not hyperbolic, 3 stability bound
// violated, 4 candidate too rough, 5 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hul1.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNotHyperbolic = 2;
constexpr int kExitBoundViolated = 3;
constexpr int kExitRoughCandidate = 4;
constexpr int kExitNumeric = 5;

int exit_code_for(int status) {
  switch (status) {
    case HUL1_OK: return kExitOk;
    case HUL1_ERR_PARSE: return kExitParse;
    case HUL1_ERR_NOT_HYPERBOLIC: return kExitNotHyperbolic;
    case HUL1_ERR_BOUND_VIOLATED: return kExitBoundViolated;
    case HUL1_ERR_ROUGH_CANDIDATE: return kExitRoughCandidate;
    case HUL1_ERR_INVALID: return kExitParse;
    default: return kExitNumeric;
  }
}

int fail(int status) {
  std::cerr << "error (" << hul1_status_name(status)
            << "): " << hul1_last_error() << "\n";
  return exit_code_for(status);
}

struct StringOut {
  char* s = nullptr;
  ~StringOut() { hul1_string_free(s); }
};

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return out.good();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string replace_ext(const std::string& path, const std::string& ext) {
  size_t dot = path.find_last_of('.');
  size_t slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + ext;
  return path.substr(0, dot) + ext;
}

struct Config {
  double grid_T = 30.0;
  int grid_N = 1 << 14;
  double axis_tol = 1e-9;
  double slack = 1e-6;
  std::string out;
};

// The single JSON config file; flags given on the command line win.
bool load_config(const std::string& path, Config& cfg, std::string& err) {
  std::string text;
  if (!read_file(path, text)) {
    err = "cannot read config " + path;
    return false;
  }
  // keep the CLI free of a JSON dependency: accept only the fixed shape
  // {"grid":{"T":..,"N":..},"axis_tol":..,"slack":..,"out":".."}
  auto find_number = [&](const std::string& key, double& value) {
    size_t p = text.find("\"" + key + "\"");
    if (p == std::string::npos) return true;
    p = text.find(':', p);
    if (p == std::string::npos) return false;
    return std::sscanf(text.c_str() + p + 1, " %lf", &value) == 1;
  };
  double n = cfg.grid_N;
  bool ok = find_number("T", cfg.grid_T) && find_number("N", n) &&
            find_number("axis_tol", cfg.axis_tol) &&
            find_number("slack", cfg.slack);
  cfg.grid_N = static_cast<int>(n);
  size_t p = text.find("\"out\"");
  if (p != std::string::npos) {
    size_t q1 = text.find('"', text.find(':', p) + 1);
    size_t q2 = q1 == std::string::npos ? q1 : text.find('"', q1 + 1);
    if (q2 != std::string::npos) cfg.out = text.substr(q1 + 1, q2 - q1 - 1);
  }
  if (!ok) err = "malformed config " + path;
  return ok;
}

bool validate_config(const Config& cfg, std::string& err) {
  if (cfg.grid_N < 8 || (cfg.grid_N & (cfg.grid_N - 1)) != 0) {
    err = "grid N must be a power of two >= 8";
    return false;
  }
  if (!(cfg.grid_T > 0)) {
    err = "grid T must be positive";
    return false;
  }
  if (!(cfg.axis_tol >= 1e-12 && cfg.axis_tol <= 1e-3)) {
    err = "axis tolerance must lie in [1e-12, 1e-3]";
    return false;
  }
  return true;
}

struct PolyHandle {
  hul1_poly* p = nullptr;
  ~PolyHandle() { hul1_poly_free(p); }
};
struct FunctionHandle {
  hul1_function* f = nullptr;
  ~FunctionHandle() { hul1_function_free(f); }
};
struct SamplesHandle {
  hul1_samples* s = nullptr;
  ~SamplesHandle() { hul1_samples_free(s); }
};

int load_poly(const std::string& path, PolyHandle& out) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitParse;
  }
  if (int st = hul1_poly_parse(text.c_str(), &out.p)) return fail(st);
  return kExitOk;
}

// A function input is closed-form term JSON (.json) or samples CSV with a
// grid taken from the <path>.grid.json sidecar or the --grid flags.
int load_function(const std::string& path, const Config& cfg,
                  FunctionHandle& fh, SamplesHandle& sh) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitParse;
  }
  if (ends_with(path, ".json")) {
    if (int st = hul1_function_parse(text.c_str(), &fh.f)) return fail(st);
    return kExitOk;
  }
  double T = cfg.grid_T;
  int N = cfg.grid_N;
  std::string sidecar;
  if (read_file(path + ".grid.json", sidecar)) {
    if (int st = hul1_grid_parse(sidecar.c_str(), &T, &N)) return fail(st);
  }
  if (int st = hul1_samples_parse_csv(text.c_str(), T, N, &sh.s))
    return fail(st);
  return kExitOk;
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text << "\n";
  if (!out_path.empty() && !write_file(out_path, text + "\n"))
    std::cerr << "warning: could not write " << out_path << "\n";
}

int cmd_stability(const std::string& poly_path, const Config& cfg) {
  std::string text;
  if (!read_file(poly_path, text)) {
    std::cerr << "error: cannot read " << poly_path << "\n";
    return kExitParse;
  }
  StringOut report;
  int st = hul1_stability_report(text.c_str(), cfg.axis_tol, &report.s);
  if (report.s) emit(report.s, cfg.out);
  if (st != HUL1_OK) return fail(st);
  return kExitOk;
}

int cmd_solve(const std::string& poly_path, const std::string& forcing_path,
              const Config& cfg) {
  PolyHandle poly;
  if (int rc = load_poly(poly_path, poly)) return rc;
  FunctionHandle f;
  SamplesHandle fs;
  if (int rc = load_function(forcing_path, cfg, f, fs)) return rc;

  std::string out_csv = cfg.out.empty() ? "solution.csv" : cfg.out;
  double norm = 0.0, defect = 0.0;
  StringOut csv;
  std::string terms_path;

  if (f.f) {
    FunctionHandle y;
    if (int st = hul1_solve_closed(poly.p, f.f, cfg.axis_tol, &y.f))
      return fail(st);
    if (int st = hul1_function_l1_norm(y.f, &norm)) return fail(st);
    if (int st = hul1_residual_norm_closed(poly.p, f.f, y.f, &defect))
      return fail(st);
    if (int st = hul1_function_sample_csv(y.f, cfg.grid_T, cfg.grid_N, &csv.s))
      return fail(st);
    StringOut terms;
    if (int st = hul1_function_to_json(y.f, &terms.s)) return fail(st);
    terms_path = replace_ext(out_csv, ".terms.json");
    if (!write_file(terms_path, std::string(terms.s) + "\n")) {
      std::cerr << "error: cannot write " << terms_path << "\n";
      return kExitParse;
    }
  } else {
    SamplesHandle y;
    if (int st = hul1_solve_sampled(poly.p, fs.s, cfg.axis_tol, &y.s))
      return fail(st);
    if (int st = hul1_samples_l1_norm(y.s, &norm)) return fail(st);
    if (int st = hul1_residual_norm_sampled(poly.p, fs.s, y.s, &defect))
      return fail(st);
    if (int st = hul1_samples_to_csv(y.s, &csv.s)) return fail(st);
  }

  if (!write_file(out_csv, csv.s)) {
    std::cerr << "error: cannot write " << out_csv << "\n";
    return kExitParse;
  }
  char grid_sidecar[64];
  std::snprintf(grid_sidecar, sizeof(grid_sidecar), "{\"T\":%.17g,\"N\":%d}",
                cfg.grid_T, cfg.grid_N);
  write_file(out_csv + ".grid.json", std::string(grid_sidecar) + "\n");

  std::ostringstream summary;
  summary << "{\"l1_norm\":" << norm << ",\"residual_selfcheck\":" << defect
          << ",\"out_csv\":\"" << out_csv << "\"";
  if (!terms_path.empty()) summary << ",\"out_terms\":\"" << terms_path << "\"";
  summary << "}";
  std::cout << summary.str() << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& poly_path, const std::string& forcing_path,
               const std::string& candidate_path, const Config& cfg) {
  PolyHandle poly;
  if (int rc = load_poly(poly_path, poly)) return rc;
  FunctionHandle f;
  SamplesHandle fs;
  if (int rc = load_function(forcing_path, cfg, f, fs)) return rc;
  FunctionHandle y;
  SamplesHandle ys;
  if (int rc = load_function(candidate_path, cfg, y, ys)) return rc;

  int satisfied = 0;
  StringOut report;
  int st;
  if (y.f) {
    if (!f.f) {
      std::cerr << "error: closed-form candidate needs closed-form forcing\n";
      return kExitParse;
    }
    st = hul1_verify_closed(poly.p, f.f, y.f, cfg.axis_tol, cfg.slack,
                            &satisfied, &report.s);
  } else {
    st = hul1_verify_sampled(poly.p, f.f, fs.s, ys.s, cfg.axis_tol, cfg.slack,
                             &satisfied, &report.s);
  }
  if (st != HUL1_OK) return fail(st);
  emit(report.s, cfg.out);
  if (!satisfied) {
    std::cerr << "stability bound violated (for correct inputs this "
                 "indicates a numerical-tolerance breach)\n";
    return kExitBoundViolated;
  }
  return kExitOk;
}

int cmd_probe(const std::string& example, double eps, double T, bool has_T,
              const Config& cfg) {
  if (example == "paper") {
    StringOut report;
    if (int st = hul1_probe_paper(eps, &report.s)) return fail(st);
    emit(report.s, cfg.out);
    return kExitOk;
  }
  if (has_T) {
    StringOut report;
    if (int st = hul1_probe_slow(eps, T, &report.s)) return fail(st);
    emit(report.s, cfg.out);
    return kExitOk;
  }
  // geometric ladder when --T is omitted
  std::vector<double> ladder = {2.0, 4.0, 8.0, 16.0, 32.0};
  StringOut json, csv;
  if (int st = hul1_probe_slow_sweep(eps, ladder.data(),
                                     static_cast<int>(ladder.size()), &json.s,
                                     &csv.s))
    return fail(st);
  std::cout << json.s << "\n";
  std::string out_csv = cfg.out.empty() ? "probe_slow.csv" : cfg.out;
  if (!write_file(out_csv, csv.s)) {
    std::cerr << "error: cannot write " << out_csv << "\n";
    return kExitParse;
  }
  std::cerr << "sweep written to " << out_csv << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact L1 solutions and Hyers-Ulam stability constants for linear "
      "constant-coefficient ODEs"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid-T", cfg.grid_T, "grid half-width (default 30)");
    sub->add_option("--grid-N", cfg.grid_N,
                    "grid samples, power of two (default 16384)");
    sub->add_option("--axis-tol", cfg.axis_tol,
                    "imaginary-axis exclusion tolerance (default 1e-9)");
    sub->add_option("--out", cfg.out, "output file path");
  };

  std::string poly_path, forcing_path, candidate_path;

  CLI::App* stab = app.add_subcommand(
      "stability", "roots, hyperbolicity, kernel and constant M");
  stab->add_option("poly", poly_path, "polynomial JSON file")->required();
  add_common(stab);

  CLI::App* solve = app.add_subcommand(
      "solve", "particular L1 solution by kernel convolution");
  solve->add_option("poly", poly_path, "polynomial JSON file")->required();
  solve->add_option("forcing", forcing_path, "forcing term JSON or samples CSV")
      ->required();
  add_common(solve);

  CLI::App* verify = app.add_subcommand(
      "verify", "stability report for a candidate solution");
  verify->add_option("poly", poly_path, "polynomial JSON file")->required();
  verify->add_option("forcing", forcing_path, "forcing term JSON or samples CSV")
      ->required();
  verify->add_option("candidate", candidate_path,
                     "candidate term JSON or samples CSV")
      ->required();
  verify->add_option("--slack", cfg.slack,
                     "relative verification slack (default 1e-6)");
  add_common(verify);

  CLI::App* probe =
      app.add_subcommand("probe", "instability probes for y' - iy = 0");
  std::string example = "paper";
  double eps = 0.1, T = 0.0;
  probe->add_option("--example", example, "paper | slow")
      ->check(CLI::IsMember({"paper", "slow"}));
  probe->add_option("--eps", eps, "residual scale (default 0.1)");
  CLI::Option* t_opt =
      probe->add_option("--T", T, "slow-modulation half-width (>= 1)");
  add_common(probe);

  CLI11_PARSE(app, argc, argv);

  if (!config_path.empty()) {
    std::string err;
    Config file_cfg;
    if (!load_config(config_path, file_cfg, err)) {
      std::cerr << "error: " << err << "\n";
      return kExitParse;
    }
    // flags win: only take config values the user did not set
    auto taken = [&](CLI::App* sub, const char* name) {
      return sub->count(name) > 0;
    };
    CLI::App* sub = app.get_subcommands().front();
    if (!taken(sub, "--grid-T")) cfg.grid_T = file_cfg.grid_T;
    if (!taken(sub, "--grid-N")) cfg.grid_N = file_cfg.grid_N;
    if (!taken(sub, "--axis-tol")) cfg.axis_tol = file_cfg.axis_tol;
    if (!taken(sub, "--out") && !file_cfg.out.empty()) cfg.out = file_cfg.out;
  }
  std::string err;
  if (!validate_config(cfg, err)) {
    std::cerr << "error: " << err << "\n";
    return kExitParse;
  }

  if (stab->parsed()) return cmd_stability(poly_path, cfg);
  if (solve->parsed()) return cmd_solve(poly_path, forcing_path, cfg);
  if (verify->parsed())
    return cmd_verify(poly_path, forcing_path, candidate_path, cfg);
  if (probe->parsed())
    return cmd_probe(example, eps, T, t_opt->count() > 0, cfg);
  return kExitParse;
}
