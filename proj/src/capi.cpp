#include "hul1.h"

#include <cstring>
#include <new>
#include <string>

#include "hul1/serialize.hpp"

using namespace hul1;

struct hul1_poly {
  Poly v;
};
struct hul1_function {
  ExpPolyFunction v;
};
struct hul1_samples {
  SampledFunction v;
};
struct hul1_green {
  GreensFunction v;
};

namespace {

thread_local std::string g_last_error;

int status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse:
      return HUL1_ERR_PARSE;
    case ErrorCode::NotHyperbolic:
      return HUL1_ERR_NOT_HYPERBOLIC;
    case ErrorCode::ExcessJumps:
      return HUL1_ERR_ROUGH_CANDIDATE;
    case ErrorCode::Invalid:
      return HUL1_ERR_INVALID;
    default:
      return HUL1_ERR_NUMERIC;
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return HUL1_OK;
  } catch (const Error& e) {
    g_last_error = std::string(error_code_name(e.code())) + ": " + e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HUL1_ERR_NUMERIC;
  } catch (...) {
    g_last_error = "unknown error";
    return HUL1_ERR_NUMERIC;
  }
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int require(bool ok, const char* msg) {
  if (!ok) {
    g_last_error = msg;
    return HUL1_ERR_INVALID;
  }
  return HUL1_OK;
}

void run_verify(const Problem& prob, const hul1_function* y_closed,
                const hul1_samples* y_sampled, double axis_tol, double slack,
                int* out_satisfied, char** out_report_json) {
  VerifyOptions opt;
  opt.axis_tol = axis_tol;
  opt.slack = slack > 0 ? slack : 1e-6;
  StabilityReport rep = y_closed ? verify(prob, y_closed->v, opt)
                                 : verify(prob, y_sampled->v, opt);
  if (out_satisfied) *out_satisfied = rep.satisfied ? 1 : 0;
  if (out_report_json)
    *out_report_json = dup_string(stability_report_to_json(rep));
}

}  // namespace

extern "C" {

const char* hul1_status_name(int status) {
  switch (status) {
    case HUL1_OK: return "ok";
    case HUL1_ERR_PARSE: return "parse-error";
    case HUL1_ERR_NOT_HYPERBOLIC: return "not-hyperbolic";
    case HUL1_ERR_BOUND_VIOLATED: return "bound-violated";
    case HUL1_ERR_ROUGH_CANDIDATE: return "candidate-too-rough";
    case HUL1_ERR_NUMERIC: return "numeric-failure";
    case HUL1_ERR_INVALID: return "invalid-argument";
  }
  return "unknown";
}

const char* hul1_last_error(void) { return g_last_error.c_str(); }

void hul1_string_free(char* s) { delete[] s; }

int hul1_poly_parse(const char* json, hul1_poly** out) {
  if (int rc = require(json && out, "null argument")) return rc;
  return guarded([&] { *out = new hul1_poly{poly_from_json(json)}; });
}

void hul1_poly_free(hul1_poly* p) { delete p; }

int hul1_poly_degree(const hul1_poly* p) { return p ? p->v.degree() : -1; }

int hul1_function_parse(const char* json, hul1_function** out) {
  if (int rc = require(json && out, "null argument")) return rc;
  return guarded([&] { *out = new hul1_function{expfun_from_json(json)}; });
}

void hul1_function_free(hul1_function* f) { delete f; }

int hul1_function_to_json(const hul1_function* f, char** out_json) {
  if (int rc = require(f && out_json, "null argument")) return rc;
  return guarded([&] { *out_json = dup_string(expfun_to_json(f->v)); });
}

int hul1_function_l1_norm(const hul1_function* f, double* out) {
  if (int rc = require(f && out, "null argument")) return rc;
  return guarded([&] { *out = l1_norm(f->v); });
}

int hul1_function_sample_csv(const hul1_function* f, double grid_T, int grid_N,
                             char** out_csv) {
  if (int rc = require(f && out_csv, "null argument")) return rc;
  return guarded([&] {
    Grid g(grid_T, grid_N);
    *out_csv = dup_string(samples_to_csv(sample(f->v, g)));
  });
}

int hul1_grid_parse(const char* json, double* out_T, int* out_N) {
  if (int rc = require(json && out_T && out_N, "null argument")) return rc;
  return guarded([&] {
    Grid g = grid_from_json(json);
    *out_T = g.T;
    *out_N = g.N;
  });
}

int hul1_samples_parse_csv(const char* csv, double grid_T, int grid_N,
                           hul1_samples** out) {
  if (int rc = require(csv && out, "null argument")) return rc;
  return guarded([&] {
    Grid g(grid_T, grid_N);
    *out = new hul1_samples{samples_from_csv(csv, g)};
  });
}

void hul1_samples_free(hul1_samples* s) { delete s; }

int hul1_samples_to_csv(const hul1_samples* s, char** out_csv) {
  if (int rc = require(s && out_csv, "null argument")) return rc;
  return guarded([&] { *out_csv = dup_string(samples_to_csv(s->v)); });
}

int hul1_samples_l1_norm(const hul1_samples* s, double* out) {
  if (int rc = require(s && out, "null argument")) return rc;
  return guarded([&] { *out = l1_norm_numeric(s->v); });
}

int hul1_green_build(const hul1_poly* p, double axis_tol, hul1_green** out) {
  if (int rc = require(p && out, "null argument")) return rc;
  return guarded([&] { *out = new hul1_green{green_function(p->v, axis_tol)}; });
}

void hul1_green_free(hul1_green* g) { delete g; }

int hul1_green_to_json(const hul1_green* g, char** out_json) {
  if (int rc = require(g && out_json, "null argument")) return rc;
  return guarded([&] { *out_json = dup_string(green_to_json(g->v)); });
}

int hul1_green_constant(const hul1_green* g, double* out_M) {
  if (int rc = require(g && out_M, "null argument")) return rc;
  *out_M = g->v.M;
  return HUL1_OK;
}

int hul1_stability_report(const char* poly_json, double axis_tol,
                          char** out_json) {
  if (int rc = require(poly_json && out_json, "null argument")) return rc;
  *out_json = nullptr;
  Poly p;
  if (int rc = guarded([&] { p = poly_from_json(poly_json); })) return rc;
  try {
    GreensFunction g = green_function(p, axis_tol);
    *out_json = dup_string(green_to_json(g));
    return HUL1_OK;
  } catch (const Error& e) {
    g_last_error = std::string(error_code_name(e.code())) + ": " + e.what();
    if (e.code() == ErrorCode::NotHyperbolic && e.witness()) {
      // verdict document with the offending root
      std::string verdict = "{\"hyperbolic\":false,\"witness\":[";
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g]}", e.witness()->real(),
                    e.witness()->imag());
      verdict += buf;
      *out_json = dup_string(verdict);
    }
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HUL1_ERR_NUMERIC;
  }
}

int hul1_solve_closed(const hul1_poly* p, const hul1_function* f,
                      double axis_tol, hul1_function** out) {
  if (int rc = require(p && f && out, "null argument")) return rc;
  return guarded([&] {
    Problem prob(p->v, f->v);
    *out = new hul1_function{std::get<ExpPolyFunction>(solve(prob, axis_tol))};
  });
}

int hul1_solve_sampled(const hul1_poly* p, const hul1_samples* f,
                       double axis_tol, hul1_samples** out) {
  if (int rc = require(p && f && out, "null argument")) return rc;
  return guarded([&] {
    Problem prob(p->v, f->v);
    *out = new hul1_samples{std::get<SampledFunction>(solve(prob, axis_tol))};
  });
}

int hul1_residual_norm_closed(const hul1_poly* p, const hul1_function* f,
                              const hul1_function* y, double* out_norm) {
  if (int rc = require(p && f && y && out_norm, "null argument")) return rc;
  return guarded([&] {
    Problem prob(p->v, f->v);
    *out_norm = residual(prob, y->v).norm;
  });
}

int hul1_residual_norm_sampled(const hul1_poly* p, const hul1_samples* f,
                               const hul1_samples* y, double* out_norm) {
  if (int rc = require(p && f && y && out_norm, "null argument")) return rc;
  return guarded([&] {
    Problem prob(p->v, f->v);
    *out_norm = residual(prob, y->v).norm;
  });
}

int hul1_verify_closed(const hul1_poly* p, const hul1_function* f,
                       const hul1_function* y, double axis_tol, double slack,
                       int* out_satisfied, char** out_report_json) {
  if (int rc = require(p && f && y, "null argument")) return rc;
  return guarded([&] {
    Problem prob(p->v, f->v);
    run_verify(prob, y, nullptr, axis_tol, slack, out_satisfied,
               out_report_json);
  });
}

int hul1_verify_sampled(const hul1_poly* p, const hul1_function* f_closed,
                        const hul1_samples* f_sampled, const hul1_samples* y,
                        double axis_tol, double slack, int* out_satisfied,
                        char** out_report_json) {
  if (int rc = require(p && y && (!!f_closed ^ !!f_sampled),
                       "need exactly one forcing form"))
    return rc;
  return guarded([&] {
    if (f_closed) {
      Problem prob(p->v, f_closed->v);
      run_verify(prob, nullptr, y, axis_tol, slack, out_satisfied,
                 out_report_json);
    } else {
      Problem prob(p->v, f_sampled->v);
      run_verify(prob, nullptr, y, axis_tol, slack, out_satisfied,
                 out_report_json);
    }
  });
}

int hul1_probe_paper(double eps, char** out_json) {
  if (int rc = require(out_json != nullptr, "null argument")) return rc;
  return guarded([&] {
    *out_json = dup_string(probe_report_to_json(probe_paper_example(eps)));
  });
}

int hul1_probe_slow(double eps, double T, char** out_json) {
  if (int rc = require(out_json != nullptr, "null argument")) return rc;
  return guarded([&] {
    *out_json = dup_string(probe_report_to_json(probe_slow_modulation(eps, T)));
  });
}

int hul1_probe_slow_sweep(double eps, const double* Ts, int nT,
                          char** out_json, char** out_csv) {
  if (int rc = require(Ts && nT >= 1, "need at least one T")) return rc;
  return guarded([&] {
    std::vector<ProbeReport> rows;
    for (int k = 0; k < nT; ++k)
      rows.push_back(probe_slow_modulation(eps, Ts[k]));
    if (out_json) {
      std::string arr = "[";
      for (size_t k = 0; k < rows.size(); ++k) {
        if (k) arr += ",";
        arr += probe_report_to_json(rows[k]);
      }
      arr += "]";
      *out_json = dup_string(arr);
    }
    if (out_csv) *out_csv = dup_string(probe_reports_to_csv(rows));
  });
}

}  // extern "C"
