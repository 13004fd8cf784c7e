#pragma once

#include <optional>
#include <string>
#include <variant>

#include "hul1/fourier.hpp"
#include "hul1/greens.hpp"

namespace hul1 {

/// y^{(n)} + sum a_k y^{(k)} = f with f either closed-form or sampled.
struct Problem {
  Poly charpoly;  // normalized monic on construction
  std::variant<ExpPolyFunction, SampledFunction> forcing;

  Problem(Poly p, ExpPolyFunction f);
  Problem(Poly p, SampledFunction f);

  int order() const { return charpoly.degree(); }
  bool closed_form() const {
    return std::holds_alternative<ExpPolyFunction>(forcing);
  }
};

/// Particular L1 solution y_a = G * f. Closed-form forcing gives a
/// closed-form solution; sampled forcing a sampled one.
std::variant<ExpPolyFunction, SampledFunction> solve(
    const Problem& prob, double axis_tol = kDefaultAxisTol);

struct ResidualReport {
  std::variant<ExpPolyFunction, SampledFunction> h;  // defect, regular part
  double norm;        // ||h||_1 excluding the singular (jump) part
  double norm_error;  // quadrature error estimate
  std::vector<JumpRecord> jumps;  // jumps of y^{(k)}, k <= n-1, above noise
};

/// h = p(d/dt) y - f. Jumps of derivative orders < n-1 above 1e-8 throw
/// ExcessJumps. The sampled path uses iterated 4th-order centered stencils
/// with the outermost 2n samples excluded from the norm.
ResidualReport residual(const Problem& prob, const ExpPolyFunction& y);
ResidualReport residual(const Problem& prob, const SampledFunction& y);

struct VerifyOptions {
  double axis_tol = kDefaultAxisTol;
  double slack = 1e-6;  // relative slack on distance <= M*eps
};

struct StabilityReport {
  double M;
  double residual_norm;    // eps
  double distance;         // ||y - y_a||_1
  double bound;            // M * eps
  bool satisfied;          // distance <= bound*(1+slack) + quadrature_slack
  double slack;
  double quadrature_slack; // absolute, from the norm error estimates
  double axis_tol;
  std::vector<JumpRecord> jumps;
  bool identity_checked = false;  // closed path: y - y_a = G * h termwise
  double identity_error = 0.0;    // max residual amplitude of that identity
};

StabilityReport verify(const Problem& prob, const ExpPolyFunction& y,
                       const VerifyOptions& opt = {});
StabilityReport verify(const Problem& prob, const SampledFunction& y,
                       const VerifyOptions& opt = {});

struct ProbeReport {
  std::string family;  // "paper" | "slow"
  double eps;
  double T;                      // slow-modulation half-width (nan for paper)
  double residual_norm;          // recomputed, jump-aware
  double distance_to_solution_set;
  double ratio;                  // distance / residual
  double implied_K_lower_bound;  // = distance (solution set is {0})
  double paper_bound;            // 1 - eps/sqrt(2) for the paper family
  std::vector<JumpRecord> jumps;
  std::string note;
};

/// y_eps = e^{(i-1)t} u(t) + (eps/sqrt 2) e^{-t} u(t) against y' - iy = 0.
/// The residual is recomputed termwise (it is NOT eps; see the note field)
/// while the distance bound 1 - eps/sqrt 2 stands.
ProbeReport probe_paper_example(double eps);

/// y = (eps/2) e^{it} tent(t/T): residual norm exactly eps, distance
/// eps*T/2, ratio T/2 -> unbounded K for y' - iy = 0. Requires T >= 1.
ProbeReport probe_slow_modulation(double eps, double T);

}  // namespace hul1
