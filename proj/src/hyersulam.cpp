#include "hul1/hyersulam.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace hul1 {

namespace {

constexpr double kJumpContract = 1e-8;  // order < n-1 jumps above this reject
constexpr double kJumpNoise = 1e-10;    // below this a jump record is noise

std::vector<JumpRecord> filter_jumps(std::vector<JumpRecord> jumps,
                                     double scale) {
  std::erase_if(jumps, [&](const JumpRecord& j) {
    return std::abs(j.size) <= kJumpNoise * std::max(1.0, scale);
  });
  return jumps;
}

void reject_rough(const std::vector<JumpRecord>& jumps, int order_n) {
  for (const JumpRecord& j : jumps)
    if (j.order < order_n - 1 && std::abs(j.size) > kJumpContract) {
      std::ostringstream msg;
      msg << "candidate has a jump of size " << std::abs(j.size)
          << " in derivative order " << j.order << " at t=" << j.location
          << "; too rough for order-" << order_n << " verification";
      throw Error(ErrorCode::ExcessJumps, msg.str());
    }
}

// 4th-order centered first derivative; each application shrinks the valid
// window by 2 samples on each side.
std::vector<Complex> d1_stencil(const std::vector<Complex>& v, double h) {
  const size_t n = v.size();
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (size_t k = 2; k + 2 < n; ++k)
    out[k] = (-v[k + 2] + 8.0 * v[k + 1] - 8.0 * v[k - 1] + v[k - 2]) /
             (12.0 * h);
  return out;
}

double sample_scale(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& x : v) s = std::max(s, std::abs(x));
  return s;
}

// Isolated-outlier jump detector on divided differences. A genuine jump at
// (or between) samples shows as one or two adjacent large differences
// against a smooth local baseline; their sum estimates the jump size.
std::vector<JumpRecord> detect_jumps_sampled(const std::vector<Complex>& v,
                                             const Grid& g, int order,
                                             int lo, int hi) {
  std::vector<JumpRecord> out;
  const double scale = sample_scale(v);
  const int first = std::max(lo, 3);
  const int last = std::min(hi, static_cast<int>(v.size()) - 5);
  int k = first;
  while (k <= last) {
    Complex dk = v[k + 1] - v[k];
    double nbr = std::max(
        {std::abs(v[k - 1] - v[k - 2]), std::abs(v[k - 2] - v[k - 3]),
         std::abs(v[k + 3] - v[k + 2]), std::abs(v[k + 4] - v[k + 3])});
    if (std::abs(dk) > kJumpContract &&
        std::abs(dk) > 8.0 * nbr + 1e-12 * scale) {
      Complex size = dk;
      if (k + 1 <= last) {
        Complex dnext = v[k + 2] - v[k + 1];
        if (std::abs(dnext) > 8.0 * nbr + 1e-12 * scale) {
          size += dnext;  // jump sitting on a sample splits across two diffs
          ++k;
        }
      }
      out.push_back({order, g.time_at(k), size});
      k += 3;
      continue;
    }
    ++k;
  }
  return out;
}

// (h^2/12) int |g''| estimated from second differences; crude trapezoid
// error indicator for sampled norms.
double trapezoid_error_estimate(const std::vector<Complex>& v, double h,
                                int lo, int hi) {
  double acc = 0.0;
  for (int k = lo + 1; k < hi; ++k)
    acc += std::abs(v[k + 1] - 2.0 * v[k] + v[k - 1]);
  return acc * h / 12.0;
}

double window_trapezoid(const std::vector<Complex>& v, double h, int lo,
                        int hi) {
  double acc = 0.5 * (std::abs(v[lo]) + std::abs(v[hi]));
  for (int k = lo + 1; k < hi; ++k) acc += std::abs(v[k]);
  return acc * h;
}

}  // namespace

Problem::Problem(Poly p, ExpPolyFunction f)
    : charpoly(Poly()), forcing(std::move(f)) {
  if (p.degree() < 1)
    throw Error(ErrorCode::Invalid, "problem order must be >= 1");
  Complex lead = p.leading();
  charpoly = p.monic();
  if (lead != Complex(1.0, 0.0))
    forcing = std::get<ExpPolyFunction>(forcing) * (1.0 / lead);
  const ExpPolyFunction& fc = std::get<ExpPolyFunction>(forcing);
  if (!fc.integrable())
    throw Error(ErrorCode::NotIntegrable, "forcing must be integrable");
}

Problem::Problem(Poly p, SampledFunction f)
    : charpoly(Poly()), forcing(std::move(f)) {
  if (p.degree() < 1)
    throw Error(ErrorCode::Invalid, "problem order must be >= 1");
  Complex lead = p.leading();
  charpoly = p.monic();
  if (lead != Complex(1.0, 0.0)) {
    SampledFunction& fs = std::get<SampledFunction>(forcing);
    for (Complex& v : fs.values) v /= lead;
  }
}

std::variant<ExpPolyFunction, SampledFunction> solve(const Problem& prob,
                                                     double axis_tol) {
  GreensFunction G = green_function(prob.charpoly, axis_tol);
  if (prob.closed_form())
    return convolve(G.kernel, std::get<ExpPolyFunction>(prob.forcing));
  const SampledFunction& fs = std::get<SampledFunction>(prob.forcing);
  return conv_numeric(sample(G.kernel, fs.grid), fs);
}

ResidualReport residual(const Problem& prob, const ExpPolyFunction& y) {
  const int n = prob.order();
  OdeApplyResult applied = apply_ode_operator(prob.charpoly, y);
  std::vector<JumpRecord> jumps =
      filter_jumps(applied.jumps, y.amplitude());
  reject_rough(jumps, n);

  if (prob.closed_form()) {
    ExpPolyFunction h = applied.h - std::get<ExpPolyFunction>(prob.forcing);
    L1Result norm = l1_norm_with_error(h);
    return {std::move(h), norm.value, norm.error, std::move(jumps)};
  }
  const SampledFunction& fs = std::get<SampledFunction>(prob.forcing);
  SampledFunction hs = sample(applied.h, fs.grid);
  for (int k = 0; k < fs.grid.N; ++k) hs.values[k] -= fs.values[k];
  double err = trapezoid_error_estimate(hs.values, fs.grid.step(), 0,
                                        fs.grid.N - 1);
  return {hs, l1_norm_numeric(hs), err, std::move(jumps)};
}

ResidualReport residual(const Problem& prob, const SampledFunction& y) {
  const int n = prob.order();
  const Grid& g = y.grid;
  const double h = g.step();
  if (!prob.closed_form() &&
      !(std::get<SampledFunction>(prob.forcing).grid == g))
    throw Error(ErrorCode::GridMismatch,
                "candidate and forcing grids differ");

  // iterated 4th-order stencils; outermost 2n samples lose validity
  std::vector<std::vector<Complex>> derivs;
  derivs.push_back(y.values);
  for (int k = 1; k <= n; ++k)
    derivs.push_back(d1_stencil(derivs.back(), h));

  std::vector<JumpRecord> jumps;
  for (int k = 0; k <= n - 1; ++k) {
    auto found =
        detect_jumps_sampled(derivs[k], g, k, 2 * k, g.N - 1 - 2 * k);
    jumps.insert(jumps.end(), found.begin(), found.end());
  }
  reject_rough(jumps, n);

  std::vector<Complex> hv(g.N, Complex(0.0, 0.0));
  const auto& coeffs = prob.charpoly.coeffs();
  for (int k = 0; k < g.N; ++k) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j <= n; ++j) acc += coeffs[j] * derivs[j][k];
    hv[k] = acc;
  }
  if (prob.closed_form()) {
    const ExpPolyFunction& f = std::get<ExpPolyFunction>(prob.forcing);
    for (int k = 0; k < g.N; ++k) hv[k] -= f.eval_avg(g.time_at(k));
  } else {
    const SampledFunction& fs = std::get<SampledFunction>(prob.forcing);
    for (int k = 0; k < g.N; ++k) hv[k] -= fs.values[k];
  }

  const int lo = 2 * n, hi = g.N - 1 - 2 * n;
  if (lo >= hi)
    throw Error(ErrorCode::Invalid, "grid too small for the stencil margin");
  double norm = window_trapezoid(hv, h, lo, hi);
  double err = trapezoid_error_estimate(hv, h, lo, hi);
  return {SampledFunction(g, std::move(hv)), norm, err, std::move(jumps)};
}

namespace {

StabilityReport assemble_report(const GreensFunction& G,
                                const ResidualReport& rr, double distance,
                                double distance_err, const VerifyOptions& opt,
                                bool identity_checked, double identity_error) {
  L1Result mker = l1_norm_with_error(G.kernel);
  StabilityReport rep;
  rep.M = G.M;
  rep.residual_norm = rr.norm;
  rep.distance = distance;
  rep.bound = G.M * rr.norm;
  rep.slack = opt.slack;
  rep.axis_tol = opt.axis_tol;
  rep.quadrature_slack = mker.error * rr.norm + G.M * rr.norm_error +
                         distance_err + 1e-15;
  rep.satisfied =
      distance <= rep.bound * (1.0 + opt.slack) + rep.quadrature_slack;
  rep.jumps = rr.jumps;
  rep.identity_checked = identity_checked;
  rep.identity_error = identity_error;
  return rep;
}

}  // namespace

StabilityReport verify(const Problem& prob, const ExpPolyFunction& y,
                       const VerifyOptions& opt) {
  GreensFunction G = green_function(prob.charpoly, opt.axis_tol);
  ResidualReport rr = residual(prob, y);
  const int n = prob.order();

  double distance, distance_err;
  bool identity_checked = false;
  double identity_error = 0.0;

  if (prob.closed_form()) {
    ExpPolyFunction y_a =
        convolve(G.kernel, std::get<ExpPolyFunction>(prob.forcing));
    ExpPolyFunction diff = y - y_a;
    L1Result d = l1_norm_with_error(diff);
    distance = d.value;
    distance_err = d.error;

    // Exact error representation y - y_a = G * h, with jumps of order n-1
    // folded in as shifted kernels (their deltas in y^{(n)}).
    const ExpPolyFunction& h = std::get<ExpPolyFunction>(rr.h);
    ExpPolyFunction folded = convolve(G.kernel, h);
    bool low_order_clean = true;
    for (const JumpRecord& j : rr.jumps) {
      if (j.order == n - 1)
        folded = folded + G.kernel.translate(j.location) * j.size;
      else
        low_order_clean = false;
    }
    if (low_order_clean) {
      ExpPolyFunction gap = diff - folded;
      identity_checked = true;
      identity_error =
          gap.amplitude() / std::max(1.0, diff.amplitude());
    }
  } else {
    const SampledFunction& fs = std::get<SampledFunction>(prob.forcing);
    SampledFunction y_a = conv_numeric(sample(G.kernel, fs.grid), fs);
    SampledFunction ys = sample(y, fs.grid);
    for (int k = 0; k < fs.grid.N; ++k) ys.values[k] -= y_a.values[k];
    distance = l1_norm_numeric(ys);
    distance_err =
        trapezoid_error_estimate(ys.values, fs.grid.step(), 0, fs.grid.N - 1);
  }
  return assemble_report(G, rr, distance, distance_err, opt,
                         identity_checked, identity_error);
}

StabilityReport verify(const Problem& prob, const SampledFunction& y,
                       const VerifyOptions& opt) {
  GreensFunction G = green_function(prob.charpoly, opt.axis_tol);
  ResidualReport rr = residual(prob, y);
  const Grid& g = y.grid;

  std::vector<Complex> ya(g.N);
  if (prob.closed_form()) {
    ExpPolyFunction sol =
        convolve(G.kernel, std::get<ExpPolyFunction>(prob.forcing));
    for (int k = 0; k < g.N; ++k) ya[k] = sol.eval_avg(g.time_at(k));
  } else {
    ya = conv_numeric(sample(G.kernel, g),
                      std::get<SampledFunction>(prob.forcing))
             .values;
  }
  std::vector<Complex> diff(g.N);
  for (int k = 0; k < g.N; ++k) diff[k] = y.values[k] - ya[k];
  double distance = l1_norm_numeric(SampledFunction(g, diff));
  double distance_err =
      trapezoid_error_estimate(diff, g.step(), 0, g.N - 1);
  return assemble_report(G, rr, distance, distance_err, opt, false, 0.0);
}

ProbeReport probe_paper_example(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::Invalid, "eps must be positive");
  const double c = eps / std::numbers::sqrt2;
  ExpPolyFunction y({{Complex(1.0, 0.0), 0, Complex(-1.0, 1.0),
                      Support::pos_halfline()},
                     {Complex(c, 0.0), 0, Complex(-1.0, 0.0),
                      Support::pos_halfline()}});
  Poly p({Complex(0.0, -1.0), Complex(1.0, 0.0)});  // z - i

  OdeApplyResult applied = apply_ode_operator(p, y);
  double rnorm = l1_norm(applied.h);
  double dist = l1_norm(y);  // the only L1 solution of y' - iy = 0 is 0

  ProbeReport r;
  r.family = "paper";
  r.eps = eps;
  r.T = std::numeric_limits<double>::quiet_NaN();
  r.residual_norm = rnorm;
  r.distance_to_solution_set = dist;
  r.ratio = dist / rnorm;
  r.implied_K_lower_bound = dist;
  r.paper_bound = 1.0 - c;
  r.jumps = filter_jumps(applied.jumps, y.amplitude());
  r.note =
      "residual norm recomputed termwise: (d/dt - i) applied to "
      "e^{(i-1)t}u(t) leaves -e^{(i-1)t}u(t), an O(1) defect, so the "
      "residual is 1 + O(eps) rather than eps; the distance lower bound "
      "1 - eps/sqrt(2) is unaffected";
  return r;
}

ProbeReport probe_slow_modulation(double eps, double T) {
  if (!(eps > 0.0)) throw Error(ErrorCode::Invalid, "eps must be positive");
  if (!(T >= 1.0)) throw Error(ErrorCode::Invalid, "slow modulation needs T >= 1");

  const Complex i(0.0, 1.0);
  const double half = 0.5 * eps;
  // (eps/2) e^{it} tent(t/T): rising and falling linear flanks
  ExpPolyFunction y({{Complex(half, 0.0), 0, i, Support::interval(-T, 0.0)},
                     {Complex(half / T, 0.0), 1, i, Support::interval(-T, 0.0)},
                     {Complex(half, 0.0), 0, i, Support::interval(0.0, T)},
                     {Complex(-half / T, 0.0), 1, i, Support::interval(0.0, T)}});
  Poly p({Complex(0.0, -1.0), Complex(1.0, 0.0)});  // z - i

  OdeApplyResult applied = apply_ode_operator(p, y);
  double rnorm = l1_norm(applied.h);  // = eps: |h| = eps/(2T) on [-T, T]
  double dist = l1_norm(y);           // = eps T / 2: tent area is T

  ProbeReport r;
  r.family = "slow";
  r.eps = eps;
  r.T = T;
  r.residual_norm = rnorm;
  r.distance_to_solution_set = dist;
  r.ratio = dist / rnorm;
  r.implied_K_lower_bound = dist;
  r.paper_bound = std::numeric_limits<double>::quiet_NaN();
  r.jumps = filter_jumps(applied.jumps, y.amplitude());
  r.note = "ratio grows like T/2: no finite stability constant exists for "
           "y' - iy = 0";
  return r;
}

}  // namespace hul1
