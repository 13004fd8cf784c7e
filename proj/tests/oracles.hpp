#pragma once

// Test-only oracles, deliberately independent of the library's numeric
// machinery: adaptive Simpson instead of Gauss-Kronrod, direct evaluation of
// the defining integrals instead of the symbolic algebra they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "hul1/expfun.hpp"

namespace oracle {

using hul1::Complex;
using hul1::ExpPolyFunction;
using hul1::ExpPolyTerm;
using hul1::Support;

inline uint64_t suite_seed(uint64_t fallback) {
  if (const char* env = std::getenv("HU_L1_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return fallback;
}

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

}  // namespace detail

template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-11) {
  if (!(a < b)) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

inline Complex integrate_c(const std::function<Complex(double)>& f, double a,
                           double b, double tol = 1e-11) {
  double re = integrate([&](double t) { return f(t).real(); }, a, b, tol);
  double im = integrate([&](double t) { return f(t).imag(); }, a, b, tol);
  return {re, im};
}

// Splits [lo, hi] at the given breakpoints and integrates piecewise, so the
// Simpson recursion never straddles a discontinuity; panels are kept short
// enough that oscillation cannot alias past the refinement test.
inline Complex integrate_piecewise(const std::function<Complex(double)>& f,
                                   double lo, double hi,
                                   std::vector<double> breaks,
                                   double tol = 1e-11) {
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  Complex acc(0.0, 0.0);
  for (size_t k = 0; k + 1 < breaks.size(); ++k) {
    double a = std::max(lo, breaks[k]);
    double b = std::min(hi, breaks[k + 1]);
    if (!(a < b)) continue;
    int chunks = static_cast<int>(std::ceil((b - a) / 1.0));
    for (int c = 0; c < chunks; ++c) {
      double ca = a + (b - a) * c / chunks;
      double cb = a + (b - a) * (c + 1) / chunks;
      acc += integrate_c(f, ca, cb, tol);
    }
  }
  return acc;
}

// int e^{-iwt} f(t) dt by direct quadrature over the effective support.
inline Complex ft_direct(const ExpPolyFunction& f, double w,
                         double Tmax = 80.0) {
  auto g = [&](double t) {
    return std::exp(Complex(0.0, -w * t)) * f.eval(t);
  };
  return integrate_piecewise(g, -Tmax, Tmax, f.breakpoints());
}

// (f*g)(t) by direct quadrature of the defining integral.
inline Complex conv_direct(const ExpPolyFunction& f, const ExpPolyFunction& g,
                           double t, double Tmax = 80.0) {
  std::vector<double> breaks = g.breakpoints();
  for (double b : f.breakpoints()) breaks.push_back(t - b);
  auto integrand = [&](double x) { return f.eval(t - x) * g.eval(x); };
  return integrate_piecewise(integrand, -Tmax, Tmax, std::move(breaks));
}

inline double l1_direct(const ExpPolyFunction& f, double Tmax = 80.0) {
  std::vector<double> breaks = f.breakpoints();
  breaks.push_back(0.0);
  auto integrand = [&](double t) { return Complex(std::abs(f.eval(t)), 0.0); };
  return integrate_piecewise(integrand, -Tmax, Tmax, std::move(breaks)).real();
}

// ---- random families (pinned so every tolerance in the suites is honest:
// decay rate >= 0.5, exponents separated, amplitudes O(1)) ----

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}

  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(gen);
  }
  int uniform_int(int a, int b) {
    return std::uniform_int_distribution<int>(a, b)(gen);
  }
  Complex amplitude() {
    return {uniform(-2.0, 2.0), uniform(-2.0, 2.0)};
  }
};

// Integrable half-line exp-poly with decay in [0.5, 2.5].
inline ExpPolyFunction random_integrable(Rng& rng, int max_terms = 3,
                                         int max_power = 2) {
  int count = rng.uniform_int(1, max_terms);
  std::vector<ExpPolyTerm> terms;
  for (int k = 0; k < count; ++k) {
    bool causal = rng.uniform(0.0, 1.0) < 0.7;
    double decay = rng.uniform(0.5, 2.5);
    Complex z(causal ? -decay : decay, rng.uniform(-3.0, 3.0));
    terms.push_back({rng.amplitude(), rng.uniform_int(0, max_power), z,
                     causal ? Support::pos_halfline()
                            : Support::neg_halfline()});
  }
  return ExpPolyFunction(std::move(terms));
}

// Roots with |Re| in [0.5, 2], |z| <= 3, pairwise separation >= 0.4.
inline std::vector<Complex> random_hyperbolic_roots(Rng& rng, int degree) {
  std::vector<Complex> roots;
  while (static_cast<int>(roots.size()) < degree) {
    double re = rng.uniform(0.5, 2.0) * (rng.uniform(0.0, 1.0) < 0.7 ? -1 : 1);
    Complex cand(re, rng.uniform(-2.0, 2.0));
    bool ok = true;
    for (Complex r : roots)
      if (std::abs(r - cand) < 0.4) ok = false;
    if (ok) roots.push_back(cand);
  }
  return roots;
}

}  // namespace oracle
