#pragma once

#include <optional>

#include "hul1/expfun.hpp"

namespace hul1 {

/// Default relative exclusion band around the imaginary axis. Below this the
/// stability constant exceeds ~1e9 and the bound is numerically meaningless.
inline constexpr double kDefaultAxisTol = 1e-9;

struct HyperbolicityCheck {
  bool hyperbolic;
  std::optional<Complex> witness;  // offending root when not hyperbolic
};

/// True iff every root z of p satisfies |Re z| > axis_tol * max(1, |z|).
HyperbolicityCheck is_hyperbolic(const Poly& p,
                                 double axis_tol = kDefaultAxisTol);

/// L1 kernel with F(kernel) = 1/p(iw) and its norm M.
struct GreensFunction {
  ExpPolyFunction kernel;
  Poly charpoly;      // monic
  RootMultiset roots;
  double M;
  bool hyperbolic;    // always true for a constructed value
};

/// Builds the kernel from the partial fractions of 1/p computed in the
/// variable s = iw (on p directly): a root z with Re z < 0 contributes
/// lambda t^{j-1}/(j-1)! e^{zt} u(t), with Re z > 0 the anti-causal mirror
/// -lambda t^{j-1}/(j-1)! e^{zt} u(-t). Construction verifies the transform
/// identity F(kernel) p(iw) = 1 and the delta jump bookkeeping.
/// Throws NotHyperbolic (with witness) or IllConditioned.
GreensFunction green_function(const Poly& p, double axis_tol = kDefaultAxisTol);

/// M = ||F^{-1}(1/p(iw))||_1. Degree 1 returns the exact closed form
/// 1/|Re a0| and bypasses quadrature.
double stability_constant(const Poly& p, double axis_tol = kDefaultAxisTol);

}  // namespace hul1
