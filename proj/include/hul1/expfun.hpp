#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "hul1/poly.hpp"

namespace hul1 {

/// Closed support interval; lo may be -inf and hi may be +inf.
/// PosHalfLine = [0,inf), NegHalfLine = (-inf,0].
struct Support {
  double lo;
  double hi;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  static Support pos_halfline() { return {0.0, kInf}; }
  static Support neg_halfline() { return {-kInf, 0.0}; }
  static Support whole_line() { return {-kInf, kInf}; }
  static Support interval(double a, double b);
  static Support from(double a) { return {a, kInf}; }
  static Support upto(double b) { return {-kInf, b}; }

  bool lo_finite() const { return lo != -kInf; }
  bool hi_finite() const { return hi != kInf; }
  bool bounded() const { return lo_finite() && hi_finite(); }
  bool contains(double t) const { return t >= lo && t <= hi; }
  // one-sided membership, for left/right limits at t
  bool contains_left(double t) const { return t > lo && t <= hi; }
  bool contains_right(double t) const { return t >= lo && t < hi; }

  friend bool operator==(const Support& a, const Support& b) = default;
};

/// One term c * t^m * e^{z t} restricted to its support.
struct ExpPolyTerm {
  Complex c;
  int m = 0;
  Complex z;
  Support support = Support::pos_halfline();

  bool integrable() const;
  /// c t^m e^{zt} ignoring the support window.
  Complex value(double t) const;
  /// Closed-form L1 norm of this single term. Throws NotIntegrable.
  double l1_norm() const;
};

/// Jump discontinuity record: `size` = right limit minus left limit of the
/// order-th classical derivative at `location`. Deltas are never folded
/// into ExpPolyFunction; they live here.
struct JumpRecord {
  int order;
  double location;
  Complex size;
};

/// Finite sum of exponential-polynomial terms. Canonical form: terms with
/// identical (m, z, support) are merged (|z| match 1e-12) and zero
/// amplitudes dropped.
class ExpPolyFunction {
 public:
  ExpPolyFunction() = default;
  explicit ExpPolyFunction(std::vector<ExpPolyTerm> terms);

  static ExpPolyFunction zero() { return {}; }
  static ExpPolyFunction single(Complex c, int m, Complex z, Support s);

  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool integrable() const;
  /// Max term amplitude |c| (0 for the zero function).
  double amplitude() const;
  /// Finite support endpoints, sorted, deduplicated.
  std::vector<double> breakpoints() const;

  /// Sum over terms whose (closed) support contains t.
  Complex eval(double t) const;
  /// Mean of the left and right limits; equals eval away from breakpoints.
  Complex eval_avg(double t) const;

  ExpPolyFunction operator+(const ExpPolyFunction& o) const;
  ExpPolyFunction operator-(const ExpPolyFunction& o) const;
  ExpPolyFunction operator*(Complex s) const;
  /// f(t - dt): supports shift, polynomial parts re-expanded.
  ExpPolyFunction translate(double dt) const;

 private:
  std::vector<ExpPolyTerm> terms_;
};

struct DerivativeResult {
  ExpPolyFunction df;               // classical part, termwise
  std::vector<JumpRecord> jumps;    // jumps of the *input* (order 0)
};

/// Termwise d/dt with explicit jump records at finite support boundaries.
DerivativeResult derivative(const ExpPolyFunction& f);

struct L1Result {
  double value;
  double error;  // absolute error estimate (quadrature + tail bound)
};

/// Integral of |f|. Single half-line terms use the closed form
/// m!/|Re z|^{m+1}; sums use adaptive Gauss-Kronrod on a breakpoint
/// partition with analytic exponential tail bounds. Throws NotIntegrable.
double l1_norm(const ExpPolyFunction& f);
L1Result l1_norm_with_error(const ExpPolyFunction& f);

/// Closed-form convolution; the class is closed under it. Coinciding
/// exponents (|z_f - z_g| <= 1e-12) take the confluent t^{m+1} route.
/// Throws NotIntegrable.
ExpPolyFunction convolve(const ExpPolyFunction& f, const ExpPolyFunction& g);

/// Ratio of complex polynomials in the transform variable w.
struct RationalFunction {
  Poly num;
  Poly den;

  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator*(Complex s) const;
  RationalFunction derivative() const;
  /// w -> w - w0 substitution.
  RationalFunction shifted_arg(Complex w0) const;
  Complex eval(Complex w) const;
};

/// max coefficient error of num_a*den_b - num_b*den_a relative to the
/// larger cross product's scale; equality metric for rational functions.
double cross_relative_error(const RationalFunction& a,
                            const RationalFunction& b);

/// Exact transform: F(t^m e^{zt} u(t)) = m!/(iw-z)^{m+1} and
/// F(t^m e^{zt} u(-t)) = -m!/(iw-z)^{m+1}, assembled over a common
/// denominator. Throws NotIntegrable / UnsupportedSupport.
RationalFunction fourier_transform(const ExpPolyFunction& f);

struct OdeApplyResult {
  ExpPolyFunction h;                // sum coeffs[k] y^{(k)}, classical part
  std::vector<JumpRecord> jumps;    // jumps of y^{(k)}, k = 0..deg-1
};

/// Applies y -> sum_k p.coeffs()[k] * y^{(k)}; jump records accumulated
/// from every differentiation stage.
OdeApplyResult apply_ode_operator(const Poly& p, const ExpPolyFunction& y);

}  // namespace hul1
