#pragma once

#include <complex>
#include <vector>

#include "hul1/errors.hpp"

namespace hul1 {

using Complex = std::complex<double>;

/// Polynomial with complex coefficients, stored ascending in degree.
/// The coefficient list is trimmed so the leading coefficient is nonzero
/// (the zero polynomial keeps a single zero coefficient).
class Poly {
 public:
  Poly() : coeffs_{Complex(0.0, 0.0)} {}
  explicit Poly(std::vector<Complex> coeffs);

  static Poly constant(Complex c) { return Poly({c}); }
  /// Monic polynomial with the given roots (repetitions = multiplicity).
  static Poly from_roots(const std::vector<Complex>& roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex leading() const { return coeffs_.back(); }
  bool is_zero() const;
  bool is_monic(double tol = 0.0) const;

  /// Max coefficient magnitude.
  double scale() const;

  Poly monic() const;
  Complex eval(Complex z) const;  // Horner
  Poly derivative() const;
  Poly nth_derivative(int n) const;

  /// p(w + a) via Taylor shift.
  Poly shifted(Complex a) const;
  /// p(i*w) as a polynomial in w.
  Poly compose_iw() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Complex s) const;

  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  std::vector<Complex> coeffs_;
};

struct RootEntry {
  Complex root;
  int multiplicity;
};

/// Roots with multiplicities; pairwise distinct after clustering.
struct RootMultiset {
  std::vector<RootEntry> entries;
  double scale = 0.0;  // max |coeff| of the (monic) source polynomial

  int total_multiplicity() const;
  /// Roots listed with repetition, e.g. for Poly::from_roots.
  std::vector<Complex> flattened() const;
};

struct PartialFractionTerm {
  Complex root;
  int order;           // j in lambda_{ij}/(w - w_i)^j, 1..multiplicity
  Complex coefficient; // lambda_{ij}
};

/// Decomposition 1/p(w) = sum lambda_{ij}/(w - w_i)^j for monic p.
struct PartialFractions {
  std::vector<PartialFractionTerm> terms;
};

struct RootOptions {
  double cluster_tol = 1e-6;    // relative root-merge tolerance
  double residual_tol = 1e-9;   // |p(r)| <= residual_tol*scale*max(1,|r|)^deg
  int max_iter = 200;           // Aberth sweeps per restart
  int restarts = 5;
};

/// Simultaneous Aberth-Ehrlich iteration plus cluster merging; each repeated
/// root is refined on the (m-1)-th derivative. Throws NonConvergence.
RootMultiset roots(const Poly& p, const RootOptions& opt = {});

/// Residues of 1/p from the Taylor expansion of 1/q_i about each root,
/// q_i = p/(w - w_i)^{n_i}. Throws IllConditioned when the recombination
/// error exceeds 1e-8.
PartialFractions partial_fractions(const Poly& p, const RootMultiset& rm);

/// Largest coefficient error of sum lambda_{ij} p(w)/(w-w_i)^j against the
/// constant 1 (exact polynomial arithmetic).
double recombination_error(const Poly& monic_p, const RootMultiset& rm,
                           const PartialFractions& pf);

/// Horner deflation p = (w - root) q + rem. Throws NotARoot when
/// |rem| > deflation_tol * scale. The remainder is reported via rem_out.
Poly synthetic_divide(const Poly& p, Complex root, double deflation_tol = 1e-8,
                      Complex* rem_out = nullptr);

}  // namespace hul1
