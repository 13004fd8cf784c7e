#include "hul1/greens.hpp"

#include <cmath>
#include <sstream>

namespace hul1 {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

bool root_off_axis(Complex z, double axis_tol) {
  return std::abs(z.real()) > axis_tol * std::max(1.0, std::abs(z));
}

}  // namespace

HyperbolicityCheck is_hyperbolic(const Poly& p, double axis_tol) {
  if (p.degree() < 1)
    throw Error(ErrorCode::Invalid, "hyperbolicity needs degree >= 1");
  RootMultiset rm = roots(p.monic());
  for (const RootEntry& e : rm.entries)
    if (!root_off_axis(e.root, axis_tol)) return {false, e.root};
  return {true, std::nullopt};
}

GreensFunction green_function(const Poly& p_in, double axis_tol) {
  if (p_in.degree() < 1)
    throw Error(ErrorCode::Invalid, "green_function needs degree >= 1");
  const Poly p = p_in.monic();
  RootMultiset rm = roots(p);

  for (const RootEntry& e : rm.entries) {
    if (!root_off_axis(e.root, axis_tol)) {
      std::ostringstream msg;
      msg << "root " << e.root.real() << (e.root.imag() < 0 ? "-" : "+")
          << std::abs(e.root.imag()) << "i lies within " << axis_tol
          << " of the imaginary axis; no L1 kernel exists there and the "
             "stability constant blows up like 1/|Re z|";
      throw Error(ErrorCode::NotHyperbolic, msg.str(), e.root);
    }
  }

  // Partial fractions of 1/p in the variable s = iw (i.e. on p directly);
  // the sign of Re(root) selects the causal or anti-causal half-line.
  PartialFractions pf = partial_fractions(p, rm);
  std::vector<ExpPolyTerm> terms;
  for (const PartialFractionTerm& t : pf.terms) {
    Complex amp = t.coefficient / factorial(t.order - 1);
    if (t.root.real() < 0.0)
      terms.push_back({amp, t.order - 1, t.root, Support::pos_halfline()});
    else
      terms.push_back({-amp, t.order - 1, t.root, Support::neg_halfline()});
  }

  GreensFunction g{ExpPolyFunction(std::move(terms)), p, rm, 0.0, true};
  g.M = l1_norm(g.kernel);

  // F(kernel) * p(iw) = 1 is the defining identity of the kernel.
  RationalFunction ft = fourier_transform(g.kernel);
  RationalFunction unity{Poly::constant(1.0), Poly::constant(1.0)};
  RationalFunction product{ft.num * p.compose_iw(), ft.den};
  double ft_err = cross_relative_error(product, unity);
  if (ft_err > 1e-9)
    throw Error(ErrorCode::IllConditioned,
                "kernel transform identity off by " + std::to_string(ft_err));

  // Delta bookkeeping: p(d/dt) kernel vanishes away from 0, the (n-1)-th
  // derivative jumps by exactly 1 at 0, lower orders are continuous.
  OdeApplyResult applied = apply_ode_operator(p, g.kernel);
  const int n = p.degree();
  double amp_scale = std::max(1.0, g.kernel.amplitude() * p.scale());
  if (applied.h.amplitude() > 1e-8 * amp_scale)
    throw Error(ErrorCode::IllConditioned,
                "kernel does not annihilate the operator away from 0");
  Complex top_jump(0.0, 0.0);
  for (const JumpRecord& j : applied.jumps) {
    if (j.order == n - 1 && j.location == 0.0)
      top_jump += j.size;
    else if (std::abs(j.size) > 1e-8 * amp_scale)
      throw Error(ErrorCode::IllConditioned,
                  "kernel has a spurious low-order jump");
  }
  if (std::abs(top_jump - Complex(1.0, 0.0)) > 1e-8)
    throw Error(ErrorCode::IllConditioned,
                "kernel delta identity violated: leading jump " +
                    std::to_string(std::abs(top_jump)));
  return g;
}

double stability_constant(const Poly& p_in, double axis_tol) {
  if (p_in.degree() < 1)
    throw Error(ErrorCode::Invalid, "stability constant needs degree >= 1");
  const Poly p = p_in.monic();
  if (p.degree() == 1) {
    // first order: M = 1/|Re a0| exactly, no quadrature
    Complex a0 = p.coeffs()[0];
    if (!root_off_axis(-a0, axis_tol))
      throw Error(ErrorCode::NotHyperbolic,
                  "first-order coefficient has (near-)zero real part", -a0);
    return 1.0 / std::abs(a0.real());
  }
  return green_function(p, axis_tol).M;
}

}  // namespace hul1
