#include "hul1/expfun.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <sstream>

namespace hul1 {

namespace {

constexpr double kExpTie = 1e-12;   // confluent-exponent tie tolerance
constexpr double kZMatch = 1e-12;   // canonical exponent merge tolerance

double factorial(int n) {
  static const auto table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  return table.at(n);
}

double binom(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

double int_pow(double x, int m) {
  double r = 1.0;
  for (int k = 0; k < m; ++k) r *= x;
  return r;
}

Complex int_pow(Complex x, int m) {
  Complex r(1.0, 0.0);
  for (int k = 0; k < m; ++k) r *= x;
  return r;
}

// int_a^b t^m e^{sigma t} dt for 0 <= a <= b (b may be +inf when sigma < 0).
double moment_integral_pos(int m, double sigma, double a, double b) {
  if (sigma == 0.0) return (int_pow(b, m + 1) - int_pow(a, m + 1)) / (m + 1);
  auto anti = [&](double t) {
    // e^{sigma t} sum_j (-1)^j m!/(m-j)! t^{m-j} / sigma^{j+1}
    double s = 0.0;
    for (int j = 0; j <= m; ++j)
      s += ((j % 2 == 0) ? 1.0 : -1.0) * factorial(m) / factorial(m - j) *
           int_pow(t, m - j) / int_pow(sigma, j + 1);
    return std::exp(sigma * t) * s;
  };
  double upper = std::isinf(b) ? 0.0 : anti(b);
  return upper - anti(a);
}

// int_alpha^beta |t|^m e^{sigma t} dt, splitting at zero; infinite endpoints
// require the matching decay sign (validated by the integrability checks).
double abs_moment_integral(int m, double sigma, double alpha, double beta) {
  if (alpha >= beta) return 0.0;
  if (alpha < 0.0 && beta > 0.0)
    return abs_moment_integral(m, sigma, alpha, 0.0) +
           abs_moment_integral(m, sigma, 0.0, beta);
  if (beta <= 0.0) return moment_integral_pos(m, -sigma, -beta, -alpha);
  return moment_integral_pos(m, sigma, alpha, beta);
}

}  // namespace

Support Support::interval(double a, double b) {
  if (!(a < b) || std::isinf(a) || std::isinf(b))
    throw Error(ErrorCode::Invalid, "interval needs finite a < b");
  return {a, b};
}

bool ExpPolyTerm::integrable() const {
  if (support.bounded()) return true;
  if (support.lo_finite() && !support.hi_finite()) return z.real() < 0.0;
  if (!support.lo_finite() && support.hi_finite()) return z.real() > 0.0;
  return false;  // whole line
}

Complex ExpPolyTerm::value(double t) const {
  return c * int_pow(t, m) * std::exp(z * t);
}

double ExpPolyTerm::l1_norm() const {
  if (!integrable())
    throw Error(ErrorCode::NotIntegrable, "term is not integrable");
  return std::abs(c) * abs_moment_integral(m, z.real(), support.lo, support.hi);
}

ExpPolyFunction::ExpPolyFunction(std::vector<ExpPolyTerm> terms)
    : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(),
            [](const ExpPolyTerm& a, const ExpPolyTerm& b) {
              if (a.support.lo != b.support.lo) return a.support.lo < b.support.lo;
              if (a.support.hi != b.support.hi) return a.support.hi < b.support.hi;
              if (a.m != b.m) return a.m < b.m;
              if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
              return a.z.imag() < b.z.imag();
            });
  std::vector<ExpPolyTerm> merged;
  for (const ExpPolyTerm& t : terms_) {
    if (!merged.empty()) {
      ExpPolyTerm& last = merged.back();
      if (last.support == t.support && last.m == t.m &&
          std::abs(last.z - t.z) <= kZMatch) {
        last.c += t.c;
        continue;
      }
    }
    merged.push_back(t);
  }
  std::erase_if(merged,
                [](const ExpPolyTerm& t) { return t.c == Complex(0.0, 0.0); });
  terms_ = std::move(merged);
}

ExpPolyFunction ExpPolyFunction::single(Complex c, int m, Complex z,
                                        Support s) {
  return ExpPolyFunction({ExpPolyTerm{c, m, z, s}});
}

bool ExpPolyFunction::integrable() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const ExpPolyTerm& t) { return t.integrable(); });
}

double ExpPolyFunction::amplitude() const {
  double a = 0.0;
  for (const ExpPolyTerm& t : terms_) a = std::max(a, std::abs(t.c));
  return a;
}

std::vector<double> ExpPolyFunction::breakpoints() const {
  std::vector<double> bp;
  for (const ExpPolyTerm& t : terms_) {
    if (t.support.lo_finite()) bp.push_back(t.support.lo);
    if (t.support.hi_finite()) bp.push_back(t.support.hi);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

Complex ExpPolyFunction::eval(double t) const {
  Complex s(0.0, 0.0);
  for (const ExpPolyTerm& term : terms_)
    if (term.support.contains(t)) s += term.value(t);
  return s;
}

Complex ExpPolyFunction::eval_avg(double t) const {
  Complex left(0.0, 0.0), right(0.0, 0.0);
  for (const ExpPolyTerm& term : terms_) {
    if (term.support.contains_left(t)) left += term.value(t);
    if (term.support.contains_right(t)) right += term.value(t);
  }
  return 0.5 * (left + right);
}

ExpPolyFunction ExpPolyFunction::operator+(const ExpPolyFunction& o) const {
  std::vector<ExpPolyTerm> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return ExpPolyFunction(std::move(all));
}

ExpPolyFunction ExpPolyFunction::operator-(const ExpPolyFunction& o) const {
  return *this + o * Complex(-1.0, 0.0);
}

ExpPolyFunction ExpPolyFunction::operator*(Complex s) const {
  std::vector<ExpPolyTerm> all = terms_;
  for (ExpPolyTerm& t : all) t.c *= s;
  return ExpPolyFunction(std::move(all));
}

ExpPolyFunction ExpPolyFunction::translate(double dt) const {
  std::vector<ExpPolyTerm> out;
  for (const ExpPolyTerm& t : terms_) {
    Support s{t.support.lo_finite() ? t.support.lo + dt : t.support.lo,
              t.support.hi_finite() ? t.support.hi + dt : t.support.hi};
    Complex base = t.c * std::exp(-t.z * dt);
    for (int r = 0; r <= t.m; ++r)
      out.push_back({base * binom(t.m, r) * int_pow(-dt, t.m - r), r, t.z, s});
  }
  return ExpPolyFunction(std::move(out));
}

DerivativeResult derivative(const ExpPolyFunction& f) {
  std::vector<ExpPolyTerm> out;
  std::map<double, Complex> jumps;
  for (const ExpPolyTerm& t : f.terms()) {
    if (t.m > 0)
      out.push_back({t.c * static_cast<double>(t.m), t.m - 1, t.z, t.support});
    out.push_back({t.c * t.z, t.m, t.z, t.support});
    if (t.support.lo_finite()) jumps[t.support.lo] += t.value(t.support.lo);
    if (t.support.hi_finite()) jumps[t.support.hi] -= t.value(t.support.hi);
  }
  DerivativeResult res{ExpPolyFunction(std::move(out)), {}};
  for (const auto& [loc, size] : jumps)
    if (size != Complex(0.0, 0.0)) res.jumps.push_back({0, loc, size});
  return res;
}

namespace {

// Analytic bound on int over |t| >= T of the term magnitudes that extend
// past T in the given direction (+1 right, -1 left).
double tail_bound(const std::vector<ExpPolyTerm>& terms, double T, int dir) {
  double bound = 0.0;
  for (const ExpPolyTerm& t : terms) {
    bool open_right = !t.support.hi_finite();
    bool open_left = !t.support.lo_finite();
    if (dir > 0 && open_right)
      bound += std::abs(t.c) * abs_moment_integral(t.m, t.z.real(), T,
                                                   Support::kInf);
    if (dir < 0 && open_left)
      bound += std::abs(t.c) * abs_moment_integral(t.m, t.z.real(),
                                                   -Support::kInf, -T);
  }
  return bound;
}

}  // namespace

L1Result l1_norm_with_error(const ExpPolyFunction& f) {
  for (const ExpPolyTerm& t : f.terms())
    if (!t.integrable()) {
      std::ostringstream msg;
      msg << "non-integrable term: m=" << t.m << " Re z=" << t.z.real()
          << " support [" << t.support.lo << ", " << t.support.hi << "]";
      throw Error(ErrorCode::NotIntegrable, msg.str(), t.z);
    }
  if (f.is_zero()) return {0.0, 0.0};
  if (f.terms().size() == 1) return {f.terms()[0].l1_norm(), 0.0};

  double rough = 0.0;  // triangle-inequality upper bound, scales tolerances
  for (const ExpPolyTerm& t : f.terms()) rough += t.l1_norm();
  const double tail_tol = 1e-13 * (1.0 + rough);

  std::vector<double> bp = f.breakpoints();
  bp.push_back(0.0);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  double right = bp.back(), left = bp.front();
  double tail_err = 0.0;
  if (std::any_of(f.terms().begin(), f.terms().end(),
                  [](const ExpPolyTerm& t) { return !t.support.hi_finite(); })) {
    right = std::max(1.0, right + 1.0);
    while (tail_bound(f.terms(), right, +1) > tail_tol && right < 1e9)
      right *= 2.0;
    tail_err += tail_bound(f.terms(), right, +1);
  }
  if (std::any_of(f.terms().begin(), f.terms().end(),
                  [](const ExpPolyTerm& t) { return !t.support.lo_finite(); })) {
    left = std::min(-1.0, left - 1.0);
    while (tail_bound(f.terms(), -left, -1) > tail_tol && left > -1e9)
      left *= 2.0;
    tail_err += tail_bound(f.terms(), -left, -1);
  }

  std::vector<double> nodes;
  nodes.push_back(left);
  for (double b : bp)
    if (b > left && b < right) nodes.push_back(b);
  nodes.push_back(right);

  // split long spans so oscillatory magnitudes cannot alias past the
  // adaptive error estimate
  std::vector<double> refined;
  for (size_t k = 0; k + 1 < nodes.size(); ++k) {
    refined.push_back(nodes[k]);
    double span = nodes[k + 1] - nodes[k];
    int chunks = static_cast<int>(std::ceil(span / 2.0));
    for (int c = 1; c < chunks; ++c)
      refined.push_back(nodes[k] + span * c / chunks);
  }
  refined.push_back(nodes.back());
  nodes = std::move(refined);

  using boost::math::quadrature::gauss_kronrod;
  double value = 0.0, err = tail_err;
  auto magnitude = [&f](double t) { return std::abs(f.eval(t)); };
  for (size_t k = 0; k + 1 < nodes.size(); ++k) {
    if (nodes[k + 1] <= nodes[k]) continue;
    double seg_err = 0.0;
    value += gauss_kronrod<double, 15>::integrate(
        magnitude, nodes[k], nodes[k + 1], 15, 1e-11, &seg_err);
    err += seg_err;
  }
  return {value, err};
}

double l1_norm(const ExpPolyFunction& f) { return l1_norm_with_error(f).value; }

namespace {

struct PieceBound {
  bool infinite = false;  // contributes nothing (decay checked by invariants)
  bool t_shift = false;   // x = t - gamma; otherwise x = gamma
  double gamma = 0.0;
};

// Emits sign * pref * t^{mpow} e^{z_a t} * H_n(bound) onto `out` where
// H_n is the antiderivative of x^n e^{Delta x}. `zb` is the exact exponent
// of the other factor (z_a + Delta).
void emit_bound_terms(std::vector<ExpPolyTerm>& out, double sign, Complex pref,
                      int mpow, Complex za, Complex zb, Complex delta,
                      bool confluent, int n, const PieceBound& bound,
                      Support sup) {
  if (bound.infinite) return;
  if (confluent) {
    if (!bound.t_shift) {
      Complex v = int_pow(Complex(bound.gamma, 0.0), n + 1) / double(n + 1);
      out.push_back({sign * pref * v, mpow, za, sup});
    } else {
      for (int r = 0; r <= n + 1; ++r) {
        Complex coef = binom(n + 1, r) * int_pow(-bound.gamma, n + 1 - r) /
                       double(n + 1);
        out.push_back({sign * pref * coef, mpow + r, za, sup});
      }
    }
    return;
  }
  if (!bound.t_shift) {
    Complex v(0.0, 0.0);
    for (int j = 0; j <= n; ++j)
      v += ((j % 2 == 0) ? 1.0 : -1.0) * factorial(n) / factorial(n - j) *
           int_pow(Complex(bound.gamma, 0.0), n - j) / int_pow(delta, j + 1);
    v *= std::exp(delta * bound.gamma);
    out.push_back({sign * pref * v, mpow, za, sup});
  } else {
    Complex shift = std::exp(-delta * bound.gamma);
    for (int j = 0; j <= n; ++j) {
      Complex sj = ((j % 2 == 0) ? 1.0 : -1.0) * factorial(n) /
                   factorial(n - j) / int_pow(delta, j + 1);
      for (int r = 0; r <= n - j; ++r) {
        Complex coef =
            sj * binom(n - j, r) * int_pow(-bound.gamma, n - j - r);
        out.push_back({sign * pref * shift * coef, mpow + r, zb, sup});
      }
    }
  }
}

void convolve_pair(std::vector<ExpPolyTerm>& out, const ExpPolyTerm& A,
                   const ExpPolyTerm& B) {
  const double a1 = A.support.lo, b1 = A.support.hi;
  const double a2 = B.support.lo, b2 = B.support.hi;

  std::vector<double> breaks;
  for (double s : {a1 + a2, a1 + b2, b1 + a2, b1 + b2})
    if (std::isfinite(s)) breaks.push_back(s);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  if (breaks.empty())
    throw Error(ErrorCode::NotIntegrable,
                "convolution of terms without finite breakpoints");

  const Complex delta = B.z - A.z;
  const bool confluent = std::abs(delta) <= kExpTie;

  struct Piece {
    double lo, hi, rep;
  };
  std::vector<Piece> pieces;
  pieces.push_back({-Support::kInf, breaks.front(), breaks.front() - 1.0});
  for (size_t k = 0; k + 1 < breaks.size(); ++k)
    pieces.push_back(
        {breaks[k], breaks[k + 1], 0.5 * (breaks[k] + breaks[k + 1])});
  pieces.push_back({breaks.back(), Support::kInf, breaks.back() + 1.0});

  for (const Piece& piece : pieces) {
    if (piece.lo >= piece.hi) continue;
    // integration domain in x: [max(a2, t-b1), min(b2, t-a1)]
    double lo_const = a2, lo_shift = piece.rep - b1;
    double hi_const = b2, hi_shift = piece.rep - a1;

    PieceBound L, U;
    if (!std::isfinite(lo_const) && !std::isfinite(lo_shift)) {
      L.infinite = true;
    } else if (lo_shift > lo_const) {
      L.t_shift = true;
      L.gamma = b1;
    } else {
      L.gamma = a2;
    }
    if (!std::isfinite(hi_const) && !std::isfinite(hi_shift)) {
      U.infinite = true;
    } else if (hi_shift < hi_const) {
      U.t_shift = true;
      U.gamma = a1;
    } else {
      U.gamma = b2;
    }
    double lval = std::max(lo_const, lo_shift);
    double uval = std::min(hi_const, hi_shift);
    if (!(lval < uval)) continue;  // empty on this piece

    Support sup{piece.lo, piece.hi};
    // (A*B)(t) = e^{z_a t} sum_k C(m_a,k)(-1)^k t^{m_a-k}
    //            int x^{k+m_b} e^{Delta x} dx
    for (int k = 0; k <= A.m; ++k) {
      Complex pref = A.c * B.c * binom(A.m, k) * (k % 2 == 0 ? 1.0 : -1.0);
      int n = k + B.m;
      int mpow = A.m - k;
      emit_bound_terms(out, +1.0, pref, mpow, A.z, B.z, delta, confluent, n, U,
                       sup);
      emit_bound_terms(out, -1.0, pref, mpow, A.z, B.z, delta, confluent, n, L,
                       sup);
    }
  }
}

}  // namespace

ExpPolyFunction convolve(const ExpPolyFunction& f, const ExpPolyFunction& g) {
  if (!f.integrable() || !g.integrable())
    throw Error(ErrorCode::NotIntegrable,
                "convolution requires both factors integrable");
  std::vector<ExpPolyTerm> out;
  for (const ExpPolyTerm& A : f.terms())
    for (const ExpPolyTerm& B : g.terms()) convolve_pair(out, A, B);
  for (const ExpPolyTerm& t : out)
    if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag()))
      throw Error(ErrorCode::NonFinite, "convolution produced non-finite term");
  return ExpPolyFunction(std::move(out));
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return {num * o.num, den * o.den};
}

RationalFunction RationalFunction::operator*(Complex s) const {
  return {num * s, den};
}

RationalFunction RationalFunction::derivative() const {
  return {num.derivative() * den - num * den.derivative(), den * den};
}

RationalFunction RationalFunction::shifted_arg(Complex w0) const {
  return {num.shifted(-w0), den.shifted(-w0)};
}

Complex RationalFunction::eval(Complex w) const {
  return num.eval(w) / den.eval(w);
}

double cross_relative_error(const RationalFunction& a,
                            const RationalFunction& b) {
  Poly x = a.num * b.den;
  Poly y = b.num * a.den;
  double scale = std::max({x.scale(), y.scale(), 1e-300});
  return (x - y).scale() / scale;
}

RationalFunction fourier_transform(const ExpPolyFunction& f) {
  struct Pole {
    Complex z;
    int power;
  };
  std::vector<Pole> poles;
  struct Piece {
    Complex coeff;  // c * m! * sign
    size_t pole;
    int power;      // m + 1
  };
  std::vector<Piece> pieces;

  for (const ExpPolyTerm& t : f.terms()) {
    if (!t.integrable())
      throw Error(ErrorCode::NotIntegrable, "transform of non-integrable term",
                  t.z);
    double sign;
    if (t.support == Support::pos_halfline()) {
      sign = 1.0;
    } else if (t.support == Support::neg_halfline()) {
      sign = -1.0;
    } else {
      throw Error(ErrorCode::UnsupportedSupport,
                  "closed-form transform needs half-line supports; route "
                  "bounded terms through the numeric module");
    }
    size_t idx = poles.size();
    for (size_t k = 0; k < poles.size(); ++k)
      if (std::abs(poles[k].z - t.z) <= kZMatch) {
        idx = k;
        break;
      }
    if (idx == poles.size()) poles.push_back({t.z, t.m + 1});
    poles[idx].power = std::max(poles[idx].power, t.m + 1);
    pieces.push_back({t.c * factorial(t.m) * sign, idx, t.m + 1});
  }

  if (pieces.empty()) return {Poly(), Poly::constant(1.0)};

  const Complex i(0.0, 1.0);
  auto pole_factor = [&](size_t k, int power) {
    Poly f1({-poles[k].z, i});  // iw - z
    Poly acc = Poly::constant(1.0);
    for (int j = 0; j < power; ++j) acc = acc * f1;
    return acc;
  };

  Poly den = Poly::constant(1.0);
  for (size_t k = 0; k < poles.size(); ++k) den = den * pole_factor(k, poles[k].power);

  Poly num;
  for (const Piece& p : pieces) {
    Poly contrib = Poly::constant(p.coeff);
    for (size_t k = 0; k < poles.size(); ++k) {
      int power = (k == p.pole) ? poles[k].power - p.power : poles[k].power;
      contrib = contrib * pole_factor(k, power);
    }
    num = num + contrib;
  }
  return {num, den};
}

OdeApplyResult apply_ode_operator(const Poly& p, const ExpPolyFunction& y) {
  OdeApplyResult res;
  res.h = y * p.coeffs()[0];
  ExpPolyFunction dk = y;
  for (int k = 1; k <= p.degree(); ++k) {
    DerivativeResult d = derivative(dk);
    for (const JumpRecord& j : d.jumps)
      res.jumps.push_back({k - 1, j.location, j.size});
    dk = d.df;
    res.h = res.h + dk * p.coeffs()[k];
  }
  return res;
}

}  // namespace hul1
