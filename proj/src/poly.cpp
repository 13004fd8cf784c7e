#include "hul1/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hul1 {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::UnsupportedSupport: return "UnsupportedSupport";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::ExcessJumps: return "ExcessJumps";
    case ErrorCode::Invalid: return "Invalid";
  }
  return "Unknown";
}

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0.0, 0.0));
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0, 0.0))
    coeffs_.pop_back();
}

Poly Poly::from_roots(const std::vector<Complex>& roots) {
  Poly p = Poly::constant(1.0);
  for (Complex r : roots) p = p * Poly({-r, Complex(1.0, 0.0)});
  return p;
}

bool Poly::is_zero() const {
  return coeffs_.size() == 1 && coeffs_[0] == Complex(0.0, 0.0);
}

bool Poly::is_monic(double tol) const {
  return std::abs(leading() - Complex(1.0, 0.0)) <= tol;
}

double Poly::scale() const {
  double s = 0.0;
  for (const Complex& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

Poly Poly::monic() const {
  if (is_zero()) throw Error(ErrorCode::Invalid, "monic of zero polynomial");
  Complex lead = leading();
  std::vector<Complex> c(coeffs_);
  for (Complex& x : c) x /= lead;
  c.back() = Complex(1.0, 0.0);
  return Poly(std::move(c));
}

Complex Poly::eval(Complex z) const {
  Complex acc = coeffs_.back();
  for (int k = degree() - 1; k >= 0; --k) acc = acc * z + coeffs_[k];
  return acc;
}

Poly Poly::derivative() const {
  if (degree() == 0) return Poly();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Poly(std::move(d));
}

Poly Poly::nth_derivative(int n) const {
  Poly p = *this;
  for (int i = 0; i < n; ++i) p = p.derivative();
  return p;
}

Poly Poly::shifted(Complex a) const {
  // Taylor shift by repeated synthetic division at -a would flip signs;
  // direct composition with (w + a) keeps it obvious.
  Poly result = Poly::constant(coeffs_.back());
  Poly lin({a, Complex(1.0, 0.0)});  // w + a
  for (int k = degree() - 1; k >= 0; --k)
    result = result * lin + Poly::constant(coeffs_[k]);
  return result;
}

Poly Poly::compose_iw() const {
  std::vector<Complex> c(coeffs_);
  Complex iw_pow(1.0, 0.0);
  const Complex i(0.0, 1.0);
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] *= iw_pow;
    iw_pow *= i;
  }
  return Poly(std::move(c));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Complex> c(std::max(coeffs_.size(), o.coeffs_.size()),
                         Complex(0.0, 0.0));
  for (size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Complex(-1.0); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Complex> c(coeffs_.size() + o.coeffs_.size() - 1,
                         Complex(0.0, 0.0));
  for (size_t a = 0; a < coeffs_.size(); ++a)
    for (size_t b = 0; b < o.coeffs_.size(); ++b)
      c[a + b] += coeffs_[a] * o.coeffs_[b];
  return Poly(std::move(c));
}

Poly Poly::operator*(Complex s) const {
  std::vector<Complex> c(coeffs_);
  for (Complex& x : c) x *= s;
  return Poly(std::move(c));
}

int RootMultiset::total_multiplicity() const {
  int n = 0;
  for (const RootEntry& e : entries) n += e.multiplicity;
  return n;
}

std::vector<Complex> RootMultiset::flattened() const {
  std::vector<Complex> out;
  for (const RootEntry& e : entries)
    for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.root);
  return out;
}

Poly synthetic_divide(const Poly& p, Complex root, double deflation_tol,
                      Complex* rem_out) {
  if (p.degree() < 1)
    throw Error(ErrorCode::Invalid, "cannot deflate a constant");
  const auto& c = p.coeffs();
  std::vector<Complex> q(c.size() - 1);
  Complex acc = c.back();
  for (int k = p.degree() - 1; k >= 0; --k) {
    q[k] = acc;
    acc = c[k] + acc * root;
  }
  if (rem_out) *rem_out = acc;
  double bound = deflation_tol * std::max(p.scale(), 1e-300);
  if (std::abs(acc) > bound) {
    std::ostringstream msg;
    msg << "synthetic division remainder " << std::abs(acc)
        << " exceeds tolerance " << bound;
    throw Error(ErrorCode::NotARoot, msg.str(), root);
  }
  return Poly(std::move(q));
}

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

// Horner evaluation with a running rounding bound (Higham-style):
// |fl(p(z)) - p(z)| <= 2 deg eps sum |c_k||z|^k.
Complex eval_noise(const Poly& p, Complex z, double* noise) {
  const auto& c = p.coeffs();
  Complex acc = c.back();
  double mag = std::abs(c.back());
  const double az = std::abs(z);
  for (int k = p.degree() - 1; k >= 0; --k) {
    acc = acc * z + c[k];
    mag = mag * az + std::abs(c[k]);
  }
  *noise = 2.0 * std::max(1, p.degree()) *
           std::numeric_limits<double>::epsilon() * mag;
  return acc;
}

// One Aberth-Ehrlich sweep; returns the largest relative step.
double aberth_sweep(const Poly& p, const Poly& dp, std::vector<Complex>& w) {
  const int n = static_cast<int>(w.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double noise = 0.0;
    Complex pv = eval_noise(p, w[i], &noise);
    if (std::abs(pv) <= noise) continue;  // at the attainable accuracy
    Complex dv = dp.eval(w[i]);
    Complex ratio;
    if (dv == Complex(0.0, 0.0)) {
      // saddle point: kick off it
      ratio = Complex(1e-8, 1e-8) * std::max(1.0, std::abs(w[i]));
    } else {
      ratio = pv / dv;
    }
    Complex rep(0.0, 0.0);
    for (int j = 0; j < n; ++j)
      if (j != i) rep += 1.0 / (w[i] - w[j]);
    Complex denom = 1.0 - ratio * rep;
    Complex step = (std::abs(denom) < 1e-300) ? ratio : ratio / denom;
    w[i] -= step;
    worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(w[i])));
  }
  return worst;
}

}  // namespace

RootMultiset roots(const Poly& p_in, const RootOptions& opt) {
  if (p_in.is_zero())
    throw Error(ErrorCode::Invalid, "roots of the zero polynomial");
  if (p_in.degree() < 1)
    throw Error(ErrorCode::Invalid,
                "roots requires degree >= 1 (the ODE order n is >= 1)");

  const Poly p = p_in.monic();
  const int n = p.degree();
  const double scale = p.scale();
  const Poly dp = p.derivative();

  if (n == 1) {
    RootMultiset rm;
    rm.scale = scale;
    rm.entries.push_back({-p.coeffs()[0], 1});
    return rm;
  }

  // initial circle: Cauchy-style radius around the root centroid
  const Complex center = -p.coeffs()[n - 1] / static_cast<double>(n);
  double radius = 0.0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(p.coeffs()[k]),
                                       1.0 / (n - k)));
  radius = 1.0 + 2.0 * radius;

  for (int attempt = 0; attempt <= opt.restarts; ++attempt) {
    std::vector<Complex> w(n);
    double phase0 = 0.4 + 0.7 * attempt;  // deterministic restart offsets
    double stretch = 1.0 + 0.25 * attempt;
    for (int i = 0; i < n; ++i) {
      double ang =
          2.0 * std::numbers::pi * (i + 0.5) / n + phase0;
      w[i] = center + stretch * radius * Complex(std::cos(ang), std::sin(ang));
    }

    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
      double step = aberth_sweep(p, dp, w);
      if (step < 1e-14) {
        // every iterate either stepped below resolution or sits at the
        // rounding floor of |p|
        converged = true;
        break;
      }
    }
    if (!converged) continue;

    // Merge clusters: the fixed relative tolerance plus overlapping inclusion disks
    // of radius n(|p| + noise)/|p'|, which is what actually catches the
    // eps^(1/m)-scattered iterates around an m-fold root.
    const double merge_dist = opt.cluster_tol * std::max(1.0, scale);
    std::vector<double> incl(n);
    for (int i = 0; i < n; ++i) {
      double noise = 0.0;
      Complex pv = eval_noise(p, w[i], &noise);
      Complex dv = dp.eval(w[i]);
      incl[i] = (dv == Complex(0.0, 0.0))
                    ? merge_dist
                    : n * (std::abs(pv) + noise) / std::abs(dv);
      incl[i] = std::min(incl[i], 0.05 * (1.0 + std::abs(w[i])));
    }
    DisjointSet ds(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double d = std::abs(w[i] - w[j]);
        if (d <= merge_dist || d <= incl[i] + incl[j]) ds.join(i, j);
      }

    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i) groups[ds.find(i)].push_back(i);

    // An m-fold root is a simple root of p^(m-1): Newton-polish there; the
    // polish is only kept when it stays within the allowed spread.
    auto polish = [&](Complex centroid, int mult, double spread) {
      Poly q = p.nth_derivative(mult - 1);
      Poly dq = q.derivative();
      Complex r = centroid;
      for (int it = 0; it < 60; ++it) {
        Complex qv = q.eval(r);
        Complex dqv = dq.eval(r);
        if (qv == Complex(0.0, 0.0) || dqv == Complex(0.0, 0.0)) break;
        Complex step = qv / dqv;
        r -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
      }
      return std::abs(r - centroid) > spread ? centroid : r;
    };

    RootMultiset rm;
    rm.scale = scale;
    for (const auto& g : groups) {
      if (g.empty()) continue;
      Complex centroid(0.0, 0.0);
      for (int idx : g) centroid += w[idx];
      centroid /= static_cast<double>(g.size());
      double spread = merge_dist;
      for (int idx : g)
        spread = std::max({spread, 4.0 * incl[idx],
                           4.0 * std::abs(w[idx] - centroid)});
      int mult = static_cast<int>(g.size());
      rm.entries.push_back({polish(centroid, mult, spread), mult});
    }

    // final entries must stay pairwise separated beyond the merge distance
    for (bool merged = true; merged;) {
      merged = false;
      for (size_t a = 0; a < rm.entries.size() && !merged; ++a)
        for (size_t b = a + 1; b < rm.entries.size() && !merged; ++b) {
          if (std::abs(rm.entries[a].root - rm.entries[b].root) > merge_dist)
            continue;
          int ma = rm.entries[a].multiplicity;
          int mb = rm.entries[b].multiplicity;
          Complex centroid = (rm.entries[a].root * double(ma) +
                              rm.entries[b].root * double(mb)) /
                             double(ma + mb);
          rm.entries[a].root = polish(centroid, ma + mb, 2.0 * merge_dist);
          rm.entries[a].multiplicity = ma + mb;
          rm.entries.erase(rm.entries.begin() + b);
          merged = true;
        }
    }

    bool ok = true;
    for (const RootEntry& e : rm.entries) {
      double bound = opt.residual_tol * std::max(scale, 1e-300) *
                     std::pow(std::max(1.0, std::abs(e.root)), n);
      if (std::abs(p.eval(e.root)) > bound) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    std::sort(rm.entries.begin(), rm.entries.end(),
              [](const RootEntry& a, const RootEntry& b) {
                if (a.root.real() != b.root.real())
                  return a.root.real() < b.root.real();
                return a.root.imag() < b.root.imag();
              });
    return rm;
  }
  throw Error(ErrorCode::NonConvergence,
              "Aberth iteration failed to converge after restarts");
}

namespace {

// Taylor coefficients of q about w0, orders 0..count-1, by repeated
// synthetic division (the remainders are the coefficients).
std::vector<Complex> taylor_at(const Poly& q, Complex w0, int count) {
  std::vector<Complex> out;
  out.reserve(count);
  Poly cur = q;
  while (static_cast<int>(out.size()) < count) {
    if (cur.degree() == 0) {
      out.push_back(cur.coeffs()[0]);
      cur = Poly();  // further coefficients vanish
      continue;
    }
    const auto& c = cur.coeffs();
    std::vector<Complex> qq(c.size() - 1);
    Complex acc = c.back();
    for (int j = cur.degree() - 1; j >= 0; --j) {
      qq[j] = acc;
      acc = c[j] + acc * w0;
    }
    out.push_back(acc);
    cur = Poly(std::move(qq));
  }
  return out;
}

}  // namespace

double recombination_error(const Poly& monic_p, const RootMultiset& rm,
                           const PartialFractions& pf) {
  // sum over terms of lambda * p(w) / (w - w_i)^j, formed exactly
  Poly total;
  for (const PartialFractionTerm& t : pf.terms) {
    Poly factor = Poly::constant(t.coefficient);
    for (const RootEntry& e : rm.entries) {
      int power = e.multiplicity;
      if (e.root == t.root) power -= t.order;
      for (int k = 0; k < power; ++k)
        factor = factor * Poly({-e.root, Complex(1.0, 0.0)});
    }
    total = total + factor;
  }
  Poly diff = total - Poly::constant(1.0);
  (void)monic_p;
  return diff.is_zero() ? 0.0 : diff.scale();
}

PartialFractions partial_fractions(const Poly& p_in, const RootMultiset& rm) {
  if (p_in.degree() < 1)
    throw Error(ErrorCode::Invalid, "partial fractions need degree >= 1");
  const Poly p = p_in.monic();
  if (rm.total_multiplicity() != p.degree())
    throw Error(ErrorCode::Invalid,
                "root multiset inconsistent with polynomial degree");

  PartialFractions pf;
  for (const RootEntry& e : rm.entries) {
    // q_i = p / (w - w_i)^{n_i} by repeated deflation (remainders dropped)
    Poly q = p;
    for (int k = 0; k < e.multiplicity; ++k) {
      const auto& c = q.coeffs();
      std::vector<Complex> qq(c.size() - 1);
      Complex acc = c.back();
      for (int j = q.degree() - 1; j >= 0; --j) {
        qq[j] = acc;
        acc = c[j] + acc * e.root;
      }
      q = Poly(std::move(qq));
    }
    // reciprocal power series of q_i about w_i
    std::vector<Complex> b = taylor_at(q, e.root, e.multiplicity);
    if (b[0] == Complex(0.0, 0.0))
      throw Error(ErrorCode::IllConditioned,
                  "deflated polynomial vanishes at the root (cluster too "
                  "tight)", e.root);
    std::vector<Complex> c(e.multiplicity);
    c[0] = 1.0 / b[0];
    for (int k = 1; k < e.multiplicity; ++k) {
      Complex s(0.0, 0.0);
      for (int j = 1; j <= k; ++j) s += b[j] * c[k - j];
      c[k] = -s / b[0];
    }
    // lambda_{i,j} = c_{n_i - j}
    for (int j = 1; j <= e.multiplicity; ++j)
      pf.terms.push_back({e.root, j, c[e.multiplicity - j]});
  }

  double err = recombination_error(p, rm, pf);
  if (err > 1e-8)
    throw Error(ErrorCode::IllConditioned,
                "partial fraction recombination error " + std::to_string(err));
  return pf;
}

}  // namespace hul1
