#pragma once

#include <functional>
#include <vector>

#include "hul1/expfun.hpp"

namespace hul1 {

/// Uniform grid: N samples (power of two, >= 8) at t_k = -T + k h,
/// h = 2T/N. The paired frequency grid is w_j = j pi/T for
/// j in [-N/2, N/2), stored at index j + N/2.
struct Grid {
  double T;
  int N;

  Grid(double T_, int N_);

  double step() const { return 2.0 * T / N; }
  double time_at(int k) const { return -T + k * step(); }
  double freq_at(int idx) const;  // idx in [0, N)

  friend bool operator==(const Grid& a, const Grid& b) = default;
};

/// Reference resolution used throughout: e^{-t} tails < 1e-13 at T = 30.
inline Grid reference_grid() { return Grid(30.0, 1 << 14); }

struct SampledFunction {
  Grid grid;
  std::vector<Complex> values;  // size N; time order, or frequency order
                                // (index j + N/2) for spectra

  SampledFunction(Grid g, std::vector<Complex> v);
};

/// Pointwise sampling with eval_avg, so breakpoint samples take the mean of
/// the one-sided limits.
SampledFunction sample(const ExpPolyFunction& f, const Grid& g);
/// Samples an arbitrary callable; throws NonFinite on inf/nan.
SampledFunction sample(const std::function<Complex(double)>& f, const Grid& g);

/// Trapezoid-corrected FFT approximation of int e^{-iwt} f(t) dt on the
/// frequency grid (phase factor e^{+i w T} = (-1)^j applied; the unsampled
/// value f(+T) is taken as 0). err_estimate, when given, receives a crude
/// O(h^2) interior bound plus the edge tail bound.
SampledFunction ft_numeric(const SampledFunction& s,
                           double* err_estimate = nullptr);

/// Inverse transform WITH the 1/(2pi) factor, so ift(ft(f)) = f holds on
/// the grid (exactly, up to the edge-sample correction).
SampledFunction ift_numeric(const SampledFunction& S);

/// h-scaled linear (zero-padded FFT) convolution, central window returned
/// on the common grid. Throws GridMismatch.
SampledFunction conv_numeric(const SampledFunction& a,
                             const SampledFunction& b);

/// Composite trapezoid rule of |values| over [-T, T] (f(+T) taken as 0).
double l1_norm_numeric(const SampledFunction& s);

}  // namespace hul1
