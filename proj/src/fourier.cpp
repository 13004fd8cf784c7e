#include "hul1/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace hul1 {

namespace {

// FFTW planning is not reentrant; transforms here are small enough that
// serializing the whole call keeps results bitwise deterministic under
// concurrent use.
std::mutex fftw_mutex;

void fft_inplace(std::vector<Complex>& data, int sign) {
  std::lock_guard<std::mutex> lock(fftw_mutex);
  fftw_plan plan = fftw_plan_dft_1d(
      static_cast<int>(data.size()),
      reinterpret_cast<fftw_complex*>(data.data()),
      reinterpret_cast<fftw_complex*>(data.data()), sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(double T_, int N_) : T(T_), N(N_) {
  if (!(T > 0.0)) throw Error(ErrorCode::Invalid, "grid half-width T must be > 0");
  if (N < 8 || !power_of_two(N))
    throw Error(ErrorCode::Invalid, "grid N must be a power of two >= 8");
}

double Grid::freq_at(int idx) const {
  return (idx - N / 2) * std::numbers::pi / T;
}

SampledFunction::SampledFunction(Grid g, std::vector<Complex> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.N)
    throw Error(ErrorCode::Invalid, "sample count does not match grid");
  for (const Complex& x : values)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw Error(ErrorCode::NonFinite, "sample values must be finite");
}

SampledFunction sample(const ExpPolyFunction& f, const Grid& g) {
  std::vector<Complex> v(g.N);
  for (int k = 0; k < g.N; ++k) v[k] = f.eval_avg(g.time_at(k));
  return SampledFunction(g, std::move(v));
}

SampledFunction sample(const std::function<Complex(double)>& f,
                       const Grid& g) {
  std::vector<Complex> v(g.N);
  for (int k = 0; k < g.N; ++k) {
    v[k] = f(g.time_at(k));
    if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag()))
      throw Error(ErrorCode::NonFinite,
                  "sample is not finite at t=" + std::to_string(g.time_at(k)));
  }
  return SampledFunction(g, std::move(v));
}

SampledFunction ft_numeric(const SampledFunction& s, double* err_estimate) {
  const int N = s.grid.N;
  const double h = s.grid.step();

  std::vector<Complex> work = s.values;
  fft_inplace(work, FFTW_FORWARD);  // X_r = sum_k x_k e^{-2pi i rk/N}

  std::vector<Complex> out(N);
  for (int idx = 0; idx < N; ++idx) {
    int j = idx - N / 2;                     // signed frequency index
    int r = (j + N) % N;                     // aliased DFT bin
    double phase = (j % 2 == 0) ? 1.0 : -1.0;  // e^{+i w_j T} = (-1)^j
    // trapezoid end correction: the plain sum weights f(-T) fully and the
    // unsampled f(+T) (taken as 0) not at all
    out[idx] = h * phase * (work[r] - 0.5 * s.values[0]);
  }

  if (err_estimate) {
    // (h^2/12) int |g''| approximated by second differences, plus the edge
    // values as a tail indicator
    double d2 = 0.0;
    for (int k = 1; k + 1 < N; ++k)
      d2 += std::abs(s.values[k + 1] - 2.0 * s.values[k] + s.values[k - 1]);
    *err_estimate = d2 * h / 12.0 +
                    (std::abs(s.values[0]) + std::abs(s.values[N - 1])) *
                        s.grid.T;
  }
  return SampledFunction(s.grid, std::move(out));
}

SampledFunction ift_numeric(const SampledFunction& S) {
  const int N = S.grid.N;
  const double T = S.grid.T;

  // a_r = (-1)^j S_j with r = j mod N; the j = -N/2 edge coefficient gets
  // trapezoid half-weight (the +N/2 edge is not sampled, taken as 0)
  std::vector<Complex> work(N);
  for (int idx = 0; idx < N; ++idx) {
    int j = idx - N / 2;
    int r = (j + N) % N;
    double phase = (j % 2 == 0) ? 1.0 : -1.0;
    work[r] = phase * S.values[idx];
  }
  work[N / 2] *= 0.5;  // r = N/2 corresponds to j = -N/2
  fft_inplace(work, FFTW_BACKWARD);  // sum_r a_r e^{+2pi i rk/N}

  std::vector<Complex> out(N);
  for (int k = 0; k < N; ++k) out[k] = work[k] / (2.0 * T);
  return SampledFunction(S.grid, std::move(out));
}

SampledFunction conv_numeric(const SampledFunction& a,
                             const SampledFunction& b) {
  if (!(a.grid == b.grid))
    throw Error(ErrorCode::GridMismatch, "convolution operands on different grids");
  const int N = a.grid.N;
  const int M = 2 * N;  // zero padding for a linear convolution

  std::vector<Complex> fa(M, Complex(0.0, 0.0)), fb(M, Complex(0.0, 0.0));
  std::copy(a.values.begin(), a.values.end(), fa.begin());
  std::copy(b.values.begin(), b.values.end(), fb.begin());
  fft_inplace(fa, FFTW_FORWARD);
  fft_inplace(fb, FFTW_FORWARD);
  for (int k = 0; k < M; ++k) fa[k] *= fb[k];
  fft_inplace(fa, FFTW_BACKWARD);

  // (a*b)(t_k) ~ h sum_m a_m b_{k-m+N/2}: central window of the linear
  // convolution, scaled by h (and 1/M for the unnormalized inverse FFT)
  const double scale = a.grid.step() / M;
  std::vector<Complex> out(N);
  for (int k = 0; k < N; ++k) out[k] = scale * fa[k + N / 2];
  return SampledFunction(a.grid, std::move(out));
}

double l1_norm_numeric(const SampledFunction& s) {
  const double h = s.grid.step();
  double acc = 0.5 * std::abs(s.values[0]);  // f(+T) taken as 0
  for (size_t k = 1; k < s.values.size(); ++k) acc += std::abs(s.values[k]);
  return h * acc;
}

}  // namespace hul1
