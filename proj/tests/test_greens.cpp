#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "hul1/fourier.hpp"
#include "hul1/greens.hpp"
#include "oracles.hpp"

using namespace hul1;

namespace {

const Complex I(0.0, 1.0);

double termwise_gap(const ExpPolyFunction& a, const ExpPolyFunction& b) {
  return (a - b).amplitude() / std::max({1.0, a.amplitude(), b.amplitude()});
}

Poly random_hyperbolic(oracle::Rng& rng, int degree) {
  return Poly::from_roots(oracle::random_hyperbolic_roots(rng, degree));
}

}  // namespace

TEST_CASE("hyperbolicity verdicts") {
  CHECK(is_hyperbolic(Poly({2.0, 1.0})).hyperbolic);           // z + 2
  CHECK(is_hyperbolic(Poly({-1.0, 0.0, 1.0})).hyperbolic);     // z^2 - 1

  HyperbolicityCheck c = is_hyperbolic(Poly({-I, 1.0}));       // z - i
  CHECK_FALSE(c.hyperbolic);
  REQUIRE(c.witness.has_value());
  CHECK(std::abs(*c.witness - I) < 1e-12);
}

TEST_CASE("first-order kernel and constant") {
  GreensFunction g = green_function(Poly({1.0, 1.0}));  // z + 1
  ExpPolyFunction expect =
      ExpPolyFunction::single(1.0, 0, -1.0, Support::pos_halfline());
  CHECK(termwise_gap(g.kernel, expect) < 1e-12);
  CHECK(g.M == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.hyperbolic);
}

TEST_CASE("repeated root kernel t e^{-t} u(t)") {
  GreensFunction g = green_function(Poly({1.0, 2.0, 1.0}));  // (z+1)^2
  ExpPolyFunction expect =
      ExpPolyFunction::single(1.0, 1, -1.0, Support::pos_halfline());
  CHECK(termwise_gap(g.kernel, expect) < 1e-9);
  CHECK(g.M == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("two-sided kernel -(1/2) e^{-|t|}") {
  GreensFunction g = green_function(Poly({-1.0, 0.0, 1.0}));  // z^2 - 1
  ExpPolyFunction expect =
      ExpPolyFunction({{-0.5, 0, -1.0, Support::pos_halfline()},
                       {-0.5, 0, 1.0, Support::neg_halfline()}});
  CHECK(termwise_gap(g.kernel, expect) < 1e-12);
  CHECK(g.M == doctest::Approx(1.0).epsilon(1e-9));

  // cross-checked against the numerical inversion oracle
  Grid grid = reference_grid();
  std::vector<Complex> S(grid.N);
  Poly piw = g.charpoly.compose_iw();
  for (int k = 0; k < grid.N; ++k)
    S[k] = 1.0 / piw.eval(Complex(grid.freq_at(k), 0.0));
  SampledFunction inv = ift_numeric(SampledFunction(grid, std::move(S)));
  SampledFunction ker = sample(g.kernel, grid);
  double worst = 0.0;
  for (int k = 0; k < grid.N; ++k)
    worst = std::max(worst, std::abs(inv.values[k] - ker.values[k]));
  CHECK(worst <= 2e-3);
}

TEST_CASE("stability constants") {
  CHECK(stability_constant(Poly({2.0, 1.0})) == 0.5);
  CHECK(stability_constant(Poly({0.5, 1.0})) == 2.0);
  // (z+1)(z+2): kernel (e^{-t} - e^{-2t}) u(t), nonnegative, integral 1/2
  CHECK(stability_constant(Poly({2.0, 3.0, 1.0})) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("first-order closed form across the witness set") {
  const std::vector<Complex> coeffs = {1.0, 2.0, 5.0, 0.5,
                                       Complex(1.0, 3.0), -2.0};
  for (Complex a0 : coeffs) {
    double expect = 1.0 / std::abs(a0.real());
    CHECK(std::abs(stability_constant(Poly({a0, 1.0})) - expect) <=
          1e-12 * expect);
  }
}

TEST_CASE("near-axis roots are rejected with a witness") {
  Poly p({-I, 1.0});  // z - i, the instability example equation
  CHECK_THROWS_AS(green_function(p), Error);
  try {
    green_function(p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHyperbolic);
    REQUIRE(e.witness().has_value());
    CHECK(std::abs(*e.witness() - I) < 1e-12);
  }
  CHECK_THROWS_AS(stability_constant(p), Error);

  // axis tolerance is relative: a root at 1e-6 passes the default band but
  // not a coarser override
  Poly close({Complex(1e-6, -1.0), 1.0});  // root at -1e-6 + i
  CHECK(is_hyperbolic(close, 1e-9).hyperbolic);
  CHECK_FALSE(is_hyperbolic(close, 1e-3).hyperbolic);
}

TEST_CASE("transform identity on random hyperbolic polynomials") {
  oracle::Rng rng(oracle::suite_seed(0x6EE));
  RationalFunction unity{Poly::constant(1.0), Poly::constant(1.0)};
  for (int trial = 0; trial < 20; ++trial) {
    int degree = rng.uniform_int(2, 5);
    Poly p = random_hyperbolic(rng, degree);
    GreensFunction g = green_function(p);
    RationalFunction ft = fourier_transform(g.kernel);
    RationalFunction prod{ft.num * p.monic().compose_iw(), ft.den};
    CHECK(cross_relative_error(prod, unity) <= 1e-9);
  }
}

TEST_CASE("kernel matches the numerical inversion oracle") {
  oracle::Rng rng(oracle::suite_seed(0x1F7));
  Grid grid = reference_grid();
  for (int trial = 0; trial < 8; ++trial) {
    int degree = rng.uniform_int(2, 5);
    Poly p = random_hyperbolic(rng, degree);
    GreensFunction g = green_function(p);

    Poly piw = g.charpoly.compose_iw();
    std::vector<Complex> S(grid.N);
    for (int k = 0; k < grid.N; ++k)
      S[k] = 1.0 / piw.eval(Complex(grid.freq_at(k), 0.0));
    SampledFunction inv = ift_numeric(SampledFunction(grid, std::move(S)));
    SampledFunction ker = sample(g.kernel, grid);
    double worst = 0.0;
    for (int k = 0; k < grid.N; ++k)
      worst = std::max(worst, std::abs(inv.values[k] - ker.values[k]));
    CHECK_MESSAGE(worst <= 2e-3, "trial " << trial);
  }
}

TEST_CASE("triangle bound on the stability constant") {
  oracle::Rng rng(oracle::suite_seed(0x7B1));
  for (int trial = 0; trial < 12; ++trial) {
    int degree = rng.uniform_int(2, 5);
    GreensFunction g = green_function(random_hyperbolic(rng, degree));
    double sum = 0.0;
    for (const ExpPolyTerm& t : g.kernel.terms()) sum += t.l1_norm();
    CHECK(g.M <= sum * (1.0 + 1e-9) + 1e-12);
  }
  // equality when the kernel is a single term
  GreensFunction single = green_function(Poly({1.0, 2.0, 1.0}));  // (z+1)^2
  REQUIRE(single.kernel.terms().size() == 1);
  CHECK(single.M ==
        doctest::Approx(single.kernel.terms()[0].l1_norm()).epsilon(1e-9));
}

TEST_CASE("real-coefficient kernels are real-valued") {
  oracle::Rng rng(oracle::suite_seed(0x9E1));
  Grid grid(30.0, 1 << 10);
  for (int trial = 0; trial < 8; ++trial) {
    // conjugate-closed root set with one real root
    Complex a(-rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
    double b = rng.uniform(0.5, 2.0) * (trial % 2 ? 1.0 : -1.0);
    Poly p = Poly::from_roots({a, std::conj(a), Complex(b, 0.0)});
    // force exactly real coefficients (conjugate arithmetic leaves dust)
    std::vector<Complex> c = p.coeffs();
    for (Complex& x : c) x = Complex(x.real(), 0.0);
    GreensFunction g = green_function(Poly(c));
    SampledFunction ker = sample(g.kernel, grid);
    for (int k = 0; k < grid.N; ++k)
      CHECK(std::abs(ker.values[k].imag()) <= 1e-10);
  }
}

TEST_CASE("repeated roots keep the construction well conditioned") {
  // (z + 1)^2 (z + 2.5): mixed multiplicity
  Poly p = Poly::from_roots({-1.0, -1.0, -2.5});
  GreensFunction g = green_function(p);
  CHECK(g.roots.entries.size() == 2);
  RationalFunction ft = fourier_transform(g.kernel);
  RationalFunction unity{Poly::constant(1.0), Poly::constant(1.0)};
  RationalFunction prod{ft.num * p.compose_iw(), ft.den};
  CHECK(cross_relative_error(prod, unity) <= 1e-9);
}
