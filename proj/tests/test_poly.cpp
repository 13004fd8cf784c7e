#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "hul1/poly.hpp"
#include "oracles.hpp"

using namespace hul1;

namespace {

Poly make(std::initializer_list<Complex> ascending) {
  return Poly(std::vector<Complex>(ascending));
}

const RootEntry* find_root(const RootMultiset& rm, Complex r, double tol) {
  for (const RootEntry& e : rm.entries)
    if (std::abs(e.root - r) <= tol) return &e;
  return nullptr;
}

const PartialFractionTerm* find_term(const PartialFractions& pf, Complex root,
                                     int order) {
  for (const PartialFractionTerm& t : pf.terms)
    if (t.order == order && std::abs(t.root - root) <= 1e-8) return &t;
  return nullptr;
}

}  // namespace

TEST_CASE("horner evaluation") {
  Poly p = make({2.0, 3.0, 1.0});  // z^2 + 3z + 2
  CHECK(std::abs(p.eval(-1.0)) == 0.0);
  CHECK(std::abs(p.eval(0.0) - Complex(2.0, 0.0)) == 0.0);

  Poly q = make({Complex(0.0, 2.0), 1.0});  // z + 2i
  CHECK(std::abs(q.eval(1.0) - Complex(1.0, 2.0)) == 0.0);
}

TEST_CASE("roots of separated factors") {
  RootMultiset rm = roots(make({2.0, 3.0, 1.0}));
  REQUIRE(rm.entries.size() == 2);
  CHECK(find_root(rm, -1.0, 1e-12));
  CHECK(find_root(rm, -2.0, 1e-12));
  CHECK(rm.total_multiplicity() == 2);

  RootMultiset ri = roots(make({1.0, 0.0, 1.0}));  // z^2 + 1
  REQUIRE(ri.entries.size() == 2);
  CHECK(find_root(ri, Complex(0.0, 1.0), 1e-12));
  CHECK(find_root(ri, Complex(0.0, -1.0), 1e-12));
}

TEST_CASE("triple root recovered with full multiplicity") {
  // (z+1)^3 = z^3 + 3z^2 + 3z + 1
  RootMultiset rm = roots(make({1.0, 3.0, 3.0, 1.0}));
  REQUIRE(rm.entries.size() == 1);
  CHECK(rm.entries[0].multiplicity == 3);
  CHECK(std::abs(rm.entries[0].root - Complex(-1.0, 0.0)) < 1e-10);
}

TEST_CASE("degree zero rejected") {
  CHECK_THROWS_WITH_AS(roots(Poly::constant(3.0)),
                       doctest::Contains("degree >= 1"), Error);
}

TEST_CASE("starved iteration budget reports non-convergence") {
  RootOptions opt;
  opt.max_iter = 1;
  opt.restarts = 0;
  Poly p = Poly::from_roots({Complex(-1.0, 2.0), Complex(3.0, -0.5),
                             Complex(0.2, 4.0), Complex(-2.5, -1.5)});
  try {
    roots(p, opt);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvergence);
  }
}

TEST_CASE("partial fraction examples") {
  SUBCASE("distinct roots 1/((w+1)(w+2))") {
    Poly p = make({2.0, 3.0, 1.0});
    PartialFractions pf = partial_fractions(p, roots(p));
    auto* a = find_term(pf, -1.0, 1);
    auto* b = find_term(pf, -2.0, 1);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(std::abs(a->coefficient - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(b->coefficient - Complex(-1.0, 0.0)) < 1e-12);
  }
  SUBCASE("double root 1/(w+1)^2") {
    Poly p = make({1.0, 2.0, 1.0});
    PartialFractions pf = partial_fractions(p, roots(p));
    auto* top = find_term(pf, -1.0, 2);
    auto* low = find_term(pf, -1.0, 1);
    REQUIRE(top);
    REQUIRE(low);
    CHECK(std::abs(top->coefficient - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(low->coefficient) < 1e-12);
  }
  SUBCASE("residue formula 1/((w-1)(w+1))") {
    Poly p = make({-1.0, 0.0, 1.0});
    PartialFractions pf = partial_fractions(p, roots(p));
    auto* a = find_term(pf, 1.0, 1);
    auto* b = find_term(pf, -1.0, 1);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(std::abs(a->coefficient - Complex(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(b->coefficient - Complex(-0.5, 0.0)) < 1e-12);
  }
}

TEST_CASE("synthetic division") {
  SUBCASE("exact factors") {
    Poly q = synthetic_divide(make({2.0, 3.0, 1.0}), -1.0);
    CHECK(q == make({2.0, 1.0}));
    Poly c = synthetic_divide(make({1.0, 3.0, 3.0, 1.0}), -1.0);
    CHECK(c == make({1.0, 2.0, 1.0}));
  }
  SUBCASE("complex root, multiply back") {
    Poly p = make({1.0, 0.0, 1.0});
    Complex rem;
    Poly q = synthetic_divide(p, Complex(0.0, 1.0), 1e-8, &rem);
    CHECK(std::abs(rem) < 1e-15);
    Poly back = q * Poly({Complex(0.0, -1.0), 1.0});
    CHECK((back - p).scale() < 1e-12 * p.scale());
  }
  SUBCASE("not a root") {
    CHECK_THROWS_AS(synthetic_divide(make({2.0, 3.0, 1.0}), 5.0), Error);
    try {
      synthetic_divide(make({2.0, 3.0, 1.0}), 5.0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotARoot);
    }
  }
}

TEST_CASE("random separated roots recovered") {
  oracle::Rng rng(oracle::suite_seed(0xA11CE));
  for (int trial = 0; trial < 60; ++trial) {
    int degree = rng.uniform_int(1, 6);
    std::vector<Complex> target;
    while (static_cast<int>(target.size()) < degree) {
      Complex cand(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
      if (std::abs(cand) > 5.0) continue;
      bool ok = true;
      for (Complex r : target)
        if (std::abs(r - cand) < 0.1) ok = false;
      if (ok) target.push_back(cand);
    }
    Poly p = Poly::from_roots(target);
    RootMultiset rm = roots(p);
    REQUIRE(rm.total_multiplicity() == degree);
    for (Complex r : target) {
      const RootEntry* e = find_root(rm, r, 1e-8);
      REQUIRE_MESSAGE(e, "missing root in trial " << trial);
      CHECK(e->multiplicity == 1);
    }
    // expansion then evaluation stays at the rounding floor
    for (Complex r : target) {
      double tol = 8.0 * degree * (degree + 1) *
                   std::numeric_limits<double>::epsilon() * p.scale() *
                   std::pow(std::max(1.0, std::abs(r)), degree);
      CHECK(std::abs(p.eval(r)) <= tol);
    }
  }
}

TEST_CASE("random repeated roots recovered with multiplicity") {
  oracle::Rng rng(oracle::suite_seed(0xBEEF));
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Complex> base;
    std::vector<int> mult;
    int total = 0;
    while (total < 2) {
      base.clear();
      mult.clear();
      total = 0;
      int groups = rng.uniform_int(1, 3);
      for (int g = 0; g < groups && total < 6; ++g) {
        Complex cand(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        bool ok = true;
        for (Complex r : base)
          if (std::abs(r - cand) < 0.5) ok = false;
        if (!ok) continue;
        int m = rng.uniform_int(1, 3);
        base.push_back(cand);
        mult.push_back(m);
        total += m;
      }
    }
    std::vector<Complex> flat;
    for (size_t k = 0; k < base.size(); ++k)
      for (int j = 0; j < mult[k]; ++j) flat.push_back(base[k]);
    RootMultiset rm = roots(Poly::from_roots(flat));
    REQUIRE(rm.total_multiplicity() == total);
    for (size_t k = 0; k < base.size(); ++k) {
      const RootEntry* e = find_root(rm, base[k], 1e-8);
      REQUIRE_MESSAGE(e, "missing repeated root, trial " << trial);
      CHECK(e->multiplicity == mult[k]);
    }
  }
}

TEST_CASE("recombination error stays below 1e-10 on the random family") {
  oracle::Rng rng(oracle::suite_seed(0xF00D));
  for (int trial = 0; trial < 40; ++trial) {
    int degree = rng.uniform_int(1, 6);
    std::vector<Complex> target;
    while (static_cast<int>(target.size()) < degree) {
      Complex cand(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
      if (std::abs(cand) > 5.0) continue;
      bool ok = true;
      for (Complex r : target)
        if (std::abs(r - cand) < 0.25) ok = false;
      if (ok) target.push_back(cand);
    }
    Poly p = Poly::from_roots(target);
    RootMultiset rm = roots(p);
    PartialFractions pf = partial_fractions(p, rm);
    CHECK(recombination_error(p, rm, pf) <= 1e-10);
  }
}

TEST_CASE("deflate and multiply back") {
  oracle::Rng rng(oracle::suite_seed(0xD1CE));
  for (int trial = 0; trial < 25; ++trial) {
    int degree = rng.uniform_int(2, 6);
    std::vector<Complex> target;
    while (static_cast<int>(target.size()) < degree) {
      Complex cand(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
      bool ok = true;
      for (Complex r : target)
        if (std::abs(r - cand) < 0.2) ok = false;
      if (ok) target.push_back(cand);
    }
    Poly p = Poly::from_roots(target);
    Poly q = synthetic_divide(p, target[0]);
    Poly back = q * Poly({-target[0], 1.0});
    CHECK((back - p).scale() <= 1e-12 * std::max(1.0, p.scale()));
  }
}

TEST_CASE("polynomial JSON round trip basics") {
  Poly p = make({Complex(2.0, -1.0), 3.0, 1.0});
  Poly shifted = p.shifted(Complex(0.5, 0.25));
  // shift identity: p(w + a) evaluated at w-a gives p(w)
  Complex w(1.3, -0.7), a(0.5, 0.25);
  CHECK(std::abs(shifted.eval(w - a) - p.eval(w)) < 1e-12);

  Poly piw = p.compose_iw();
  Complex i(0.0, 1.0);
  CHECK(std::abs(piw.eval(w) - p.eval(i * w)) < 1e-12);
}
