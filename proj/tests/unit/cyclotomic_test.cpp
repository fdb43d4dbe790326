#include "hwlab/cyclotomic.hpp"

#include <random>

#include "doctest.h"
#include "hwlab/ff.hpp"

using namespace hwlab;

TEST_CASE("cyclotomic relation: sum of all p-th roots vanishes") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    Cyclotomic s(p);
    for (std::uint32_t i = 0; i < p; ++i) s += Cyclotomic::root_power(p, i);
    CHECK(s.is_zero());
  }
}

TEST_CASE("p = 2 coincides with rational arithmetic, zeta_2 = -1") {
  Cyclotomic z = Cyclotomic::root_power(2, 1);
  CHECK(z.is_rational());
  CHECK(z.rational_value() == -1);
  CHECK((z * z).rational_value() == 1);
}

TEST_CASE("p = 3: (1+z)(1+z^2) = 1") {
  Cyclotomic one = Cyclotomic::integer(3, 1);
  Cyclotomic a = one + Cyclotomic::root_power(3, 1);
  Cyclotomic b = one + Cyclotomic::root_power(3, 2);
  CHECK(a * b == one);
}

TEST_CASE("complex embedding magnitudes") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    CHECK(Cyclotomic::root_power(p, 1).complex_abs() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Cyclotomic(p).complex_abs() == doctest::Approx(0.0).epsilon(1e-12));
  }
  // p = 2: |1 - zeta_2| = 2
  Cyclotomic d = Cyclotomic::integer(2, 1) - Cyclotomic::root_power(2, 1);
  CHECK(d.complex_abs() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("norm is rational and inverse works (random samples)") {
  std::mt19937 rng(12345);
  for (std::uint32_t n : {3u, 5u, 4u}) {
    for (int trial = 0; trial < 30; ++trial) {
      Cyclotomic a(n);
      bool nonzero = false;
      for (std::uint32_t i = 0; i < Cyclotomic::phi(n); ++i) {
        long v = static_cast<long>(rng() % 7) - 3;
        if (v) nonzero = true;
        a += Cyclotomic::root_power(n, i).scaled(mpq_class(v));
      }
      // a times the product of its nontrivial conjugates is rational
      Cyclotomic prod = a;
      for (std::uint32_t j = 2; j < n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        prod *= a.conjugate(j);
      }
      CHECK(prod.is_rational());
      if (nonzero && !a.is_zero()) {
        CHECK(a * a.inverse() == Cyclotomic::integer(n, 1));
      }
    }
  }
}

TEST_CASE("modulus 4 arithmetic (operator field for p = 2)") {
  Cyclotomic i = Cyclotomic::root_power(4, 1);
  CHECK((i * i) == Cyclotomic::integer(4, -1));
  CHECK((i * i * i * i) == Cyclotomic::integer(4, 1));
  CHECK(i.conj() == -i);
  CHECK((i.abs_squared()) == Cyclotomic::integer(4, 1));
  CHECK_THROWS_AS(i.to_modulus(2), MixedModuli);
  CHECK((i * i).to_modulus(2).rational_value() == -1);
}

TEST_CASE("mixed moduli are rejected") {
  CHECK_THROWS_AS(Cyclotomic::integer(3, 1) + Cyclotomic::integer(5, 1), MixedModuli);
}

TEST_CASE("psi is additive-to-multiplicative and nontrivial") {
  auto m = build_closure_model(2, 2, 2);
  Psi psi(m, 2);
  // q = 2: psi(1) = -1
  CHECK(psi.eval(m->one(1)).rational_value() == -1);
  CHECK(psi.eval(m->zero(1)).rational_value() == 1);
  for (int d : m->degrees()) {
    // psi(x+y) = psi(x) psi(y)
    for (auto& x : m->enumerate(d))
      for (auto& y : m->enumerate(d))
        CHECK(psi.eval(m->add(x, y)) == psi.eval(x) * psi.eval(y));
    // sum over the subfield vanishes
    Cyclotomic s(psi.out_modulus());
    for (auto& x : m->enumerate(d)) s += psi.eval(x);
    CHECK(s.is_zero());
    // psi_d = psi o Tr_{k_d/k}
    for (auto& x : m->enumerate(d))
      CHECK(psi.eval(x) == psi.eval(m->relative_trace(x, d)));
  }
}

TEST_CASE("psi with a multiplicative shift") {
  auto m = build_closure_model(3, 3, 2);
  FieldElement two = m->from_base_residue(2, 1);
  Psi psi(m, 3), psi2(m, 3, two);
  for (auto& x : m->enumerate(1)) CHECK(psi2.eval(x) == psi.eval(m->mul(two, x)));
  Cyclotomic s(3);
  for (auto& x : m->enumerate(2)) s += psi2.eval(x);
  CHECK(s.is_zero());
}
