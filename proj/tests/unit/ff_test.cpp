#include "hwlab/ff.hpp"

#include "doctest.h"

using namespace hwlab;

TEST_CASE("prime field model F_2") {
  auto m = build_closure_model(2, 2, 1);
  CHECK(m->field_size(1) == 2);
  // identity Frobenius on the prime field
  for (auto& x : m->enumerate(1)) CHECK(m->equal(m->frobenius(x, 1), x));
}

TEST_CASE("F_4: exactly 2 elements fixed by Frobenius") {
  auto m = build_closure_model(2, 2, 2);
  int fixed = 0;
  for (auto& x : m->enumerate(2))
    if (m->equal(m->frobenius(x, 1), x)) ++fixed;
  CHECK(fixed == 2);
}

TEST_CASE("F_9: Frobenius is x -> x^3 and x^9 = x for all x") {
  auto m = build_closure_model(3, 3, 2);
  for (auto& x : m->enumerate(2)) {
    CHECK(m->equal(m->frobenius(x, 1), m->pow(x, 3)));
    CHECK(m->equal(m->pow(x, 9), x));
  }
}

TEST_CASE("frobenius basics") {
  auto m = build_closure_model(2, 2, 2);
  // lex-least irreducible of degree 2 over F_2 is x^2+x+1, so w^2 = w+1
  FieldElement w = m->from_coords(2, {0, 1});
  CHECK(m->equal(m->frobenius(w, 0), w));
  CHECK(m->equal(m->frobenius(w, 1), m->from_coords(2, {1, 1})));  // w+1
  for (auto& x : m->enumerate(2)) CHECK(m->equal(m->frobenius(x, 2), x));
  // negative index inverts
  for (auto& x : m->enumerate(2))
    CHECK(m->equal(m->frobenius(m->frobenius(x, 1), -1), x));
}

TEST_CASE("relative trace on F_4/F_2") {
  auto m = build_closure_model(2, 2, 2);
  FieldElement w = m->from_coords(2, {0, 1});
  CHECK(m->is_zero(m->relative_trace(m->zero(2), 2)));
  CHECK(m->is_zero(m->relative_trace(m->one(2), 2)));      // 1 + 1 = 0
  CHECK(m->equal(m->relative_trace(w, 2), m->one(1)));     // w + w^2 = 1
  // additivity and Galois invariance
  for (auto& x : m->enumerate(2)) {
    for (auto& y : m->enumerate(2))
      CHECK(m->equal(m->relative_trace(m->add(x, y), 2),
                     m->add(m->relative_trace(x, 2), m->relative_trace(y, 2))));
    CHECK(m->equal(m->relative_trace(m->frobenius(x, 1), 2), m->relative_trace(x, 2)));
  }
}

TEST_CASE("relative norm on F_4/F_2") {
  auto m = build_closure_model(2, 2, 2);
  FieldElement w = m->from_coords(2, {0, 1});
  CHECK(m->is_zero(m->relative_norm(m->zero(2), 2)));
  CHECK(m->equal(m->relative_norm(w, 2), m->one(1)));  // w * w^2 = w^3 = 1
  int norm_one = 0;
  for (auto& x : m->enumerate(2))
    if (!m->is_zero(x) && m->equal(m->relative_norm(x, 2), m->one(1))) ++norm_one;
  CHECK(norm_one == 3);  // q + 1
}

TEST_CASE("Frobenius is a field automorphism fixing exactly F_q") {
  for (auto [p, q, D] : {std::tuple<std::uint32_t, std::uint64_t, int>{2, 2, 4},
                         {3, 3, 2}, {2, 4, 2}}) {
    auto m = build_closure_model(p, q, D);
    for (int d : m->degrees()) {
      auto elems = m->enumerate(d);
      int fixed = 0;
      for (auto& x : elems) {
        if (m->equal(m->frobenius(x, 1), x)) ++fixed;
        for (auto& y : elems) {
          CHECK(m->equal(m->frobenius(m->mul(x, y), 1),
                         m->mul(m->frobenius(x, 1), m->frobenius(y, 1))));
          CHECK(m->equal(m->frobenius(m->add(x, y), 1),
                         m->add(m->frobenius(x, 1), m->frobenius(y, 1))));
        }
      }
      CHECK(static_cast<std::uint64_t>(fixed) == q);
    }
  }
}

TEST_CASE("embeddings commute and respect arithmetic") {
  auto m = build_closure_model(2, 2, 4);  // degrees 1,2,4
  for (auto& x : m->enumerate(1))
    CHECK(m->equal(m->embed(m->embed(x, 2), 4), m->embed(x, 4)));
  for (auto& x : m->enumerate(2))
    for (auto& y : m->enumerate(2))
      CHECK(m->equal(m->embed(m->mul(x, y), 4),
                     m->mul(m->embed(x, 4), m->embed(y, 4))));
  // embed then project is the identity
  for (auto& x : m->enumerate(2)) CHECK(m->equal(m->project(m->embed(x, 4), 2), x));
}

TEST_CASE("trace surjectivity and tower compatibility") {
  auto m = build_closure_model(2, 2, 4);
  for (int d : m->degrees()) {
    // Tr_{k_d/k} is surjective onto k
    std::vector<bool> hit(2, false);
    for (auto& x : m->enumerate(d)) hit[m->to_index(m->relative_trace(x, d))] = true;
    CHECK(hit[0]);
    CHECK(hit[1]);
  }
  // Tr_{k_4/k}(embed(x)) = (4/2) * Tr_{k_2/k}(x) for x in k_2
  for (auto& x : m->enumerate(2)) {
    FieldElement lhs = m->relative_trace(m->embed(x, 4), 4);
    FieldElement tr = m->relative_trace(x, 2);
    FieldElement rhs = m->zero(1);
    for (int i = 0; i < 2; ++i) rhs = m->add(rhs, tr);
    CHECK(m->equal(lhs, rhs));
  }
  // same over F_3 where the multiplier is not 0 mod p
  auto m3 = build_closure_model(3, 3, 2);
  for (auto& x : m3->enumerate(1)) {
    FieldElement lhs = m3->relative_trace(m3->embed(x, 2), 2);
    FieldElement rhs = m3->add(x, x);
    CHECK(m3->equal(lhs, rhs));
  }
}

TEST_CASE("model construction errors") {
  CHECK_THROWS_AS(build_closure_model(4, 4, 1), NonPrimeP);
  CHECK_THROWS_AS(build_closure_model(2, 2, 30), BoundExceeded);
  auto m = build_closure_model(2, 2, 2);
  CHECK_THROWS_AS(m->relative_trace(m->from_coords(2, {0, 1}), 3), DegreeMismatch);
}

TEST_CASE("inverses, powers and orders") {
  auto m = build_closure_model(3, 3, 2);
  for (auto& x : m->enumerate(2)) {
    if (m->is_zero(x)) continue;
    CHECK(m->equal(m->mul(x, m->inv(x)), m->one(2)));
    CHECK(m->mult_order(x) % 1 == 0);
    CHECK(m->equal(m->pow(x, static_cast<std::int64_t>(m->mult_order(x))), m->one(2)));
  }
  CHECK(m->mult_order(m->generator(2)) == 8);
}

TEST_CASE("work field agrees with the model") {
  auto m = build_closure_model(2, 2, 2);
  WorkField wf(*m, 2, 1 << 20);
  CHECK(wf.size() == 4);
  // import respects + and *
  auto elems = m->enumerate(2);
  for (auto& x : elems) {
    for (auto& y : elems) {
      auto lx = wf.import(x), ly = wf.import(y);
      CHECK(wf.add(lx, ly) == wf.import(m->add(x, y)));
      CHECK(wf.mul(lx, ly) == wf.import(m->mul(x, y)));
    }
    CHECK(wf.frob_q(wf.import(x), 1) == wf.import(m->frobenius(x, 1)));
    CHECK(wf.trace_residue(wf.import(x)) == m->abs_trace_residue(x));
  }
  // a bigger work field containing k_2
  WorkField wf4(*m, 4, 1 << 20);
  CHECK(wf4.size() == 16);
  for (auto& x : elems)
    for (auto& y : elems)
      CHECK(wf4.add(wf4.import(x), wf4.import(y)) == wf4.import(m->add(x, y)));
}
