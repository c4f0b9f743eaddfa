#include "ordalg.hpp"

#include "doctest.h"

using namespace hopfforge;

TEST_CASE("Taft-style straightening") {
  CycloCtx ctx(8);
  OrderedAlgebra oa(&ctx, {{"E", 2, false}, {"k", 8, true}});
  oa.set_swap_rule(1, 0, vec_unit(oa.mono({1, 1}), ctx.q()));

  CHECK(oa.dim() == 16);
  CHECK(oa.label(oa.mono({1, 2})) == "E*k^2");
  CHECK(oa.label(0) == "1");

  // k E = q E k
  Vec kE = oa.mul(oa.gen_elem(1), oa.gen_elem(0));
  CHECK(kE == vec_unit(oa.mono({1, 1}), ctx.q()));
  // E^2 = 0, k^8 = 1
  CHECK(oa.power(oa.gen_elem(0), 2).empty());
  CHECK(oa.power(oa.gen_elem(1), 8) == oa.one());
  // k^3 E^1 = q^3 E k^3
  Vec v = oa.mul(oa.gen_elem(1, 3), oa.gen_elem(0));
  CHECK(v == vec_unit(oa.mono({1, 3}), ctx.qpow(3)));
}

TEST_CASE("associativity of the rewriting engine") {
  CycloCtx ctx(12);
  Cyc inv_qmq = ctx.q_minus_qinv().inv();
  OrderedAlgebra oa(&ctx, {{"F", 3, false}, {"E", 3, false}, {"K", 6, true}});
  Vec r = vec_unit(oa.mono({1, 1, 0}), ctx.one());
  r = vec_add(r, vec_unit(oa.mono({0, 0, 1}), inv_qmq));
  r = vec_add(r, vec_unit(oa.mono({0, 0, 5}), -inv_qmq));
  oa.set_swap_rule(1, 0, r);
  oa.set_swap_rule(2, 0, vec_unit(oa.mono({1, 0, 1}), ctx.qpow(-2)));
  oa.set_swap_rule(2, 1, vec_unit(oa.mono({0, 1, 1}), ctx.qpow(2)));

  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    uint32_t a = uint32_t(rng.below(oa.dim()));
    uint32_t b = uint32_t(rng.below(oa.dim()));
    uint32_t c = uint32_t(rng.below(oa.dim()));
    Vec lhs = oa.mul(oa.mul_mono(a, b), vec_unit(c, ctx.one()));
    Vec rhs = oa.mul(vec_unit(a, ctx.one()), oa.mul_mono(b, c));
    CHECK(vec_eq(lhs, rhs));
  }
}

TEST_CASE("cyclic wrap coefficients") {
  CycloCtx ctx(8);
  OrderedAlgebra oa(&ctx, {{"g", 4, true, -ctx.one()}});
  // g^4 = -1, so g has multiplicative order 8
  CHECK(oa.power(oa.gen_elem(0), 4) == vec_unit(0, -ctx.one()));
  CHECK(oa.power(oa.gen_elem(0), 8) == oa.one());
  CHECK(oa.gen_elem(0, 5) == vec_unit(oa.mono({1}), -ctx.one()));
}

TEST_CASE("missing swap rule is reported") {
  CycloCtx ctx(8);
  OrderedAlgebra oa(&ctx, {{"a", 2, false}, {"b", 2, false}});
  CHECK_THROWS_AS(oa.mul_mono(oa.mono({0, 1}), oa.mono({1, 0})), std::logic_error);
}
