#include "tensor.hpp"

#include "doctest.h"
#include "taft.hpp"
#include "test_util.hpp"

using namespace hopfforge;

namespace {

SparseTensor random_tensor(const CycloCtx& ctx, std::vector<Slot> slots, Rng& rng,
                           int entries) {
  TensorBuilder tb(&ctx, slots);
  SparseTensor probe;
  probe.ctx = &ctx;
  probe.slots = slots;
  uint64_t total = probe.total_dim();
  for (int e = 0; e < entries; ++e)
    tb.add_key(rng.below(total), ctx.from_long(long(rng.below(9)) - 4) * ctx.zeta(rng.below(8)));
  return tb.build();
}

}  // namespace

TEST_CASE("contraction basics on the Taft bundle") {
  CycloCtx ctx(8);
  auto T = build_taft(&ctx);
  SparseTensor mult = mult_tensor(T->B.alg);
  SparseTensor unit = unit_tensor(T->B.alg);
  SparseTensor id = identity_tensor(&ctx, T->B.dim());
  Rng rng(7);

  SUBCASE("identity map acts as identity") {
    SparseTensor v = random_tensor(ctx, {Slot{T->B.dim(), Variance::Contra}}, rng, 6);
    CHECK(contract(id, v, {{1, 0}}) == v);
  }
  SUBCASE("unit axiom via contraction") {
    for (uint32_t i : {0u, 3u, 9u}) {
      TensorBuilder tb(&ctx, {Slot{T->B.dim(), Variance::Contra}});
      tb.add({i}, ctx.one());
      SparseTensor ei = tb.build();
      // m(e_i (x) 1) = e_i
      SparseTensor step = contract(mult, ei, {{1, 0}});
      CHECK(contract(step, unit, {{1, 0}}) == ei);
    }
  }
  SUBCASE("counit slot contraction is the identity on a random element") {
    SparseTensor comult = comult_tensor(T->B);
    SparseTensor counit = counit_tensor(T->B);
    SparseTensor v = random_tensor(ctx, {Slot{T->B.dim(), Variance::Contra}}, rng, 5);
    SparseTensor dv = contract(comult, v, {{0, 0}});        // v' (x) v''
    SparseTensor lhs = contract(counit, dv, {{0, 0}});      // eps(v') v''
    CHECK(lhs == v);
    SparseTensor rhs = contract(counit, dv, {{0, 1}});      // v' eps(v'')
    CHECK(rhs == v);
  }
  SUBCASE("slot mismatch is rejected") {
    SparseTensor v = random_tensor(ctx, {Slot{4, Variance::Contra}}, rng, 2);
    CHECK_THROWS_AS(contract(mult, v, {{1, 0}}), std::invalid_argument);
    SparseTensor w = random_tensor(ctx, {Slot{T->B.dim(), Variance::Co}}, rng, 2);
    CHECK_THROWS_AS(contract(mult, w, {{1, 0}}), std::invalid_argument);
  }
}

TEST_CASE("products, flips, linearity") {
  CycloCtx ctx(8);
  Rng rng(99);
  SparseTensor t = random_tensor(ctx, {Slot{3, Variance::Contra}, Slot{5, Variance::Co}}, rng, 8);

  SUBCASE("flip is an involution") { CHECK(flip_slots(flip_slots(t, 0, 1), 0, 1) == t); }
  SUBCASE("tensoring with a 1-dim unit only relabels slots") {
    TensorBuilder ub(&ctx, {Slot{1, Variance::Contra}});
    ub.add({0}, ctx.one());
    SparseTensor one = ub.build();
    SparseTensor prod = tensor_product(one, t);
    CHECK(prod.nnz() == t.nnz());
    for (size_t e = 0; e < t.nnz(); ++e) {
      CHECK(prod.keys[e] == t.keys[e]);
      CHECK(prod.vals[e] == t.vals[e]);
    }
  }
  SUBCASE("bilinearity by expansion") {
    SparseTensor a = random_tensor(ctx, {Slot{4, Variance::Co}}, rng, 3);
    SparseTensor b = random_tensor(ctx, {Slot{4, Variance::Co}}, rng, 3);
    SparseTensor c = random_tensor(ctx, {Slot{2, Variance::Contra}}, rng, 2);
    CHECK(tensor_product(add(a, b), c) == add(tensor_product(a, c), tensor_product(b, c)));
  }
  SUBCASE("no canonical tensor stores a zero") {
    TensorBuilder tb(&ctx, {Slot{2, Variance::Co}});
    tb.add({1}, ctx.one());
    tb.add({1}, -ctx.one());
    CHECK(tb.build().nnz() == 0);
  }
}

TEST_CASE("contraction network order invariance") {
  CycloCtx ctx(8);
  Rng rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    SparseTensor a =
        random_tensor(ctx, {Slot{3, Variance::Contra}, Slot{4, Variance::Co}}, rng, 6);
    SparseTensor b =
        random_tensor(ctx, {Slot{4, Variance::Contra}, Slot{5, Variance::Co}}, rng, 6);
    SparseTensor c = random_tensor(ctx, {Slot{5, Variance::Contra}}, rng, 4);
    // ((a . b) . c) vs (a . (b . c)) over the chained slots
    SparseTensor ab = contract(a, b, {{1, 0}});
    SparseTensor l = contract(ab, c, {{1, 0}});
    SparseTensor bc = contract(b, c, {{1, 0}});
    SparseTensor r = contract(a, bc, {{1, 0}});
    CHECK(l == r);
  }
}

TEST_CASE("iterated coproducts") {
  CycloCtx ctx(8);
  auto T = build_taft(&ctx);
  SparseTensor comult = comult_tensor(T->B);

  auto basis_vec = [&](uint32_t i) {
    TensorBuilder tb(&ctx, {Slot{T->B.dim(), Variance::Contra}});
    tb.add({i}, ctx.one());
    return tb.build();
  };
  SUBCASE("k = 1 is the element") {
    SparseTensor x = basis_vec(T->idxB(1, 2));
    CHECK(iterate_coproduct(comult, x, 1) == x);
  }
  SUBCASE("grouplike cubes") {
    SparseTensor g = basis_vec(T->idxB(0, 1));  // k is grouplike
    SparseTensor ggg = iterate_coproduct(comult, g, 3);
    CHECK(ggg.nnz() == 1);
    CHECK(ggg.keys[0] == ggg.pack({T->idxB(0, 1), T->idxB(0, 1), T->idxB(0, 1)}));
  }
  SUBCASE("Delta(E) = 1 (x) E + E (x) k^2") {
    SparseTensor dE = iterate_coproduct(comult, basis_vec(T->idxB(1, 0)), 2);
    REQUIRE(dE.nnz() == 2);
    CHECK(dE.at({T->idxB(0, 0), T->idxB(1, 0)}) == ctx.one());
    CHECK(dE.at({T->idxB(1, 0), T->idxB(0, 2)}) == ctx.one());
  }
  SUBCASE("left- and right-nested Sweedler powers agree") {
    for (uint32_t i = 0; i < T->B.dim(); ++i)
      CHECK(iterate_coproduct(comult, basis_vec(i), 3, true) ==
            iterate_coproduct(comult, basis_vec(i), 3, false));
  }
}

TEST_CASE("json round trip is bit-exact") {
  CycloCtx ctx(8);
  Rng rng(5);
  SparseTensor t =
      random_tensor(ctx, {Slot{4, Variance::Contra}, Slot{6, Variance::Co}}, rng, 10);
  std::string j = tensor_to_json(t);
  SparseTensor back = tensor_from_json(&ctx, j);
  CHECK(back == t);
  CHECK(tensor_to_json(back) == j);
}
