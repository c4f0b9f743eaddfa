#include "algebroid.hpp"

#include "doctest.h"
#include "test_util.hpp"

using namespace hopfforge;
using hopfforge::testutil::require_all_pass;

namespace {

struct Fixture {
  CycloCtx ctx{8};
  std::unique_ptr<UqBundle> Uq = build_uq(&ctx);
  std::unique_ptr<HbarBundle> Hb = build_hbar(*Uq);
  std::unique_ptr<MatRealization> M = build_matrix_realization(*Uq, *Hb);
  std::unique_ptr<Algebroid> al;
  Fixture() {
    YDPolicy pol;
    pol.seed = 5;
    certify(M->mat, pol);
    Report bc = check_braided_commutativity(M->mat, pol);
    REQUIRE(bc.all_pass());
    al = build_algebroid(M->mat);
  }
  Vec base_e(uint32_t i, uint32_t j) const {  // 1-based
    return vec_unit((i - 1) * 2 + (j - 1), ctx.one());
  }
};

}  // namespace

TEST_CASE("smash product basics") {
  Fixture fx;
  Algebroid& al = *fx.al;

  SUBCASE("(X#1)(Y#1) = XY#1") {
    for (uint32_t x = 0; x < 4; ++x)
      for (uint32_t y = 0; y < 4; ++y) {
        Vec lhs = al.total.mul(al.s_of(vec_unit(x, fx.ctx.one())),
                               al.s_of(vec_unit(y, fx.ctx.one())));
        CHECK(vec_eq(lhs, al.s_of(fx.M->mat.A.mult.row(x, y))));
      }
  }
  SUBCASE("(1#h)(X#1) = (h' |> X) # h''") {
    for (uint32_t h = 0; h < al.dimH(); ++h)
      for (uint32_t x = 0; x < 4; ++x) {
        Vec lhs = al.total.mul(al.embed_H(vec_unit(h, fx.ctx.one())),
                               al.s_of(vec_unit(x, fx.ctx.one())));
        VecAcc want;
        const HopfAlgebra& U = fx.Uq->U;
        for (size_t e = U.comult.begin(h); e < U.comult.end(h); ++e) {
          Cyc c = U.comult.pool->at(U.comult.cid[e]);
          for (size_t f = fx.M->mat.action.row_begin(U.comult.j[e], x);
               f < fx.M->mat.action.row_end(U.comult.j[e], x); ++f)
            want.add(al.tidx(fx.M->mat.action.idx[f], U.comult.k[e]),
                     fx.M->mat.action.pool->at(fx.M->mat.action.cid[f]) * c);
        }
        CHECK(vec_eq(lhs, want.take()));
      }
  }
  SUBCASE("eps(e_11 K) = e_11") {
    VecAcc x;
    for (const auto& [h, c] : fx.Uq->K) x.add(al.tidx(0, h), c);
    CHECK(vec_eq(al.eps.apply(x.take()), fx.base_e(1, 1)));
  }
  SUBCASE("t(1) = 1#1") { CHECK(vec_eq(al.t_of(fx.M->mat.A.unit), al.total.unit)); }
}

TEST_CASE("target and antipode displays at p=2") {
  Fixture fx;
  Algebroid& al = *fx.al;
  require_all_pass(verify_algebroid_matp(al, *fx.M));

  SUBCASE("tau(1#K) = 1#K^{-1}") {
    Vec lhs = al.tau.apply(al.embed_H(fx.Uq->K));
    CHECK(vec_eq(lhs, al.embed_H(fx.Uq->Kinv)));
  }
}

TEST_CASE("coproduct over the base") {
  Fixture fx;
  Algebroid& al = *fx.al;

  SUBCASE("Delta(X#1) = (X#1) (x)_R (1#1)") {
    // the right leg 1#1 expands over the two unit components e_11, e_22
    auto rows = al.delta_rows(al.tidx(2, 0));
    REQUIRE(rows.size() == 2);
    for (const auto& [pr, c] : rows) {
      CHECK(pr.first == al.tidx(2, 0));
      CHECK((pr.second == al.tidx(0, 0) || pr.second == al.tidx(3, 0)));
      CHECK(c == fx.ctx.one());
    }
  }
  SUBCASE("Delta(1#K) is grouplike componentwise") {
    // each component e_ii # K contributes (e_ii # K) (x) (1 # K)
    for (uint32_t i = 0; i < 2; ++i) {
      auto rows = al.delta_rows(al.tidx(i * 2 + i, fx.Uq->idx(0, 0, 1)));
      REQUIRE(rows.size() == 2);
      for (const auto& [pr, c] : rows) {
        CHECK(pr.first == al.tidx(i * 2 + i, fx.Uq->idx(0, 0, 1)));
        CHECK((pr.second == al.tidx(0, fx.Uq->idx(0, 0, 1)) ||
               pr.second == al.tidx(3, fx.Uq->idx(0, 0, 1))));
      }
    }
  }
}

TEST_CASE("full algebroid verification at p=2") {
  Fixture fx;
  std::vector<uint32_t> gens{fx.Uq->idx(0, 0, 0), fx.Uq->idx(0, 1, 0), fx.Uq->idx(1, 0, 0),
                             fx.Uq->idx(0, 0, 1)};
  require_all_pass(verify_algebroid(*fx.al, 17, /*gaussian=*/true, gens));
}

TEST_CASE("uncertified bases are rejected") {
  Fixture fx;
  YDModuleAlgebra fake = fx.M->mat;
  fake.certified = false;
  CHECK_THROWS_AS(build_algebroid(fake), std::invalid_argument);
}
