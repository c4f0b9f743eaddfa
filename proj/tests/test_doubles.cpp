#include "doubles.hpp"

#include "doctest.h"
#include "taft.hpp"
#include "test_util.hpp"

using namespace hopfforge;
using hopfforge::testutil::require_all_pass;

TEST_CASE("Drinfeld double relations and embeddings") {
  CycloCtx ctx(8);
  auto T = build_taft(&ctx);
  DoubleBundle& D = *T->dbl;
  auto mul = [&](const Vec& a, const Vec& b) { return D.drinfeld.alg.mult.apply(a, b); };
  Vec E = D.embed_B(T->E_B), k = D.embed_B(T->k_B);
  Vec F = D.embed_Bs(T->F_Bs), kap = D.embed_Bs(T->kappa_Bs);

  SUBCASE("cross relations") {
    Vec lhs = vec_add(mul(E, F), vec_scale(mul(F, E), -ctx.one()));
    Vec k2 = D.drinfeld.alg.pow(k, 2), kap2 = D.drinfeld.alg.pow(kap, 2);
    Vec rhs = vec_scale(vec_add(k2, vec_scale(kap2, -ctx.one())), ctx.q_minus_qinv().inv());
    CHECK(vec_eq(lhs, rhs));
    CHECK(vec_eq(mul(k, kap), mul(kap, k)));
  }
  SUBCASE("(eps (x) 1) is the unit") {
    Vec unit = D.drinfeld.alg.unit;
    CHECK(vec_eq(unit, vec_unit(D.didx(0, 0), ctx.one())));
    for (uint32_t i = 0; i < D.dim(); ++i)
      CHECK(vec_eq(mul(unit, vec_unit(i, ctx.one())), vec_unit(i, ctx.one())));
  }
  SUBCASE("restrictions reproduce B and B*cop as sub-bialgebras") {
    for (uint32_t i = 0; i < T->B.dim(); ++i) {
      for (uint32_t j = 0; j < T->B.dim(); ++j) {
        Vec lhs = mul(D.embed_B(vec_unit(i, ctx.one())), D.embed_B(vec_unit(j, ctx.one())));
        CHECK(vec_eq(lhs, D.embed_B(T->B.alg.mult.row(i, j))));
      }
      // Delta_D on eps (x) B matches Delta_B through the embedding
      Vec2 got = D.drinfeld.delta(D.embed_B(vec_unit(i, ctx.one())));
      Vec2Acc want;
      for (size_t e = T->B.comult.begin(i); e < T->B.comult.end(i); ++e)
        want.add(uint64_t(D.didx(0, T->B.comult.j[e])) * D.dim() + D.didx(0, T->B.comult.k[e]),
                 T->B.comult.pool->at(T->B.comult.cid[e]));
      CHECK(vec2_eq(got, want.take()));
    }
    HopfAlgebra bscop = op_cop(T->Bs, OpCop::Cop);
    for (uint32_t i = 0; i < T->Bs.dim(); ++i) {
      Vec2 got = D.drinfeld.delta(D.embed_Bs(vec_unit(i, ctx.one())));
      Vec2Acc want;
      for (const auto& [key, c] : bscop.delta_basis(i))
        want.add(uint64_t(D.didx(uint32_t(key / T->Bs.dim()), 0)) * D.dim() +
                     D.didx(uint32_t(key % T->Bs.dim()), 0),
                 c);
      CHECK(vec2_eq(got, want.take()));
    }
  }
}

TEST_CASE("Heisenberg double") {
  CycloCtx ctx(8);
  auto T = build_taft(&ctx);
  DoubleBundle& D = *T->dbl;
  auto mul = [&](const Vec& a, const Vec& b) { return D.heisenberg.mult.apply(a, b); };

  SUBCASE("(eps # 1) is the unit") {
    for (uint32_t i = 0; i < D.dim(); ++i) {
      CHECK(vec_eq(mul(D.heisenberg.unit, vec_unit(i, ctx.one())), vec_unit(i, ctx.one())));
      CHECK(vec_eq(mul(vec_unit(i, ctx.one()), D.heisenberg.unit), vec_unit(i, ctx.one())));
    }
  }
  SUBCASE("partial z = (q - q^{-1}) 1 + q^{-2} z partial") {
    Vec lhs = mul(T->partial_H, T->z_H);
    Vec rhs = vec_add(vec_scale(D.heisenberg.unit, ctx.q_minus_qinv()),
                      vec_scale(mul(T->z_H, T->partial_H), ctx.qpow(-2)));
    CHECK(vec_eq(lhs, rhs));
  }
  SUBCASE("(alpha # 1)(beta # 1) = alpha beta # 1") {
    for (uint32_t a = 0; a < T->Bs.dim(); ++a)
      for (uint32_t b = 0; b < T->Bs.dim(); ++b) {
        Vec lhs = mul(vec_unit(D.didx(a, 0), ctx.one()), vec_unit(D.didx(b, 0), ctx.one()));
        VecAcc want;
        for (const auto& [i, c] : T->Bs.alg.mult.row(a, b)) want.add(D.didx(i, 0), c);
        CHECK(vec_eq(lhs, want.take()));
      }
  }
}

TEST_CASE("Lu cocycle") {
  CycloCtx ctx(8);
  auto T = build_taft(&ctx);
  DoubleBundle& D = *T->dbl;

  SUBCASE("normality eta(1, h) = eps(h)") {
    for (uint32_t h = 0; h < D.dim(); ++h) {
      Vec eh = vec_unit(h, ctx.one());
      CHECK(D.lu.eval_vv(D.drinfeld.alg.unit, eh) == D.drinfeld.counit[h]);
      CHECK(D.lu.eval_vv(eh, D.drinfeld.alg.unit) == D.drinfeld.counit[h]);
    }
  }
  SUBCASE("Star-eta on every basis pair") {
    BilinMap star = star_product(D.drinfeld, D.lu);
    for (uint32_t i = 0; i < D.dim(); ++i)
      for (uint32_t j = 0; j < D.dim(); ++j)
        CHECK(vec_eq(star.row(i, j), D.heisenberg.mult.row(i, j)));
  }
  SUBCASE("s(h') * h'' = eps(h) 1 on every basis element") {
    BilinMap star = star_product(D.drinfeld, D.lu);
    for (uint32_t h = 0; h < D.dim(); ++h) {
      VecAcc acc;
      for (size_t e = D.drinfeld.comult.begin(h); e < D.drinfeld.comult.end(h); ++e) {
        Cyc c = D.drinfeld.comult.pool->at(D.drinfeld.comult.cid[e]);
        Vec t = star.apply(D.lu.pseudo_antipode.row(D.drinfeld.comult.j[e]),
                           vec_unit(D.drinfeld.comult.k[e], ctx.one()));
        for (const auto& [i, v] : t) acc.add(i, v * c);
      }
      CHECK(vec_eq(acc.take(), vec_scale(D.heisenberg.unit, D.drinfeld.counit[h])));
    }
  }
  SUBCASE("the closed form of s matches eta(h', h'') S(h''')") {
    // s(mu (x) m) = (S(m'') ~> S*^{-1}(mu)) # S(m')
    for (uint32_t mu = 0; mu < T->Bs.dim(); ++mu)
      for (uint32_t m = 0; m < T->B.dim(); ++m) {
        VecAcc want;
        Vec smu = T->Bs.antipode_inv.row(mu);
        for (size_t e = T->B.comult.begin(m); e < T->B.comult.end(m); ++e) {
          Cyc c = T->B.comult.pool->at(T->B.comult.cid[e]);
          Vec sm2 = T->B.antipode.row(T->B.comult.k[e]);
          Vec sm1 = T->B.antipode.row(T->B.comult.j[e]);
          for (const auto& [s2, c2] : sm2)
            for (const auto& [muv, cmu] : smu)
              for (size_t f = D.pair.lact_B_on_Bs.row_begin(s2, muv);
                   f < D.pair.lact_B_on_Bs.row_end(s2, muv); ++f)
                for (const auto& [s1, c1] : sm1)
                  want.add(D.didx(D.pair.lact_B_on_Bs.idx[f], s1),
                           D.pair.lact_B_on_Bs.pool->at(D.pair.lact_B_on_Bs.cid[f]) * c * c2 *
                               cmu * c1);
        }
        CHECK(vec_eq(D.lu.pseudo_antipode.row(D.didx(mu, m)), want.take()));
      }
  }
}

TEST_CASE("heterotic action and coaction") {
  CycloCtx ctx(8);
  auto T = build_taft(&ctx);
  DoubleBundle& D = *T->dbl;

  SUBCASE("the unit acts as the identity") {
    for (uint32_t a = 0; a < D.dim(); ++a)
      CHECK(vec_eq(D.het_act(D.drinfeld.alg.unit, vec_unit(a, ctx.one())),
                   vec_unit(a, ctx.one())));
  }
  SUBCASE("E |> z^n = -q^n [n] z^{n+1}") {
    Vec E = D.embed_B(T->E_B);
    for (uint32_t n = 0; n < 2; ++n) {
      Vec want = vec_scale(T->hpow(T->z_H, n + 1), -(ctx.qpow(n) * ctx.qnum(n)));
      CHECK(vec_eq(D.het_act(E, T->hpow(T->z_H, n)), want));
    }
  }
  SUBCASE("F |> d^n = -q^n [n] d^{n+1}") {
    Vec F = D.embed_Bs(T->F_Bs);
    for (uint32_t n = 0; n < 2; ++n) {
      Vec want = vec_scale(T->hpow(T->partial_H, n + 1), -(ctx.qpow(n) * ctx.qnum(n)));
      CHECK(vec_eq(D.het_act(F, T->hpow(T->partial_H, n)), want));
    }
  }
  SUBCASE("coaction is diagonal on the grouplike kappa # k") {
    Vec2 got = D.coact(T->lambda_H);
    uint32_t lam = D.didx(T->idxBs(0, 1), T->idxB(0, 1));
    Vec2 want{{uint64_t(lam) * D.dim() + lam, ctx.one()}};
    CHECK(vec2_eq(got, want));
  }
  SUBCASE("coaction of z") {
    // delta(z) = (eps (x) k^{-2}) (x) z - (q - q^{-1}) (eps (x) E k^{-2}) (x) 1
    Vec2 got = D.coact(T->z_H);
    Vec2Acc want;
    uint32_t km2 = D.didx(0, T->idxB(0, 6));
    uint32_t Ekm2 = D.didx(0, T->idxB(1, 6));
    uint32_t zidx = D.didx(0, T->idxB(1, 6));
    want.add(uint64_t(km2) * D.dim() + zidx, -ctx.q_minus_qinv());  // z's own coefficient
    want.add(uint64_t(Ekm2) * D.dim() + D.didx(0, 0), -ctx.q_minus_qinv());
    CHECK(vec2_eq(got, want.take()));
  }
  SUBCASE("delta(1) = 1_D (x) 1") {
    Vec2 got = D.coact(D.heisenberg.unit);
    Vec2 want{{uint64_t(D.didx(0, 0)) * D.dim() + D.didx(0, 0), ctx.one()}};
    CHECK(vec2_eq(got, want));
  }
}

TEST_CASE("pseudo-adjoint form") {
  CycloCtx ctx(8);
  auto T = build_taft(&ctx);
  DoubleBundle& D = *T->dbl;

  SUBCASE("M = unit gives the identity") {
    for (uint32_t a = 0; a < D.dim(); a += 7)
      CHECK(vec_eq(D.pseudo_adjoint(D.drinfeld.alg.unit, vec_unit(a, ctx.one())),
                   vec_unit(a, ctx.one())));
  }
  SUBCASE("agrees with the heterotic action on all basis pairs") {
    for (uint32_t M = 0; M < D.dim(); ++M)
      for (uint32_t A = 0; A < D.dim(); ++A)
        CHECK(vec_eq(D.pseudo_adjoint(vec_unit(M, ctx.one()), vec_unit(A, ctx.one())),
                     D.heterotic.row(M, A)));
  }
  SUBCASE("Delta(s(h)) = S(h'') (x) s(h')") {
    const HopfAlgebra& Dr = D.drinfeld;
    for (uint32_t h = 0; h < D.dim(); ++h) {
      Vec2 lhs = Dr.delta(D.lu.pseudo_antipode.row(h));
      Vec2Acc rhs;
      for (size_t e = Dr.comult.begin(h); e < Dr.comult.end(h); ++e) {
        Cyc c = Dr.comult.pool->at(Dr.comult.cid[e]);
        for (const auto& [i, ci] : Dr.antipode.row(Dr.comult.k[e]))
          for (const auto& [j, cj] : D.lu.pseudo_antipode.row(Dr.comult.j[e]))
            rhs.add(uint64_t(i) * D.dim() + j, ci * cj * c);
      }
      CHECK(vec2_eq(lhs, rhs.take()));
    }
  }
}

TEST_CASE("cocycle twist") {
  CycloCtx ctx(8);
  auto T = build_taft(&ctx);
  DoubleBundle& D = *T->dbl;
  YDPolicy pol;
  pol.seed = 7;

  SUBCASE("the trivial cocycle gives back H with the adjoint action") {
    Cocycle triv = trivial_cocycle(D.drinfeld);
    TwistResult tw = twist_module_algebra(D.drinfeld, triv, pol);
    require_all_pass(tw.checks);
    REQUIRE(tw.yd.has_value());
    for (uint32_t i = 0; i < D.dim(); i += 13)
      for (uint32_t j = 0; j < D.dim(); j += 11)
        CHECK(vec_eq(tw.yd->A.mult.row(i, j), D.drinfeld.alg.mult.row(i, j)));
    for (uint32_t h = 0; h < D.dim(); ++h)
      CHECK(vec_eq(triv.pseudo_antipode.row(h), D.drinfeld.antipode.row(h)));
  }
  SUBCASE("Lu's cocycle reproduces the heterotic structure") {
    TwistResult tw = twist_module_algebra(D.drinfeld, D.lu, pol);
    require_all_pass(tw.checks);
    REQUIRE(tw.yd.has_value());
    for (uint32_t M = 0; M < D.dim(); M += 5)
      for (uint32_t A = 0; A < D.dim(); A += 3)
        CHECK(vec_eq(tw.yd->action.row(M, A), D.heterotic.row(M, A)));
  }
  SUBCASE("a corrupted cocycle is rejected with the violated condition") {
    Cocycle bad = D.lu;
    uint32_t some = D.didx(T->idxBs(0, 1), 0);
    bad.eta[uint64_t(some) * D.dim() + some] = bad.eval(some, some) + ctx.from_long(2);
    TwistResult tw = twist_module_algebra(D.drinfeld, bad, pol);
    CHECK(!tw.yd.has_value());
    CHECK(!tw.checks.all_pass());
    bool witnessed = false;
    for (const auto& c : tw.checks.checks)
      if (!c.pass && !c.witness.empty()) witnessed = true;
    CHECK(witnessed);
  }
}
