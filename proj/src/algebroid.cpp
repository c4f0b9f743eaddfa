#include "algebroid.hpp"

namespace hopfforge {

Vec Algebroid::s_of(const Vec& X) const {
  VecAcc acc;
  for (const auto& [a, c] : X)
    for (const auto& [h, ch] : H->alg.unit) acc.add(tidx(a, h), c * ch);
  return acc.take();
}

Vec Algebroid::embed_H(const Vec& h) const {
  VecAcc acc;
  for (const auto& [hi, c] : h)
    for (const auto& [a, ca] : A->A.unit) acc.add(tidx(a, hi), c * ca);
  return acc.take();
}

Algebroid::Amb Algebroid::amb_of(const Vec& left_total, const Vec& right_base) const {
  VecAcc acc;
  for (const auto& [x, cx] : left_total)
    for (const auto& [y, cy] : right_base) acc.add(x * dimA() + y, cx * cy);
  return acc.take();
}

Vec Algebroid::project(const Amb& v) const {
  VecAcc acc;
  for (const auto& [key, c] : v) {
    uint32_t x = key / dimA(), y = key % dimA();
    Vec ty = target.row(y);
    for (const auto& [t, ct] : ty)
      for (size_t e = total.mult.row_begin(t, x); e < total.mult.row_end(t, x); ++e)
        acc.add(total.mult.idx[e], total.mult.pool->at(total.mult.cid[e]) * ct * c);
  }
  return acc.take();
}

std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> Algebroid::delta_rows(
    uint32_t x) const {
  uint32_t a = x / dimH(), h = x % dimH();
  std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> out;
  for (size_t e = H->comult.begin(h); e < H->comult.end(h); ++e) {
    Cyc c = H->comult.pool->at(H->comult.cid[e]);
    for (const auto& [ua, cu] : A->A.unit)
      out.push_back({{tidx(a, H->comult.j[e]), tidx(ua, H->comult.k[e])}, c * cu});
  }
  return out;
}

Vec Algebroid::gamma_first_leg(uint32_t total_idx, uint32_t base_idx) const {
  uint32_t X = total_idx / dimH(), h = total_idx % dimH();
  // X t(Y) h = s(X) t(Y) (1#h)
  Vec v = total.mult.apply(s_of(vec_unit(X, A->A.ctx->one())), target.row(base_idx));
  return total.mult.apply(v, embed_H(vec_unit(h, A->A.ctx->one())));
}

std::unique_ptr<Algebroid> build_algebroid(const YDModuleAlgebra& A) {
  if (!A.certified)
    throw std::invalid_argument(
        "algebroid base must be a certified braided commutative YD module algebra");
  auto al = std::make_unique<Algebroid>();
  al->A = &A;
  al->H = A.H;
  const CycloCtx* ctx = A.A.ctx;
  const uint32_t da = A.dimA(), dh = A.H->dim(), dt = da * dh;

  al->total.ctx = ctx;
  al->total.pool = std::make_shared<CycPool>(ctx);
  al->total.space.dim = dt;
  for (uint32_t a = 0; a < da; ++a)
    for (uint32_t h = 0; h < dh; ++h)
      al->total.space.labels.push_back(A.A.space.labels[a] + "#" + A.H->alg.space.labels[h]);
  al->total.space.validate();

  // (X # h)(Y # g) = X (h' |> Y) # h'' g
  BilinBuilder bb(dt, dt, dt, al->total.pool);
  for (uint32_t a = 0; a < da; ++a)
    for (uint32_t h = 0; h < dh; ++h)
      for (uint32_t b = 0; b < da; ++b)
        for (uint32_t g = 0; g < dh; ++g) {
          VecAcc acc;
          for (size_t e = A.H->comult.begin(h); e < A.H->comult.end(h); ++e) {
            Cyc c = A.H->comult.pool->at(A.H->comult.cid[e]);
            uint32_t h1 = A.H->comult.j[e], h2 = A.H->comult.k[e];
            for (size_t f = A.action.row_begin(h1, b); f < A.action.row_end(h1, b); ++f) {
              Cyc c1 = A.action.pool->at(A.action.cid[f]) * c;
              for (size_t m = A.A.mult.row_begin(a, A.action.idx[f]);
                   m < A.A.mult.row_end(a, A.action.idx[f]); ++m) {
                Cyc c2 = A.A.mult.pool->at(A.A.mult.cid[m]) * c1;
                for (size_t hm = A.H->alg.mult.row_begin(h2, g);
                     hm < A.H->alg.mult.row_end(h2, g); ++hm)
                  acc.add(al->tidx(A.A.mult.idx[m], A.H->alg.mult.idx[hm]),
                          A.H->alg.mult.pool->at(A.H->alg.mult.cid[hm]) * c2);
              }
            }
          }
          bb.append_row(al->tidx(a, h), al->tidx(b, g), acc.take());
        }
  al->total.mult = bb.take();
  {
    VecAcc u;
    for (const auto& [a, ca] : A.A.unit)
      for (const auto& [h, ch] : A.H->alg.unit) u.add(al->tidx(a, h), ca * ch);
    al->total.unit = u.take();
  }

  // eps(X # h) = eps(h) X
  al->eps = linmap_from_rows(dt, da, al->total.pool, [&](uint32_t x) {
    return vec_unit(x / dh, ctx->one() * A.H->counit[x % dh]);
  });

  // t(X) = X_(0) # S^{-1}(X_(-1))
  al->target = linmap_from_rows(da, dt, al->total.pool, [&](uint32_t a) {
    VecAcc acc;
    for (size_t e = A.coaction.begin(a); e < A.coaction.end(a); ++e) {
      Cyc c = A.coaction.pool->at(A.coaction.cid[e]);
      uint32_t u = A.coaction.j[e], a0 = A.coaction.k[e];
      for (size_t f = A.H->antipode_inv.begin(u); f < A.H->antipode_inv.end(u); ++f)
        acc.add(al->tidx(a0, A.H->antipode_inv.idx[f]),
                A.H->antipode_inv.pool->at(A.H->antipode_inv.cid[f]) * c);
    }
    return acc.take();
  });

  // tau(X # h) = (1 # S(h)) ((S(X_(-1)'') |> X_(0)) # S(X_(-1)'))
  al->tau = linmap_from_rows(dt, dt, al->total.pool, [&](uint32_t x) {
    uint32_t a = x / dh, h = x % dh;
    VecAcc acc;
    for (size_t e = A.coaction.begin(a); e < A.coaction.end(a); ++e) {
      Cyc c = A.coaction.pool->at(A.coaction.cid[e]);
      uint32_t u = A.coaction.j[e], a0 = A.coaction.k[e];
      for (size_t f = A.H->comult.begin(u); f < A.H->comult.end(u); ++f) {
        Cyc c1 = A.H->comult.pool->at(A.H->comult.cid[f]) * c;
        uint32_t u1 = A.H->comult.j[f], u2 = A.H->comult.k[f];
        for (size_t g = A.H->antipode.begin(u2); g < A.H->antipode.end(u2); ++g) {
          Cyc c2 = A.H->antipode.pool->at(A.H->antipode.cid[g]) * c1;
          for (size_t m = A.action.row_begin(A.H->antipode.idx[g], a0);
               m < A.action.row_end(A.H->antipode.idx[g], a0); ++m) {
            Cyc c3 = A.action.pool->at(A.action.cid[m]) * c2;
            for (size_t g1 = A.H->antipode.begin(u1); g1 < A.H->antipode.end(u1); ++g1)
              acc.add(al->tidx(A.action.idx[m], A.H->antipode.idx[g1]),
                      A.H->antipode.pool->at(A.H->antipode.cid[g1]) * c3);
          }
        }
      }
    }
    // multiply by (1 # S(h)) on the left
    Vec inner = acc.take();
    Vec sh = A.H->antipode.row(h);
    VecAcc out;
    for (const auto& [si, sc] : sh) {
      Vec left = al->embed_H(vec_unit(si, ctx->one()));
      for (const auto& [li, lc] : left)
        for (const auto& [ri, rc] : inner)
          for (size_t m = al->total.mult.row_begin(li, ri); m < al->total.mult.row_end(li, ri);
               ++m)
            out.add(al->total.mult.idx[m],
                    al->total.mult.pool->at(al->total.mult.cid[m]) * sc * lc * rc);
    }
    return out.take();
  });
  return al;
}

Report verify_algebroid(const Algebroid& al, uint64_t seed, bool gaussian,
                        const std::vector<uint32_t>& hgens) {
  Report rep;
  rep.suite = "algebroid";
  rep.seed = seed;
  const CycloCtx* ctx = al.total.ctx;
  const uint32_t da = al.dimA(), dh = al.dimH(), dt = da * dh;
  const YDModuleAlgebra& A = *al.A;

  {  // total algebra: unit laws + associativity (exhaustive while it fits)
    CheckPolicy pol;
    pol.seed = seed;
    Report sub = verify_algebra(al.total, pol);
    rep.merge(sub, "total/");
    rep.add("total-dim", dt == da * dh, "dim=" + std::to_string(dt));
  }
  {  // eps(1#h) = eps(h) 1, s is an algebra embedding, (1#h)(X#1) = (h'|>X)#h''
    bool ok = true;
    for (uint32_t h = 0; h < dh && ok; ++h) {
      Vec lhs = al.eps.apply(al.embed_H(vec_unit(h, ctx->one())));
      if (!vec_eq(lhs, vec_scale(A.A.unit, A.H->counit[h]))) ok = false;
    }
    rep.add("eps-on-1#h", ok);
    ok = true;
    for (uint32_t a = 0; a < da && ok; ++a)
      for (uint32_t b = 0; b < da && ok; ++b) {
        Vec lhs = al.total.mul(al.s_of(vec_unit(a, ctx->one())), al.s_of(vec_unit(b, ctx->one())));
        if (!vec_eq(lhs, al.s_of(A.A.mult.row(a, b)))) ok = false;
      }
    rep.add("s-algebra-map", ok);
    ok = true;
    for (uint32_t h = 0; h < dh && ok; ++h)
      for (uint32_t b = 0; b < da && ok; ++b) {
        Vec lhs = al.total.mul(al.embed_H(vec_unit(h, ctx->one())), al.s_of(vec_unit(b, ctx->one())));
        VecAcc want;
        for (size_t e = A.H->comult.begin(h); e < A.H->comult.end(h); ++e) {
          Cyc c = A.H->comult.pool->at(A.H->comult.cid[e]);
          for (size_t f = A.action.row_begin(A.H->comult.j[e], b);
               f < A.action.row_end(A.H->comult.j[e], b); ++f)
            want.add(al.tidx(A.action.idx[f], A.H->comult.k[e]),
                     A.action.pool->at(A.action.cid[f]) * c);
        }
        if (!vec_eq(lhs, want.take())) ok = false;
      }
    rep.add("smash-on-constants", ok);
  }
  {  // t(X) s(Y) = s(Y) t(X) for all base pairs; tau(t(X)) = s(X)
    bool okc = true, okt = true;
    std::string wc, wt;
    for (uint32_t x = 0; x < da; ++x) {
      Vec tx = al.target.row(x);
      if (okt && !vec_eq(al.tau.apply(tx), al.s_of(vec_unit(x, ctx->one())))) {
        okt = false;
        wt = "(X)=(" + std::to_string(x) + ")";
      }
      for (uint32_t y = 0; y < da && okc; ++y) {
        Vec sy = al.s_of(vec_unit(y, ctx->one()));
        if (!vec_eq(al.total.mul(tx, sy), al.total.mul(sy, tx))) {
          okc = false;
          wc = "(X,Y)=(" + std::to_string(x) + "," + std::to_string(y) + ")";
        }
      }
    }
    rep.add("t-s-commute", okc, wc);
    rep.add("tau-t-is-s", okt, wt);
  }
  {  // t(Y)(X#h) = X t(Y) h  for all base pairs and every h
    bool ok = true;
    std::string w;
    for (uint32_t y = 0; y < da && ok; ++y) {
      Vec ty = al.target.row(y);
      for (uint32_t x = 0; x < da && ok; ++x)
        for (uint32_t h = 0; h < dh && ok; ++h) {
          Vec lhs = al.total.mul(ty, vec_unit(al.tidx(x, h), ctx->one()));
          Vec rhs = al.total.mul(al.total.mul(al.s_of(vec_unit(x, ctx->one())), ty),
                                 al.embed_H(vec_unit(h, ctx->one())));
          if (!vec_eq(lhs, rhs)) {
            ok = false;
            w = "(Y,X,h)=(" + std::to_string(y) + "," + std::to_string(x) + "," +
                std::to_string(h) + ")";
          }
        }
    }
    rep.add("t-commutation", ok, w);
  }
  {  // tau on 1 # U is the U antipode; tau anti-multiplicative on generators
    bool ok = true;
    for (uint32_t h = 0; h < dh && ok; ++h) {
      Vec lhs = al.tau.apply(al.embed_H(vec_unit(h, ctx->one())));
      if (!vec_eq(lhs, al.embed_H(A.H->antipode.row(h)))) ok = false;
    }
    rep.add("tau-on-1#h", ok);
    Rng rng(seed * 53 + 9);
    ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
      uint32_t x = uint32_t(rng.below(dt)), y = uint32_t(rng.below(dt));
      Vec lhs = al.tau.apply(al.total.mult.row(x, y));
      Vec rhs = al.total.mul(al.tau.row(y), al.tau.row(x));
      if (!vec_eq(lhs, rhs)) ok = false;
    }
    rep.add("tau-antimultiplicative-sampled", ok);
  }

  // --- balanced tensor product ---
  {  // normal-form projection kills every relation generator, exhaustively
    bool ok = true;
    std::string w;
    for (uint32_t x = 0; x < dt && ok; ++x)
      for (uint32_t a = 0; a < da && ok; ++a) {
        Vec tax = al.total.mul(al.target.row(a), vec_unit(x, ctx->one()));
        for (uint32_t y = 0; y < da && ok; ++y) {
          Algebroid::Amb lhs = al.amb_of(tax, vec_unit(y, ctx->one()));
          Algebroid::Amb rhs = al.amb_of(vec_unit(x, ctx->one()), A.A.mult.row(a, y));
          if (!vec_eq(al.project(lhs), al.project(rhs))) {
            ok = false;
            w = "(x,A,Y)=(" + std::to_string(x) + "," + std::to_string(a) + "," +
                std::to_string(y) + ")";
          }
        }
      }
    rep.add("quotient-well-defined", ok, w);
  }
  if (gaussian) {  // explicit row-echelon quotient as an independent route
    RowEchelon ech(ctx);
    for (uint32_t x = 0; x < dt; ++x)
      for (uint32_t a = 0; a < da; ++a) {
        Vec tax = al.total.mul(al.target.row(a), vec_unit(x, ctx->one()));
        for (uint32_t y = 0; y < da; ++y) {
          VecAcc rel;
          for (const auto& [t, c] : tax) rel.add(t * da + y, c);
          for (const auto& [b, c] : A.A.mult.row(a, y)) rel.add(x * da + b, -c);
          ech.insert(rel.take());
        }
      }
    rep.add("quotient-rank", uint64_t(dt) * da - ech.rank() == dt,
            "rank=" + std::to_string(ech.rank()) + " quotient-dim=" +
                std::to_string(uint64_t(dt) * da - ech.rank()));
    // the two routes agree: equal normal forms <=> equal echelon residues
    Rng rng(seed * 97 + 3);
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
      uint32_t x1 = uint32_t(rng.below(dt)), y1 = uint32_t(rng.below(da));
      uint32_t x2 = uint32_t(rng.below(dt)), y2 = uint32_t(rng.below(da));
      Algebroid::Amb a1 = al.amb_of(vec_unit(x1, ctx->one()), vec_unit(y1, ctx->one()));
      Algebroid::Amb a2 = al.amb_of(vec_unit(x2, ctx->one()), vec_unit(y2, ctx->one()));
      bool nf_eq = vec_eq(al.project(a1), al.project(a2));
      VecAcc diff;
      for (const auto& [i, c] : a1) diff.add(i, c);
      for (const auto& [i, c] : a2) diff.add(i, -c);
      bool ech_eq = ech.reduce(diff.take()).empty();
      if (nf_eq != ech_eq) ok = false;
    }
    rep.add("quotient-routes-agree", ok);
  }
  {  // balance law (X t(A) h) (x)_R (Y#g) = (X#h) (x)_R (A Y#g), generators g,h
    bool ok = true;
    std::string w;
    for (uint32_t x = 0; x < da && ok; ++x)
      for (uint32_t a = 0; a < da && ok; ++a)
        for (uint32_t y = 0; y < da && ok; ++y)
          for (uint32_t h : hgens) {
            if (!ok) break;
            // the g leg never enters the relations, one representative suffices
            Vec left = al.total.mul(
                al.total.mul(al.s_of(vec_unit(x, ctx->one())), al.target.row(a)),
                al.embed_H(vec_unit(h, ctx->one())));
            Algebroid::Amb lhs = al.amb_of(left, vec_unit(y, ctx->one()));
            Algebroid::Amb rhs = al.amb_of(vec_unit(al.tidx(x, h), ctx->one()), A.A.mult.row(a, y));
            if (!vec_eq(al.project(lhs), al.project(rhs))) {
              ok = false;
              w = "(X,A,Y,h)=(" + std::to_string(x) + "," + std::to_string(a) + "," +
                  std::to_string(y) + "," + std::to_string(h) + ")";
            }
          }
    rep.add("balance-law", ok, w);
  }
  {  // counit laws through the base actions on Delta representatives
    bool ok1 = true, ok2 = true;
    std::string w1, w2;
    for (uint32_t x = 0; x < dt; ++x) {
      VecAcc left, right;
      for (const auto& [pr, c] : al.delta_rows(x)) {
        // (eps (x) id): s(eps(first)) second
        Vec ef = al.eps.apply(vec_unit(pr.first, ctx->one()));
        Vec sf = al.s_of(ef);
        for (const auto& [i, ci] : al.total.mul(sf, vec_unit(pr.second, ctx->one())))
          left.add(i, ci * c);
        // (id (x) eps): first t(eps(second))
        Vec es = al.eps.apply(vec_unit(pr.second, ctx->one()));
        Vec te = al.t_of(es);
        for (const auto& [i, ci] : al.total.mul(vec_unit(pr.first, ctx->one()), te))
          right.add(i, ci * c);
      }
      if (ok1 && !vec_eq(left.take(), vec_unit(x, ctx->one()))) {
        ok1 = false;
        w1 = "(x)=(" + std::to_string(x) + ")";
      }
      if (ok2 && !vec_eq(right.take(), vec_unit(x, ctx->one()))) {
        ok2 = false;
        w2 = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("coproduct-counit-left", ok1, w1);
    rep.add("coproduct-counit-right", ok2, w2);
  }
  {  // gamma: a section of the projection, and m (id (x) tau) gamma Delta = s eps
    Rng rng(seed * 11 + 1);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      uint32_t x = uint32_t(rng.below(dt)), y = uint32_t(rng.below(da));
      // xi = class of (x (x) Y); gamma lands in total (x) (1#g) and must
      // represent the same class
      Vec first = al.gamma_first_leg(x, y);
      Algebroid::Amb back = al.amb_of(first, A.A.unit);
      Algebroid::Amb orig = al.amb_of(vec_unit(x, ctx->one()), vec_unit(y, ctx->one()));
      if (!vec_eq(al.project(back), al.project(orig))) ok = false;
    }
    rep.add("gamma-section", ok);

    bool okg = true;
    std::string wg;
    for (uint32_t x = 0; x < dt && okg; ++x) {
      VecAcc lhs;
      for (const auto& [pr, c] : al.delta_rows(x)) {
        // gamma of the pair: first' = gamma_first_leg over the base part of
        // the second component, tensor the H part of the second component
        uint32_t a2 = pr.second / dh, h2 = pr.second % dh;
        Vec first = al.gamma_first_leg(pr.first, a2);
        Vec tau2 = al.tau.apply(al.embed_H(vec_unit(h2, ctx->one())));
        for (const auto& [f, cf] : first)
          for (size_t e2 = 0; e2 < tau2.size(); ++e2)
            for (size_t m = al.total.mult.row_begin(f, tau2[e2].first);
                 m < al.total.mult.row_end(f, tau2[e2].first); ++m)
              lhs.add(al.total.mult.idx[m],
                      al.total.mult.pool->at(al.total.mult.cid[m]) * cf * tau2[e2].second * c);
      }
      Vec rhs = al.s_of(al.eps.apply(vec_unit(x, ctx->one())));
      if (!vec_eq(lhs.take(), rhs)) {
        okg = false;
        wg = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("gamma-tau-counit-identity", okg, wg);
  }
  return rep;
}

Report verify_algebroid_matp(const Algebroid& al, const MatRealization& M) {
  Report rep;
  rep.suite = "algebroid-matp";
  const CycloCtx* ctx = al.total.ctx;
  const unsigned p = M.p;
  const UqBundle& Uq = *M.uq;
  const Cyc qmq = ctx->q_minus_qinv();
  const uint32_t lam_stride = al.dimA() / (p * p);  // 1 plain, 2p with lambda

  auto base_e = [&](uint32_t i, uint32_t j) {  // 1-based e_ij as base element
    return vec_unit((uint32_t)(((i - 1) * p + (j - 1)) * lam_stride), ctx->one());
  };
  auto total_of = [&](uint32_t i, uint32_t j, const Vec& u) {  // e_ij # u
    VecAcc acc;
    for (const auto& [h, c] : u) acc.add(al.tidx(((i - 1) * p + (j - 1)) * lam_stride, h), c);
    return acc.take();
  };

  Vec Zb, Db;  // Z and D as base elements
  {
    VecAcc z, d;
    for (uint32_t i = 1; i < p; ++i) z.add((i * p + (i - 1)) * lam_stride, ctx->one());
    for (uint32_t i = 0; i + 1 < p; ++i) d.add((i * p + (i + 1)) * lam_stride, M.D.at(i, i + 1));
    Zb = z.take();
    Db = d.take();
  }

  {  // t(Z): (q-q^{-1})E on the diagonal, K on the subdiagonal
    VecAcc want;
    for (uint32_t i = 1; i <= p; ++i)
      for (const auto& [h, c] : Uq.E) want.add(al.tidx(((i - 1) * p + (i - 1)) * lam_stride, h), c * qmq);
    for (uint32_t i = 2; i <= p; ++i)
      for (const auto& [h, c] : Uq.K) want.add(al.tidx(((i - 1) * p + (i - 2)) * lam_stride, h), c);
    rep.add("t(Z)-display", vec_eq(al.t_of(Zb), want.take()));
  }
  {  // t(D) = (q-q^{-1}) [ -FK diagonal, q^{1-i} [i] K superdiagonal ]
    VecAcc want;
    Vec FK = Uq.U.alg.mul(Uq.F, Uq.K);
    for (uint32_t i = 1; i <= p; ++i)
      for (const auto& [h, c] : FK) want.add(al.tidx(((i - 1) * p + (i - 1)) * lam_stride, h), -(c * qmq));
    for (uint32_t i = 1; i < p; ++i)
      for (const auto& [h, c] : Uq.K)
        want.add(al.tidx(((i - 1) * p + i) * lam_stride, h),
                 c * qmq * ctx->qpow(1 - long(i)) * ctx->qnum(long(i)));
    rep.add("t(D)-display", vec_eq(al.t_of(Db), want.take()));
  }
  rep.add("tau(Z)=q^2 t(Z)", vec_eq(al.tau.apply(al.s_of(Zb)), vec_scale(al.t_of(Zb), ctx->qpow(2))));
  rep.add("tau(D)=q^-2 t(D)", vec_eq(al.tau.apply(al.s_of(Db)), vec_scale(al.t_of(Db), ctx->qpow(-2))));
  rep.add("tau(t(D))=s(D)", vec_eq(al.tau.apply(al.t_of(Db)), al.s_of(Db)));
  rep.add("tau(t(Z))=s(Z)", vec_eq(al.tau.apply(al.t_of(Zb)), al.s_of(Zb)));

  {  // t is anti-multiplicative on monomials: t(Z^m D^n) = t(D)^n t(Z)^m
    bool ok = true;
    Vec tZ = al.t_of(Zb), tD = al.t_of(Db);
    Vec Zpow = al.A->A.unit;
    for (uint32_t m = 0; m < p && ok; ++m) {
      Vec cur = Zpow;
      Vec tpow_m = al.total.unit;
      for (uint32_t k = 0; k < m; ++k) tpow_m = al.total.mul(tpow_m, tZ);
      for (uint32_t n = 0; n < p && ok; ++n) {
        Vec tD_n = al.total.unit;
        for (uint32_t k = 0; k < n; ++k) tD_n = al.total.mul(tD_n, tD);
        if (!vec_eq(al.t_of(cur), al.total.mul(tD_n, tpow_m))) ok = false;
        cur = al.A->A.mul(cur, Db);
      }
      Zpow = al.A->A.mul(Zpow, Zb);
    }
    rep.add("t-antimultiplicative-monomials", ok);
  }

  {  // eps(e_11 K) = e_11
    Vec x = total_of(1, 1, Uq.K);
    rep.add("eps(e11K)=e11", vec_eq(al.eps.apply(x), base_e(1, 1)));
  }
  return rep;
}

}  // namespace hopfforge
