#include "doubles.hpp"

#include <atomic>
#include <mutex>

#include "parallel.hpp"

namespace hopfforge {

namespace {

// three-fold Sweedler legs of a basis element, left-nested
struct Legs3 {
  std::vector<std::array<uint32_t, 3>> idx;
  std::vector<Cyc> c;
};

std::vector<Legs3> sweedler3(const HopfAlgebra& H) {
  std::vector<Legs3> out(H.dim());
  for (uint32_t x = 0; x < H.dim(); ++x) {
    std::unordered_map<uint64_t, Cyc> acc;
    for (size_t e = H.comult.begin(x); e < H.comult.end(x); ++e) {
      uint32_t a = H.comult.j[e], b = H.comult.k[e];
      Cyc cab = H.comult.pool->at(H.comult.cid[e]);
      for (size_t f = H.comult.begin(a); f < H.comult.end(a); ++f) {
        uint64_t key = (uint64_t(H.comult.j[f]) * H.dim() + H.comult.k[f]) * H.dim() + b;
        Cyc v = H.comult.pool->at(H.comult.cid[f]) * cab;
        auto [it, fresh] = acc.try_emplace(key, v);
        if (!fresh) it->second += v;
      }
    }
    for (auto& [key, v] : acc) {
      if (v.is_zero()) continue;
      uint32_t l3 = static_cast<uint32_t>(key % H.dim());
      uint32_t l2 = static_cast<uint32_t>((key / H.dim()) % H.dim());
      uint32_t l1 = static_cast<uint32_t>(key / (uint64_t(H.dim()) * H.dim()));
      out[x].idx.push_back({l1, l2, l3});
      out[x].c.push_back(v);
    }
  }
  return out;
}

// parallel CSR assembly: chunks over the first index build local pools, the
// merge re-interns into the shared pool
BilinMap bilin_rows_parallel(uint32_t d1, uint32_t d2, uint32_t dout,
                             std::shared_ptr<CycPool> pool, const CycloCtx* ctx,
                             const std::function<Vec(uint32_t, uint32_t)>& row) {
  unsigned T = max_threads();
  if (T == 1 || uint64_t(d1) * d2 < 65536) return bilin_from_rows(d1, d2, dout, pool, row);

  struct Part {
    std::vector<uint64_t> off;  // local, relative
    std::vector<uint32_t> idx;
    std::vector<uint32_t> cid;
    std::unique_ptr<CycPool> local;
    uint32_t ibegin = 0, iend = 0;
  };
  uint32_t per = (d1 + T - 1) / T;
  std::vector<Part> parts;
  for (uint32_t c = 0; c < T; ++c) {
    Part p;
    p.ibegin = c * per;
    p.iend = std::min(d1, p.ibegin + per);
    if (p.ibegin >= p.iend) break;
    parts.push_back(std::move(p));
  }
  std::vector<std::thread> pool_threads;
  for (auto& p : parts)
    pool_threads.emplace_back([&p, d2, ctx, &row] {
      p.local = std::make_unique<CycPool>(ctx);
      p.off.reserve(uint64_t(p.iend - p.ibegin) * d2 + 1);
      for (uint32_t i = p.ibegin; i < p.iend; ++i)
        for (uint32_t j = 0; j < d2; ++j) {
          p.off.push_back(p.idx.size());
          for (const auto& [o, c] : row(i, j)) {
            p.idx.push_back(o);
            p.cid.push_back(p.local->intern(c));
          }
        }
      p.off.push_back(p.idx.size());
    });
  for (auto& t : pool_threads) t.join();

  BilinMap m;
  m.d1 = d1;
  m.d2 = d2;
  m.dout = dout;
  m.pool = pool;
  m.off.reserve(uint64_t(d1) * d2 + 1);
  for (auto& p : parts) {
    std::vector<uint32_t> remap(p.local->size());
    for (uint32_t id = 0; id < p.local->size(); ++id) remap[id] = pool->intern(p.local->at(id));
    uint64_t base = m.idx.size();
    for (size_t r = 0; r + 1 < p.off.size(); ++r) m.off.push_back(base + p.off[r]);
    for (size_t e = 0; e < p.idx.size(); ++e) {
      m.idx.push_back(p.idx[e]);
      m.cid.push_back(remap[p.cid[e]]);
    }
  }
  m.off.push_back(m.idx.size());
  return m;
}

}  // namespace

Vec DoubleBundle::embed_Bs(const Vec& mu) const {
  VecAcc acc;
  for (const auto& [i, c] : mu)
    for (const auto& [u, cu] : B->alg.unit) acc.add(didx(i, u), c * cu);
  return acc.take();
}

Vec DoubleBundle::embed_B(const Vec& m) const {
  VecAcc acc;
  for (const auto& [i, c] : m)
    for (const auto& [u, cu] : Bs->alg.unit) acc.add(didx(u, i), c * cu);
  return acc.take();
}

Vec2 DoubleBundle::coact(const Vec& A) const {
  Vec2Acc acc;
  uint64_t dH = dim();
  for (const auto& [i, c] : A)
    for (size_t e = hd_coact.begin(i); e < hd_coact.end(i); ++e)
      acc.add(uint64_t(hd_coact.j[e]) * dH + hd_coact.k[e], hd_coact.pool->at(hd_coact.cid[e]) * c);
  return acc.take();
}

Vec DoubleBundle::pseudo_adjoint(const Vec& M, const Vec& A) const {
  const CycloCtx* ctx = B->ctx();
  VecAcc out;
  for (const auto& [Mi, Mc] : M)
    for (size_t e = drinfeld.comult.begin(Mi); e < drinfeld.comult.end(Mi); ++e) {
      Cyc c = drinfeld.comult.pool->at(drinfeld.comult.cid[e]) * Mc;
      uint32_t M1 = drinfeld.comult.j[e], M2 = drinfeld.comult.k[e];
      Vec t = heisenberg.mult.apply(vec_unit(M1, ctx->one()), A);
      Vec sM2 = lu.pseudo_antipode.row(M2);
      Vec t2 = heisenberg.mult.apply(t, sM2);
      for (const auto& [i, v] : t2) out.add(i, v * c);
    }
  return out.take();
}

YDModuleAlgebra DoubleBundle::heisenberg_yd(const std::string& name) const {
  YDModuleAlgebra yd;
  yd.H = &drinfeld;
  yd.name = name;
  yd.A = heisenberg;
  yd.action = heterotic;
  yd.coaction = hd_coact;
  return yd;
}

std::unique_ptr<DoubleBundle> build_double(const HopfAlgebra& B, const HopfAlgebra& Bs,
                                           DenseMat pairing) {
  auto out = std::make_unique<DoubleBundle>();
  DoubleBundle& D = *out;
  D.B = &B;
  D.Bs = &Bs;
  D.pair = build_dual_pair(B, Bs, std::move(pairing));
  const CycloCtx* ctx = B.ctx();
  const uint32_t db = B.dim(), ds = Bs.dim();
  const uint32_t dd = ds * db;
  auto pool = std::make_shared<CycPool>(ctx);

  VecSpace dspace;
  dspace.dim = dd;
  for (uint32_t mu = 0; mu < ds; ++mu)
    for (uint32_t m = 0; m < db; ++m)
      dspace.labels.push_back(Bs.alg.space.labels[mu] + "(x)" + B.alg.space.labels[m]);
  dspace.validate();

  std::vector<Legs3> legsB = sweedler3(B);
  std::vector<Legs3> legsBs = sweedler3(Bs);

  // X[m][nu] = sum over legs of (m' ~> nu <~ S^{-1}(m''')) (x) m''
  struct XTerm {
    uint32_t nu_t, m2;
    Cyc c;
  };
  std::vector<std::vector<XTerm>> X(uint64_t(db) * ds);
  for (uint32_t m = 0; m < db; ++m)
    for (uint32_t nu = 0; nu < ds; ++nu) {
      Vec2Acc acc;
      const Legs3& L = legsB[m];
      for (size_t t = 0; t < L.idx.size(); ++t) {
        auto [m1, m2, m3] = L.idx[t];
        for (size_t e1 = D.pair.lact_B_on_Bs.row_begin(m1, nu);
             e1 < D.pair.lact_B_on_Bs.row_end(m1, nu); ++e1) {
          Cyc c1 = D.pair.lact_B_on_Bs.pool->at(D.pair.lact_B_on_Bs.cid[e1]) * L.c[t];
          uint32_t nu1 = D.pair.lact_B_on_Bs.idx[e1];
          for (size_t g = B.antipode_inv.begin(m3); g < B.antipode_inv.end(m3); ++g) {
            Cyc c2 = B.antipode_inv.pool->at(B.antipode_inv.cid[g]) * c1;
            for (size_t e2 = D.pair.ract_B_on_Bs.row_begin(nu1, B.antipode_inv.idx[g]);
                 e2 < D.pair.ract_B_on_Bs.row_end(nu1, B.antipode_inv.idx[g]); ++e2)
              acc.add(uint64_t(D.pair.ract_B_on_Bs.idx[e2]) * db + m2,
                      D.pair.ract_B_on_Bs.pool->at(D.pair.ract_B_on_Bs.cid[e2]) * c2);
          }
        }
      }
      auto& slot = X[uint64_t(m) * ds + nu];
      for (const auto& [k, c] : acc.take())
        slot.push_back({static_cast<uint32_t>(k / db), static_cast<uint32_t>(k % db), c});
    }

  // D(B) multiplication (mu (x) m)(nu (x) n) = mu (m'~>nu<~S^{-1}(m''')) (x) m'' n
  D.drinfeld.alg.ctx = ctx;
  D.drinfeld.alg.pool = pool;
  D.drinfeld.alg.space = dspace;
  D.drinfeld.alg.mult = bilin_rows_parallel(dd, dd, dd, pool, ctx, [&](uint32_t i, uint32_t j) {
    uint32_t mu = i / db, m = i % db, nu = j / db, n = j % db;
    FlatAcc acc;
    for (const XTerm& xt : X[uint64_t(m) * ds + nu])
      for (size_t e1 = Bs.alg.mult.row_begin(mu, xt.nu_t); e1 < Bs.alg.mult.row_end(mu, xt.nu_t); ++e1) {
        Cyc c1 = Bs.alg.mult.pool->at(Bs.alg.mult.cid[e1]) * xt.c;
        for (size_t e2 = B.alg.mult.row_begin(xt.m2, n); e2 < B.alg.mult.row_end(xt.m2, n); ++e2)
          acc.add(Bs.alg.mult.idx[e1] * db + B.alg.mult.idx[e2],
                  B.alg.mult.pool->at(B.alg.mult.cid[e2]) * c1);
      }
    return acc.finish();
  });
  {
    VecAcc u;
    for (const auto& [us, cs] : Bs.alg.unit)
      for (const auto& [ub, cb] : B.alg.unit) u.add(D.didx(us, ub), cs * cb);
    D.drinfeld.alg.unit = u.take();
  }

  // coalgebra of B^{*cop} (x) B: Delta_D(mu (x) m) = (mu'' (x) m') (x) (mu' (x) m'')
  {
    PairRowsBuilder prb(dd, dd, dd, pool);
    for (uint32_t i = 0; i < dd; ++i) {
      uint32_t mu = i / db, m = i % db;
      std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
      for (size_t e = Bs.comult.begin(mu); e < Bs.comult.end(mu); ++e) {
        Cyc cs = Bs.comult.pool->at(Bs.comult.cid[e]);
        for (size_t f = B.comult.begin(m); f < B.comult.end(m); ++f)
          terms.push_back({{D.didx(Bs.comult.k[e], B.comult.j[f]),
                            D.didx(Bs.comult.j[e], B.comult.k[f])},
                           cs * B.comult.pool->at(B.comult.cid[f])});
      }
      prb.append_row(i, terms);
    }
    D.drinfeld.comult = prb.take();
  }
  D.drinfeld.counit.assign(dd, ctx->zero());
  for (uint32_t i = 0; i < dd; ++i)
    D.drinfeld.counit[i] = Bs.counit[i / db] * B.counit[i % db];

  // S_D(mu (x) m) = (eps (x) S(m)) (S*^{-1}(mu) (x) 1), a product in D(B)
  {
    LinBuilder lb(dd, dd, pool);
    for (uint32_t i = 0; i < dd; ++i) {
      uint32_t mu = i / db, m = i % db;
      Vec lhs = D.embed_B(B.antipode.row(m));
      Vec rhs = D.embed_Bs(Bs.antipode_inv.row(mu));
      lb.append_row(i, D.drinfeld.alg.mult.apply(lhs, rhs));
    }
    D.drinfeld.antipode = lb.take();
    D.drinfeld.antipode_inv = invert_linmap(D.drinfeld.antipode, ctx, pool);
  }

  // H(B*): (alpha # a)(beta # b) = alpha (a' ~> beta) # a'' b
  struct YTerm {
    uint32_t beta_t, a2;
    Cyc c;
  };
  std::vector<std::vector<YTerm>> Y(uint64_t(db) * ds);
  for (uint32_t a = 0; a < db; ++a)
    for (uint32_t beta = 0; beta < ds; ++beta) {
      auto& slot = Y[uint64_t(a) * ds + beta];
      for (size_t e = B.comult.begin(a); e < B.comult.end(a); ++e) {
        Cyc c = B.comult.pool->at(B.comult.cid[e]);
        uint32_t a1 = B.comult.j[e], a2 = B.comult.k[e];
        for (size_t e1 = D.pair.lact_B_on_Bs.row_begin(a1, beta);
             e1 < D.pair.lact_B_on_Bs.row_end(a1, beta); ++e1)
          slot.push_back({D.pair.lact_B_on_Bs.idx[e1], a2,
                          D.pair.lact_B_on_Bs.pool->at(D.pair.lact_B_on_Bs.cid[e1]) * c});
      }
    }
  D.heisenberg.ctx = ctx;
  D.heisenberg.pool = pool;
  D.heisenberg.space.dim = dd;
  for (uint32_t mu = 0; mu < ds; ++mu)
    for (uint32_t m = 0; m < db; ++m)
      D.heisenberg.space.labels.push_back(Bs.alg.space.labels[mu] + "#" + B.alg.space.labels[m]);
  D.heisenberg.space.validate();
  D.heisenberg.mult = bilin_rows_parallel(dd, dd, dd, pool, ctx, [&](uint32_t i, uint32_t j) {
    uint32_t al = i / db, a = i % db, beta = j / db, b = j % db;
    FlatAcc acc;
    for (const YTerm& yt : Y[uint64_t(a) * ds + beta])
      for (size_t e1 = Bs.alg.mult.row_begin(al, yt.beta_t); e1 < Bs.alg.mult.row_end(al, yt.beta_t); ++e1) {
        Cyc c1 = Bs.alg.mult.pool->at(Bs.alg.mult.cid[e1]) * yt.c;
        for (size_t e2 = B.alg.mult.row_begin(yt.a2, b); e2 < B.alg.mult.row_end(yt.a2, b); ++e2)
          acc.add(Bs.alg.mult.idx[e1] * db + B.alg.mult.idx[e2],
                  B.alg.mult.pool->at(B.alg.mult.cid[e2]) * c1);
      }
    return acc.finish();
  });
  D.heisenberg.unit = D.drinfeld.alg.unit;

  // heterotic action (mu (x) m) |> (beta # b)
  //   = mu''' (m' ~> beta) S*^{-1}(mu'') # ((m'' b S(m''')) <~ S*^{-1}(mu'))
  struct ZTerm {
    uint32_t beta_t, m2, m3;
    Cyc c;
  };
  std::vector<std::vector<ZTerm>> ZA(uint64_t(db) * ds);
  for (uint32_t m = 0; m < db; ++m) {
    const Legs3& L = legsB[m];
    for (uint32_t beta = 0; beta < ds; ++beta) {
      auto& slot = ZA[uint64_t(m) * ds + beta];
      for (size_t t = 0; t < L.idx.size(); ++t) {
        auto [m1, m2, m3] = L.idx[t];
        for (size_t e1 = D.pair.lact_B_on_Bs.row_begin(m1, beta);
             e1 < D.pair.lact_B_on_Bs.row_end(m1, beta); ++e1)
          slot.push_back({D.pair.lact_B_on_Bs.idx[e1], m2, m3,
                          D.pair.lact_B_on_Bs.pool->at(D.pair.lact_B_on_Bs.cid[e1]) * L.c[t]});
      }
    }
  }
  D.heterotic = bilin_rows_parallel(dd, dd, dd, pool, ctx, [&](uint32_t i, uint32_t j) {
    uint32_t mu = i / db, m = i % db, beta = j / db, b = j % db;
    const Legs3& Lmu = legsBs[mu];
    FlatAcc acc;
    for (const ZTerm& zt : ZA[uint64_t(m) * ds + beta]) {
      // c-side core m'' b S(m''') first (independent of mu legs)
      FlatAcc core;
      for (size_t e1 = B.alg.mult.row_begin(zt.m2, b); e1 < B.alg.mult.row_end(zt.m2, b); ++e1) {
        Cyc c1 = B.alg.mult.pool->at(B.alg.mult.cid[e1]);
        for (size_t g = B.antipode.begin(zt.m3); g < B.antipode.end(zt.m3); ++g) {
          Cyc c2 = B.antipode.pool->at(B.antipode.cid[g]) * c1;
          for (size_t e2 = B.alg.mult.row_begin(B.alg.mult.idx[e1], B.antipode.idx[g]);
               e2 < B.alg.mult.row_end(B.alg.mult.idx[e1], B.antipode.idx[g]); ++e2)
            core.add(B.alg.mult.idx[e2], B.alg.mult.pool->at(B.alg.mult.cid[e2]) * c2);
        }
      }
      const Vec& core_v = core.finish();
      for (size_t t = 0; t < Lmu.idx.size(); ++t) {
        auto [mu1, mu2, mu3] = Lmu.idx[t];
        Cyc cl = Lmu.c[t] * zt.c;
        // gamma side: mu''' (m'~>beta) S*^{-1}(mu'')
        FlatAcc gamma;
        for (size_t e1 = Bs.alg.mult.row_begin(mu3, zt.beta_t);
             e1 < Bs.alg.mult.row_end(mu3, zt.beta_t); ++e1) {
          Cyc c1 = Bs.alg.mult.pool->at(Bs.alg.mult.cid[e1]);
          for (size_t g = Bs.antipode_inv.begin(mu2); g < Bs.antipode_inv.end(mu2); ++g) {
            Cyc c2 = Bs.antipode_inv.pool->at(Bs.antipode_inv.cid[g]) * c1;
            for (size_t e2 = Bs.alg.mult.row_begin(Bs.alg.mult.idx[e1], Bs.antipode_inv.idx[g]);
                 e2 < Bs.alg.mult.row_end(Bs.alg.mult.idx[e1], Bs.antipode_inv.idx[g]); ++e2)
              gamma.add(Bs.alg.mult.idx[e2], Bs.alg.mult.pool->at(Bs.alg.mult.cid[e2]) * c2);
          }
        }
        // b-side: core <~ S*^{-1}(mu')
        FlatAcc bside;
        for (const auto& [x2, cx] : core_v)
          for (size_t g = Bs.antipode_inv.begin(mu1); g < Bs.antipode_inv.end(mu1); ++g) {
            Cyc c3 = Bs.antipode_inv.pool->at(Bs.antipode_inv.cid[g]) * cx;
            for (size_t e3 = D.pair.ract_Bs_on_B.row_begin(x2, Bs.antipode_inv.idx[g]);
                 e3 < D.pair.ract_Bs_on_B.row_end(x2, Bs.antipode_inv.idx[g]); ++e3)
              bside.add(D.pair.ract_Bs_on_B.idx[e3],
                        D.pair.ract_Bs_on_B.pool->at(D.pair.ract_Bs_on_B.cid[e3]) * c3);
          }
        for (const auto& [gi, gc] : gamma.finish())
          for (const auto& [bi, bc] : bside.finish()) acc.add(gi * db + bi, gc * bc * cl);
      }
    }
    return acc.finish();
  });

  // coaction (3): beta # b -> (beta'' (x) b') (x) (beta' # b'')
  {
    PairRowsBuilder prb(dd, dd, dd, pool);
    for (uint32_t i = 0; i < dd; ++i) {
      uint32_t beta = i / db, b = i % db;
      std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
      for (size_t e = Bs.comult.begin(beta); e < Bs.comult.end(beta); ++e) {
        Cyc cs = Bs.comult.pool->at(Bs.comult.cid[e]);
        for (size_t f = B.comult.begin(b); f < B.comult.end(b); ++f)
          terms.push_back({{D.didx(Bs.comult.k[e], B.comult.j[f]),
                            D.didx(Bs.comult.j[e], B.comult.k[f])},
                           cs * B.comult.pool->at(B.comult.cid[f])});
      }
      prb.append_row(i, terms);
    }
    D.hd_coact = prb.take();
  }

  D.lu = lu_cocycle(D);
  return out;
}

// ------------------------------------------------------------------ cocycles

Cyc Cocycle::eval(uint32_t i, uint32_t j) const {
  auto it = eta.find(uint64_t(i) * H->dim() + j);
  return it == eta.end() ? H->ctx()->zero() : it->second;
}

Cyc Cocycle::eval_vv(const Vec& a, const Vec& b) const {
  Cyc out = H->ctx()->zero();
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) {
      auto it = eta.find(uint64_t(i) * H->dim() + j);
      if (it != eta.end()) out += it->second * ci * cj;
    }
  return out;
}

namespace {
Cocycle cocycle_from_eta(const HopfAlgebra& H, std::unordered_map<uint64_t, Cyc> eta) {
  Cocycle c;
  c.H = &H;
  c.eta = std::move(eta);
  // s(h) = eta(h', h'') S(h''')
  std::vector<Legs3> legs = sweedler3(H);
  LinBuilder lb(H.dim(), H.dim(), H.alg.pool);
  for (uint32_t h = 0; h < H.dim(); ++h) {
    VecAcc acc;
    const Legs3& L = legs[h];
    for (size_t t = 0; t < L.idx.size(); ++t) {
      auto [l1, l2, l3] = L.idx[t];
      auto it = c.eta.find(uint64_t(l1) * H.dim() + l2);
      if (it == c.eta.end()) continue;
      Cyc f = it->second * L.c[t];
      for (size_t g = H.antipode.begin(l3); g < H.antipode.end(l3); ++g)
        acc.add(H.antipode.idx[g], H.antipode.pool->at(H.antipode.cid[g]) * f);
    }
    lb.append_row(h, acc.take());
  }
  c.pseudo_antipode = lb.take();
  return c;
}
}  // namespace

Cocycle lu_cocycle(const DoubleBundle& D) {
  // eta(mu (x) m, nu (x) n) = <mu, 1> <nu, m> <eps, n>
  const HopfAlgebra& Dh = D.drinfeld;
  const uint32_t db = D.dimB(), ds = D.dimBs(), dd = D.dim();
  std::unordered_map<uint64_t, Cyc> eta;
  for (uint32_t mu = 0; mu < ds; ++mu) {
    if (D.Bs->counit[mu].is_zero()) continue;
    for (uint32_t m = 0; m < db; ++m)
      for (uint32_t nu = 0; nu < ds; ++nu) {
        if (D.pair.pairing.at(nu, m).is_zero()) continue;
        for (uint32_t n = 0; n < db; ++n) {
          if (D.B->counit[n].is_zero()) continue;
          Cyc v = D.Bs->counit[mu] * D.pair.pairing.at(nu, m) * D.B->counit[n];
          if (!v.is_zero()) eta[uint64_t(D.didx(mu, m)) * dd + D.didx(nu, n)] = v;
        }
      }
  }
  return cocycle_from_eta(Dh, std::move(eta));
}

Cocycle trivial_cocycle(const HopfAlgebra& H) {
  std::unordered_map<uint64_t, Cyc> eta;
  for (uint32_t i = 0; i < H.dim(); ++i) {
    if (H.counit[i].is_zero()) continue;
    for (uint32_t j = 0; j < H.dim(); ++j) {
      if (H.counit[j].is_zero()) continue;
      eta[uint64_t(i) * H.dim() + j] = H.counit[i] * H.counit[j];
    }
  }
  return cocycle_from_eta(H, std::move(eta));
}

BilinMap star_product(const HopfAlgebra& H, const Cocycle& eta) {
  const uint32_t d = H.dim();
  return bilin_from_rows(d, d, d, H.alg.pool, [&](uint32_t g, uint32_t h) {
    FlatAcc acc;
    for (size_t e = H.comult.begin(g); e < H.comult.end(g); ++e) {
      Cyc cg = H.comult.pool->at(H.comult.cid[e]);
      for (size_t f = H.comult.begin(h); f < H.comult.end(h); ++f) {
        Cyc v = eta.eval(H.comult.k[e], H.comult.k[f]);
        if (v.is_zero()) continue;
        Cyc c = cg * H.comult.pool->at(H.comult.cid[f]) * v;
        for (size_t e2 = H.alg.mult.row_begin(H.comult.j[e], H.comult.j[f]);
             e2 < H.alg.mult.row_end(H.comult.j[e], H.comult.j[f]); ++e2)
          acc.add(H.alg.mult.idx[e2], H.alg.mult.pool->at(H.alg.mult.cid[e2]) * c);
      }
    }
    return acc.finish();
  });
}

Report check_cocycle_conditions(const HopfAlgebra& H, const Cocycle& eta,
                                const BilinMap& star, const YDPolicy& policy) {
  Report rep;
  rep.suite = "cocycle-conditions";
  rep.seed = policy.seed;
  const CycloCtx* ctx = H.ctx();
  const uint32_t d = H.dim();
  const LinMap& s = eta.pseudo_antipode;

  {  // normality
    bool pass = true;
    std::string w;
    for (uint32_t h = 0; h < d && pass; ++h) {
      Vec eh = vec_unit(h, ctx->one());
      if (!(eta.eval_vv(H.alg.unit, eh) == H.counit[h]) ||
          !(eta.eval_vv(eh, H.alg.unit) == H.counit[h])) {
        pass = false;
        w = "(h)=(" + std::to_string(h) + ")";
      }
    }
    rep.add("eta-normal", pass, w);
  }

  // eta rows by first index, comult rows transposed by second leg
  std::vector<Vec> eta_rows(d);
  for (const auto& [key, v] : eta.eta)
    eta_rows[static_cast<uint32_t>(key / d)].emplace_back(static_cast<uint32_t>(key % d), v);
  for (auto& r : eta_rows)
    std::sort(r.begin(), r.end(), [](const Ent& a, const Ent& b) { return a.first < b.first; });
  struct T2Row {
    uint32_t h, h1;
    Cyc c;
  };
  std::vector<std::vector<T2Row>> t2(d);
  for (uint32_t h = 0; h < d; ++h)
    for (size_t e = H.comult.begin(h); e < H.comult.end(h); ++e)
      t2[H.comult.k[e]].push_back({h, H.comult.j[e], H.comult.pool->at(H.comult.cid[e])});

  {  // 2-cocycle identity eta(f'g',h) eta(f'',g'') = eta(f,g'h') eta(g'',h'')
    bool exhaustive = uint64_t(d) * d <= policy.exhaustive_pair_limit;
    uint64_t n = exhaustive ? uint64_t(d) * d : policy.sampled_pairs;
    std::atomic<uint64_t> fails{0};
    std::mutex wit_mu;
    std::string wit;
    parallel_chunks(n, [&](unsigned chunk, uint64_t bg, uint64_t en) {
      Rng rng(policy.seed * 131 + chunk);
      for (uint64_t t = bg; t < en; ++t) {
        uint32_t f = exhaustive ? uint32_t(t / d) : uint32_t(rng.below(d));
        uint32_t g = exhaustive ? uint32_t(t % d) : uint32_t(rng.below(d));
        // L(f,g,-): sum_t W_t eta_rows[t] with W = sum legs eta(f2,g2) f1g1
        VecAcc L, R;
        for (size_t e = H.comult.begin(f); e < H.comult.end(f); ++e) {
          Cyc cf = H.comult.pool->at(H.comult.cid[e]);
          for (size_t e2 = H.comult.begin(g); e2 < H.comult.end(g); ++e2) {
            Cyc v = eta.eval(H.comult.k[e], H.comult.k[e2]);
            if (v.is_zero()) continue;
            Cyc c = cf * H.comult.pool->at(H.comult.cid[e2]) * v;
            for (size_t e3 = H.alg.mult.row_begin(H.comult.j[e], H.comult.j[e2]);
                 e3 < H.alg.mult.row_end(H.comult.j[e], H.comult.j[e2]); ++e3) {
              Cyc c2 = H.alg.mult.pool->at(H.alg.mult.cid[e3]) * c;
              for (const auto& [hh, vv] : eta_rows[H.alg.mult.idx[e3]]) L.add(hh, vv * c2);
            }
          }
        }
        // R(f,g,h) = sum g-legs, h2-partners eta(f, g1 h1) eta(g2, h2)
        for (size_t e2 = H.comult.begin(g); e2 < H.comult.end(g); ++e2) {
          Cyc cg = H.comult.pool->at(H.comult.cid[e2]);
          uint32_t g1 = H.comult.j[e2], g2 = H.comult.k[e2];
          for (const auto& [h2, veta] : eta_rows[g2]) {
            Cyc c = cg * veta;
            for (const T2Row& tr : t2[h2]) {
              Cyc c2 = c * tr.c;
              for (size_t e3 = H.alg.mult.row_begin(g1, tr.h1);
                   e3 < H.alg.mult.row_end(g1, tr.h1); ++e3) {
                Cyc v = eta.eval(f, H.alg.mult.idx[e3]);
                if (!v.is_zero())
                  R.add(tr.h, v * H.alg.mult.pool->at(H.alg.mult.cid[e3]) * c2);
              }
            }
          }
        }
        if (!vec_eq(L.take(), R.take())) {
          fails++;
          std::lock_guard<std::mutex> gd(wit_mu);
          std::string cand = "(f,g)=(" + std::to_string(f) + "," + std::to_string(g) + ")";
          if (wit.empty() || cand < wit) wit = cand;
        }
      }
    });
    rep.add(exhaustive ? "cocycle-identity-exhaustive" : "cocycle-identity-sampled", fails == 0,
            wit);
  }

  {  // etaX2 / etaX3: eta(s(h'), h'') = eps(h) = eta(h', s(h''))
    bool p2 = true, p3 = true;
    std::string w2, w3;
    for (uint32_t h = 0; h < d; ++h) {
      Cyc lhs2 = ctx->zero(), lhs3 = ctx->zero();
      for (size_t e = H.comult.begin(h); e < H.comult.end(h); ++e) {
        Cyc c = H.comult.pool->at(H.comult.cid[e]);
        uint32_t h1 = H.comult.j[e], h2 = H.comult.k[e];
        lhs2 += eta.eval_vv(s.row(h1), vec_unit(h2, ctx->one())) * c;
        lhs3 += eta.eval_vv(vec_unit(h1, ctx->one()), s.row(h2)) * c;
      }
      if (p2 && !(lhs2 == H.counit[h])) {
        p2 = false;
        w2 = "(h)=(" + std::to_string(h) + ")";
      }
      if (p3 && !(lhs3 == H.counit[h])) {
        p3 = false;
        w3 = "(h)=(" + std::to_string(h) + ")";
      }
    }
    rep.add("eta-s-left", p2, w2);
    rep.add("eta-s-right", p3, w3);
  }

  {  // etaX5: eta(g',h') eta(s(h''), s(g'')) = eta(g'h', g''h'')
    bool exhaustive = uint64_t(d) * d <= policy.exhaustive_pair_limit;
    uint64_t n = exhaustive ? uint64_t(d) * d : policy.sampled_pairs;
    std::atomic<uint64_t> fails{0};
    std::mutex wit_mu;
    std::string wit;
    parallel_chunks(n, [&](unsigned chunk, uint64_t bg, uint64_t en) {
      Rng rng(policy.seed * 137 + chunk);
      for (uint64_t t = bg; t < en; ++t) {
        uint32_t g = exhaustive ? uint32_t(t / d) : uint32_t(rng.below(d));
        uint32_t h = exhaustive ? uint32_t(t % d) : uint32_t(rng.below(d));
        Cyc lhs = ctx->zero(), rhs = ctx->zero();
        for (size_t e = H.comult.begin(g); e < H.comult.end(g); ++e) {
          Cyc cg = H.comult.pool->at(H.comult.cid[e]);
          uint32_t g1 = H.comult.j[e], g2 = H.comult.k[e];
          for (size_t f = H.comult.begin(h); f < H.comult.end(h); ++f) {
            Cyc c = cg * H.comult.pool->at(H.comult.cid[f]);
            uint32_t h1 = H.comult.j[f], h2 = H.comult.k[f];
            Cyc e1 = eta.eval(g1, h1);
            if (!e1.is_zero()) lhs += e1 * eta.eval_vv(s.row(h2), s.row(g2)) * c;
            // rhs: eta(g1 h1, g2 h2)
            FlatAcc m1a, m2a;
            m1a.clear();
            m2a.clear();
            for (size_t x = H.alg.mult.row_begin(g1, h1); x < H.alg.mult.row_end(g1, h1); ++x)
              m1a.add(H.alg.mult.idx[x], H.alg.mult.pool->at(H.alg.mult.cid[x]));
            for (size_t x = H.alg.mult.row_begin(g2, h2); x < H.alg.mult.row_end(g2, h2); ++x)
              m2a.add(H.alg.mult.idx[x], H.alg.mult.pool->at(H.alg.mult.cid[x]));
            rhs += eta.eval_vv(m1a.finish(), m2a.finish()) * c;
          }
        }
        if (!(lhs == rhs)) {
          fails++;
          std::lock_guard<std::mutex> gd(wit_mu);
          std::string cand = "(g,h)=(" + std::to_string(g) + "," + std::to_string(h) + ")";
          if (wit.empty() || cand < wit) wit = cand;
        }
      }
    });
    rep.add(exhaustive ? "eta-s-swap-exhaustive" : "eta-s-swap-sampled", fails == 0, wit);
  }

  {  // star forms: s(h') * h'' = eps(h) 1 = h' * s(h'')
    bool pl = true, pr = true;
    std::string wl, wr;
    for (uint32_t h = 0; h < d; ++h) {
      VecAcc accl, accr;
      for (size_t e = H.comult.begin(h); e < H.comult.end(h); ++e) {
        Cyc c = H.comult.pool->at(H.comult.cid[e]);
        uint32_t h1 = H.comult.j[e], h2 = H.comult.k[e];
        for (const auto& [i, v] : star.apply(s.row(h1), vec_unit(h2, ctx->one())))
          accl.add(i, v * c);
        for (const auto& [i, v] : star.apply(vec_unit(h1, ctx->one()), s.row(h2)))
          accr.add(i, v * c);
      }
      Vec want = vec_scale(H.alg.unit, H.counit[h]);
      if (pl && !vec_eq(accl.take(), want)) {
        pl = false;
        wl = "(h)=(" + std::to_string(h) + ")";
      }
      if (pr && !vec_eq(accr.take(), want)) {
        pr = false;
        wr = "(h)=(" + std::to_string(h) + ")";
      }
    }
    rep.add("s-star-left", pl, wl);
    rep.add("s-star-right", pr, wr);
  }

  {  // eta(g',h') s(h'') * s(g'') = s(gh)
    bool exhaustive = uint64_t(d) * d <= policy.exhaustive_pair_limit;
    uint64_t n = exhaustive ? uint64_t(d) * d : policy.sampled_pairs;
    bool pass = true;
    std::string w;
    Rng rng(policy.seed * 139 + 11);
    for (uint64_t t = 0; t < n && pass; ++t) {
      uint32_t g = exhaustive ? uint32_t(t / d) : uint32_t(rng.below(d));
      uint32_t h = exhaustive ? uint32_t(t % d) : uint32_t(rng.below(d));
      VecAcc lhs;
      for (size_t e = H.comult.begin(g); e < H.comult.end(g); ++e) {
        Cyc cg = H.comult.pool->at(H.comult.cid[e]);
        uint32_t g1 = H.comult.j[e], g2 = H.comult.k[e];
        for (size_t f = H.comult.begin(h); f < H.comult.end(h); ++f) {
          Cyc c = cg * H.comult.pool->at(H.comult.cid[f]);
          uint32_t h1 = H.comult.j[f], h2 = H.comult.k[f];
          Cyc e1 = eta.eval(g1, h1);
          if (e1.is_zero()) continue;
          for (const auto& [i, v] : star.apply(s.row(h2), s.row(g2))) lhs.add(i, v * e1 * c);
        }
      }
      VecAcc rhs;
      for (size_t x = H.alg.mult.row_begin(g, h); x < H.alg.mult.row_end(g, h); ++x)
        s.apply_into(rhs, H.alg.mult.idx[x], H.alg.mult.pool->at(H.alg.mult.cid[x]));
      if (!vec_eq(lhs.take(), rhs.take())) {
        pass = false;
        w = "(g,h)=(" + std::to_string(g) + "," + std::to_string(h) + ")";
      }
    }
    rep.add(exhaustive ? "s-antihom-exhaustive" : "s-antihom-sampled", pass, w);
  }

  {  // Delta(s(h)) = S(h'') (x) s(h')
    bool pass = true;
    std::string w;
    for (uint32_t h = 0; h < d && pass; ++h) {
      Vec2 lhs = H.delta(s.row(h));
      Vec2Acc rhs;
      for (size_t e = H.comult.begin(h); e < H.comult.end(h); ++e) {
        Cyc c = H.comult.pool->at(H.comult.cid[e]);
        uint32_t h1 = H.comult.j[e], h2 = H.comult.k[e];
        for (const auto& [i, ci] : H.antipode.row(h2))
          for (const auto& [j, cj] : s.row(h1)) rhs.add(uint64_t(i) * d + j, ci * cj * c);
      }
      if (!vec2_eq(lhs, rhs.take())) {
        pass = false;
        w = "(h)=(" + std::to_string(h) + ")";
      }
    }
    rep.add("delta-s", pass, w);
  }
  return rep;
}

TwistResult twist_module_algebra(const HopfAlgebra& H, const Cocycle& eta,
                                 const YDPolicy& policy) {
  TwistResult out;
  BilinMap star = star_product(H, eta);
  out.checks = check_cocycle_conditions(H, eta, star, policy);
  out.checks.suite = "cocycle-twist";
  if (!out.checks.all_pass()) return out;

  const CycloCtx* ctx = H.ctx();
  const uint32_t d = H.dim();
  YDModuleAlgebra yd;
  yd.H = &H;
  yd.name = "H_star";
  yd.A.ctx = ctx;
  yd.A.pool = H.alg.pool;
  yd.A.space = H.alg.space;
  yd.A.mult = star;
  yd.A.unit = H.alg.unit;
  const LinMap& s = eta.pseudo_antipode;
  yd.action = bilin_from_rows(d, d, d, H.alg.pool, [&](uint32_t g, uint32_t h) {
    VecAcc acc;
    for (size_t e = H.comult.begin(g); e < H.comult.end(g); ++e) {
      Cyc c = H.comult.pool->at(H.comult.cid[e]);
      Vec t = star.apply(vec_unit(H.comult.j[e], ctx->one()), vec_unit(h, ctx->one()));
      for (const auto& [i, v] : star.apply(t, s.row(H.comult.k[e]))) acc.add(i, v * c);
    }
    return acc.take();
  });
  {
    PairRowsBuilder prb(d, d, d, H.alg.pool);
    for (uint32_t i = 0; i < d; ++i) {
      std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
      for (size_t e = H.comult.begin(i); e < H.comult.end(i); ++e)
        terms.push_back({{H.comult.j[e], H.comult.k[e]}, H.comult.pool->at(H.comult.cid[e])});
      prb.append_row(i, terms);
    }
    yd.coaction = prb.take();
  }
  Report cert = certify(yd, policy);
  out.checks.merge(cert, "twist-yd/");
  Report bc = check_braided_commutativity(yd, policy);
  out.checks.merge(bc, "twist-");
  out.yd = std::move(yd);
  return out;
}

}  // namespace hopfforge
