#include "hopf.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>

#include "json.hpp"
#include "parallel.hpp"

namespace hopfforge {

Vec2 Vec2Acc::take() {
  Vec2 out;
  out.reserve(acc_.size());
  for (auto& [k, c] : acc_)
    if (!c.is_zero()) out.emplace_back(k, std::move(c));
  std::sort(out.begin(), out.end(),
            [](const Ent2& a, const Ent2& b) { return a.first < b.first; });
  return out;
}

Vec2 vec2_mul(const BilinMap& m1, const BilinMap& m2, const Vec2& a, const Vec2& b) {
  Vec2Acc acc;
  uint64_t d2 = m2.dout;
  for (const auto& [ka, ca] : a) {
    uint32_t a1 = static_cast<uint32_t>(ka / m2.d1), a2 = static_cast<uint32_t>(ka % m2.d1);
    for (const auto& [kb, cb] : b) {
      uint32_t b1 = static_cast<uint32_t>(kb / m2.d1), b2 = static_cast<uint32_t>(kb % m2.d1);
      Cyc f = ca * cb;
      for (size_t e1 = m1.row_begin(a1, b1); e1 < m1.row_end(a1, b1); ++e1) {
        Cyc f1 = f * m1.pool->at(m1.cid[e1]);
        for (size_t e2 = m2.row_begin(a2, b2); e2 < m2.row_end(a2, b2); ++e2)
          acc.add(uint64_t(m1.idx[e1]) * d2 + m2.idx[e2], f1 * m2.pool->at(m2.cid[e2]));
      }
    }
  }
  return acc.take();
}

bool vec2_eq(const Vec2& a, const Vec2& b) { return a == b; }

Vec2 vec2_scale(const Vec2& a, const Cyc& c) {
  Vec2 out;
  out.reserve(a.size());
  for (const auto& [k, x] : a) {
    Cyc v = x * c;
    if (!v.is_zero()) out.emplace_back(k, v);
  }
  return out;
}

Vec Algebra::pow(const Vec& a, uint32_t e) const {
  Vec r = unit;
  for (uint32_t i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

Cyc HopfAlgebra::eps(const Vec& v) const {
  Cyc out = ctx()->zero();
  for (const auto& [i, c] : v) out += counit[i] * c;
  return out;
}

Vec2 HopfAlgebra::delta_basis(uint32_t i) const {
  Vec2 out;
  for (size_t e = comult.begin(i); e < comult.end(i); ++e)
    out.emplace_back(uint64_t(comult.j[e]) * dim() + comult.k[e], comult.pool->at(comult.cid[e]));
  std::sort(out.begin(), out.end(),
            [](const Ent2& a, const Ent2& b) { return a.first < b.first; });
  return out;
}

Vec2 HopfAlgebra::delta(const Vec& v) const {
  Vec2Acc acc;
  for (const auto& [i, c] : v)
    for (size_t e = comult.begin(i); e < comult.end(i); ++e)
      acc.add(uint64_t(comult.j[e]) * dim() + comult.k[e], comult.pool->at(comult.cid[e]) * c);
  return acc.take();
}

// --------------------------------------------------------------- construction

Algebra materialize(OrderedAlgebra& oa, std::shared_ptr<CycPool> pool) {
  Algebra A;
  A.ctx = oa.ctx();
  A.pool = pool ? std::move(pool) : std::make_shared<CycPool>(oa.ctx());
  A.space.dim = oa.dim();
  A.space.labels = oa.labels();
  A.space.validate();
  BilinBuilder bb(oa.dim(), oa.dim(), oa.dim(), A.pool);
  for (uint32_t i = 0; i < oa.dim(); ++i)
    for (uint32_t j = 0; j < oa.dim(); ++j) bb.append_row(i, j, oa.mul_mono(i, j));
  A.mult = bb.take();
  A.unit = oa.one();
  return A;
}

HopfAlgebra hopf_from_presentation(OrderedAlgebra& oa, std::shared_ptr<CycPool> pool,
                                   const std::vector<GenHopfData>& gens) {
  if (gens.size() != oa.ngens())
    throw std::invalid_argument("generator structure data count mismatch");
  HopfAlgebra H;
  H.alg = materialize(oa, std::move(pool));
  const CycloCtx* ctx = H.alg.ctx;
  uint32_t d = H.alg.dim();

  // Delta multiplicative, eps multiplicative, S anti-multiplicative
  PairRowsBuilder prb(d, d, d, H.alg.pool);
  LinBuilder sb(d, d, H.alg.pool);
  H.counit.assign(d, ctx->zero());
  for (uint32_t m = 0; m < d; ++m) {
    std::vector<uint32_t> exps = oa.exponents(m);
    Vec2 dl{{0, ctx->one()}};  // 1 (x) 1 at key 0*d+0
    Cyc ep = ctx->one();
    Vec sv = oa.one();
    for (uint32_t g = 0; g < oa.ngens(); ++g)
      for (uint32_t rep = 0; rep < exps[g]; ++rep) {
        dl = vec2_mul(H.alg.mult, H.alg.mult, dl, gens[g].delta);
        ep = ep * gens[g].eps;
      }
    for (uint32_t g = oa.ngens(); g-- > 0;)
      for (uint32_t rep = 0; rep < exps[g]; ++rep) sv = H.alg.mul(sv, gens[g].antipode);
    std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
    for (const auto& [k, c] : dl)
      terms.push_back({{static_cast<uint32_t>(k / d), static_cast<uint32_t>(k % d)}, c});
    prb.append_row(m, terms);
    sb.append_row(m, sv);
    H.counit[m] = ep;
  }
  H.comult = prb.take();
  H.antipode = sb.take();
  H.antipode_inv = invert_linmap(H.antipode, ctx, H.alg.pool);
  return H;
}

LinMap invert_linmap(const LinMap& m, const CycloCtx* ctx, std::shared_ptr<CycPool> pool) {
  DenseMat mat(m.dout, m.din, ctx);
  for (uint32_t i = 0; i < m.din; ++i)
    for (size_t e = m.begin(i); e < m.end(i); ++e)
      mat.at(m.idx[e], i) = m.pool->at(m.cid[e]);
  auto inv = dense_inverse(mat, ctx);
  if (!inv) throw std::runtime_error("linear map not invertible");
  LinBuilder lb(m.dout, m.din, std::move(pool));
  for (uint32_t i = 0; i < m.dout; ++i) {
    VecAcc acc;
    for (uint32_t r = 0; r < m.din; ++r)
      if (!inv->at(r, i).is_zero()) acc.add(r, inv->at(r, i));
    lb.append_row(i, acc.take());
  }
  return lb.take();
}

HopfAlgebra dual_hopf(const HopfAlgebra& B) {
  const CycloCtx* ctx = B.ctx();
  uint32_t d = B.dim();
  HopfAlgebra D;
  D.alg.ctx = ctx;
  D.alg.pool = std::make_shared<CycPool>(ctx);
  D.alg.space.dim = d;
  for (uint32_t i = 0; i < d; ++i)
    D.alg.space.labels.push_back("(" + B.alg.space.labels[i] + ")*");

  // mult of B* = transpose of comult of B
  std::map<uint64_t, Vec> mrows;
  for (uint32_t x = 0; x < d; ++x)
    for (size_t e = B.comult.begin(x); e < B.comult.end(x); ++e)
      mrows[uint64_t(B.comult.j[e]) * d + B.comult.k[e]].emplace_back(
          x, B.comult.pool->at(B.comult.cid[e]));
  BilinBuilder bb(d, d, d, D.alg.pool);
  for (auto& [key, row] : mrows) {
    std::sort(row.begin(), row.end(),
              [](const Ent& a, const Ent& b) { return a.first < b.first; });
    bb.append_row(static_cast<uint32_t>(key / d), static_cast<uint32_t>(key % d), row);
  }
  D.alg.mult = bb.take();
  // unit of B* = counit of B
  VecAcc u;
  for (uint32_t i = 0; i < d; ++i) u.add(i, B.counit[i]);
  D.alg.unit = u.take();

  // comult of B* = transpose of mult of B
  PairRowsBuilder prb(d, d, d, D.alg.pool);
  std::vector<std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>>> crows(d);
  for (uint32_t j = 0; j < d; ++j)
    for (uint32_t k = 0; k < d; ++k)
      for (size_t e = B.alg.mult.row_begin(j, k); e < B.alg.mult.row_end(j, k); ++e)
        crows[B.alg.mult.idx[e]].push_back({{j, k}, B.alg.mult.pool->at(B.alg.mult.cid[e])});
  for (uint32_t i = 0; i < d; ++i) prb.append_row(i, crows[i]);
  D.comult = prb.take();

  // counit of B* = evaluation at 1_B
  D.counit.assign(d, ctx->zero());
  for (const auto& [i, c] : B.alg.unit) D.counit[i] = c;

  // antipode of B* = transpose of S (and S^{-1} likewise)
  auto transpose = [&](const LinMap& m) {
    std::vector<Vec> rows(d);
    for (uint32_t i = 0; i < d; ++i)
      for (size_t e = m.begin(i); e < m.end(i); ++e)
        rows[m.idx[e]].emplace_back(i, m.pool->at(m.cid[e]));
    LinBuilder lb(d, d, D.alg.pool);
    for (uint32_t i = 0; i < d; ++i) {
      std::sort(rows[i].begin(), rows[i].end(),
                [](const Ent& a, const Ent& b) { return a.first < b.first; });
      lb.append_row(i, rows[i]);
    }
    return lb.take();
  };
  D.antipode = transpose(B.antipode);
  D.antipode_inv = transpose(B.antipode_inv);
  return D;
}

HopfAlgebra op_cop(const HopfAlgebra& H, OpCop which) {
  const uint32_t d = H.dim();
  HopfAlgebra R;
  R.alg.ctx = H.ctx();
  R.alg.pool = H.alg.pool;
  R.alg.space = H.alg.space;
  R.alg.unit = H.alg.unit;
  R.counit = H.counit;
  if (which == OpCop::Op) {
    BilinBuilder bb(d, d, d, R.alg.pool);
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t j = 0; j < d; ++j) bb.append_row(i, j, H.alg.mult.row(j, i));
    R.alg.mult = bb.take();
    R.comult = H.comult;
  } else {
    R.alg.mult = H.alg.mult;
    PairRowsBuilder prb(d, d, d, R.alg.pool);
    for (uint32_t i = 0; i < d; ++i) {
      std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
      for (size_t e = H.comult.begin(i); e < H.comult.end(i); ++e)
        terms.push_back({{H.comult.k[e], H.comult.j[e]}, H.comult.pool->at(H.comult.cid[e])});
      prb.append_row(i, terms);
    }
    R.comult = prb.take();
  }
  // antipode of the op/cop structure is S^{-1}
  R.antipode = H.antipode_inv;
  R.antipode_inv = H.antipode;
  return R;
}

HopfAlgebra change_basis(const HopfAlgebra& H, const DenseMat& C, const DenseMat& Cinv,
                         VecSpace new_space) {
  const CycloCtx* ctx = H.ctx();
  uint32_t d = H.dim();
  new_space.validate();
  if (new_space.dim != d) throw std::invalid_argument("change_basis: dimension mismatch");
  HopfAlgebra R;
  R.alg.ctx = ctx;
  R.alg.pool = std::make_shared<CycPool>(ctx);
  R.alg.space = std::move(new_space);

  auto col = [&](const DenseMat& M, uint32_t c) {
    VecAcc acc;
    for (uint32_t r = 0; r < d; ++r)
      if (!M.at(r, c).is_zero()) acc.add(r, M.at(r, c));
    return acc.take();
  };
  std::vector<Vec> newb(d), old_in_new(d);
  for (uint32_t i = 0; i < d; ++i) {
    newb[i] = col(C, i);
    old_in_new[i] = col(Cinv, i);
  }
  auto to_new = [&](const Vec& v) {
    VecAcc acc;
    for (const auto& [i, c] : v) acc.add_scaled(old_in_new[i], c);
    return acc.take();
  };

  BilinBuilder bb(d, d, d, R.alg.pool);
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j)
      bb.append_row(i, j, to_new(H.alg.mul(newb[i], newb[j])));
  R.alg.mult = bb.take();
  R.alg.unit = to_new(H.alg.unit);

  PairRowsBuilder prb(d, d, d, R.alg.pool);
  for (uint32_t i = 0; i < d; ++i) {
    Vec2 dl = H.delta(newb[i]);
    Vec2Acc acc;
    for (const auto& [key, c] : dl) {
      const Vec& a = old_in_new[static_cast<uint32_t>(key / d)];
      const Vec& b = old_in_new[static_cast<uint32_t>(key % d)];
      for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) acc.add(uint64_t(x) * d + y, c * cx * cy);
    }
    std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
    for (const auto& [k, c] : acc.take())
      terms.push_back({{static_cast<uint32_t>(k / d), static_cast<uint32_t>(k % d)}, c});
    prb.append_row(i, terms);
  }
  R.comult = prb.take();

  R.counit.assign(d, ctx->zero());
  for (uint32_t i = 0; i < d; ++i) R.counit[i] = H.eps(newb[i]);

  LinBuilder sb(d, d, R.alg.pool), sib(d, d, R.alg.pool);
  for (uint32_t i = 0; i < d; ++i) sb.append_row(i, to_new(H.s(newb[i])));
  for (uint32_t i = 0; i < d; ++i) sib.append_row(i, to_new(H.s_inv(newb[i])));
  R.antipode = sb.take();
  R.antipode_inv = sib.take();
  return R;
}

// ----------------------------------------------------------------- dual pair

DualPair build_dual_pair(const HopfAlgebra& B, const HopfAlgebra& Bs, DenseMat pairing) {
  DualPair P;
  P.B = &B;
  P.Bs = &Bs;
  P.pairing = std::move(pairing);
  const uint32_t db = B.dim(), ds = Bs.dim();
  if (P.pairing.rows != ds || P.pairing.cols != db)
    throw std::invalid_argument("pairing matrix shape mismatch");
  auto pool = Bs.alg.pool;

  // b ~> beta = <beta'', b> beta'
  P.lact_B_on_Bs = bilin_from_rows(db, ds, ds, pool, [&](uint32_t b, uint32_t beta) {
    FlatAcc acc;
    for (size_t e = Bs.comult.begin(beta); e < Bs.comult.end(beta); ++e)
      acc.add(Bs.comult.j[e],
              Bs.comult.pool->at(Bs.comult.cid[e]) * P.pairing.at(Bs.comult.k[e], b));
    return acc.finish();
  });
  // beta <~ m = <beta', m> beta''
  P.ract_B_on_Bs = bilin_from_rows(ds, db, ds, pool, [&](uint32_t beta, uint32_t m) {
    FlatAcc acc;
    for (size_t e = Bs.comult.begin(beta); e < Bs.comult.end(beta); ++e)
      acc.add(Bs.comult.k[e],
              Bs.comult.pool->at(Bs.comult.cid[e]) * P.pairing.at(Bs.comult.j[e], m));
    return acc.finish();
  });
  // b <~ mu = <mu, b'> b''
  P.ract_Bs_on_B = bilin_from_rows(db, ds, db, pool, [&](uint32_t b, uint32_t mu) {
    FlatAcc acc;
    for (size_t e = B.comult.begin(b); e < B.comult.end(b); ++e)
      acc.add(B.comult.k[e], B.comult.pool->at(B.comult.cid[e]) * P.pairing.at(mu, B.comult.j[e]));
    return acc.finish();
  });
  // mu ~> b = b' <mu, b''>
  P.lact_Bs_on_B = bilin_from_rows(ds, db, db, pool, [&](uint32_t mu, uint32_t b) {
    FlatAcc acc;
    for (size_t e = B.comult.begin(b); e < B.comult.end(b); ++e)
      acc.add(B.comult.j[e], B.comult.pool->at(B.comult.cid[e]) * P.pairing.at(mu, B.comult.k[e]));
    return acc.finish();
  });
  return P;
}

// ------------------------------------------------------------------ verifier

namespace {

struct WitnessMin {
  std::mutex mu;
  bool found = false;
  std::vector<uint64_t> tuple;
  void offer(const std::vector<uint64_t>& t) {
    std::lock_guard<std::mutex> g(mu);
    if (!found || t < tuple) {
      found = true;
      tuple = t;
    }
  }
  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < tuple.size(); ++i)
      s += (i ? "," : "") + std::to_string(tuple[i]);
    return s + ")";
  }
};

}  // namespace

Report verify_algebra(const Algebra& A, const CheckPolicy& policy) {
  Report rep;
  rep.suite = "algebra-axioms";
  rep.seed = policy.seed;
  const uint32_t d = A.dim();
  const CycloCtx* ctx = A.ctx;

  {  // unit laws
    bool pass = true;
    std::string w;
    for (uint32_t i = 0; i < d && pass; ++i) {
      Vec e = vec_unit(i, ctx->one());
      if (!vec_eq(A.mul(A.unit, e), e) || !vec_eq(A.mul(e, A.unit), e)) {
        pass = false;
        w = "(i)=(" + std::to_string(i) + ")";
      }
    }
    rep.add("unit", pass, w);
  }

  uint64_t total = uint64_t(d) * d * d;
  bool exhaustive = total <= policy.exhaustive_triple_limit;
  uint64_t n = exhaustive ? total : policy.sampled_triples;
  WitnessMin wit;
  std::atomic<uint64_t> fails{0};
  parallel_chunks(n, [&](unsigned chunk, uint64_t b, uint64_t e) {
    Rng rng(policy.seed * 1315423911ULL + chunk + 1);
    FlatAcc lhs, rhs;
    for (uint64_t t = b; t < e; ++t) {
      uint64_t i, j, k;
      if (exhaustive) {
        i = t / (uint64_t(d) * d);
        j = (t / d) % d;
        k = t % d;
      } else {
        i = rng.below(d);
        j = rng.below(d);
        k = rng.below(d);
      }
      lhs.clear();
      rhs.clear();
      const auto& m = A.mult;
      for (size_t e1 = m.row_begin(uint32_t(i), uint32_t(j)); e1 < m.row_end(uint32_t(i), uint32_t(j)); ++e1)
        for (size_t e2 = m.row_begin(m.idx[e1], uint32_t(k)); e2 < m.row_end(m.idx[e1], uint32_t(k)); ++e2)
          lhs.add(m.idx[e2], m.pool->at(m.cid[e1]) * m.pool->at(m.cid[e2]));
      for (size_t e1 = m.row_begin(uint32_t(j), uint32_t(k)); e1 < m.row_end(uint32_t(j), uint32_t(k)); ++e1)
        for (size_t e2 = m.row_begin(uint32_t(i), m.idx[e1]); e2 < m.row_end(uint32_t(i), m.idx[e1]); ++e2)
          rhs.add(m.idx[e2], m.pool->at(m.cid[e1]) * m.pool->at(m.cid[e2]));
      if (!(lhs.finish() == rhs.finish())) {
        fails++;
        wit.offer({i, j, k});
      }
    }
  });
  rep.add(exhaustive ? "assoc-exhaustive" : "assoc-sampled", fails == 0,
          fails ? "(i,j,k)=" + wit.str() : "");
  return rep;
}

Report verify_hopf(const HopfAlgebra& H, const CheckPolicy& policy) {
  Report rep = verify_algebra(H.alg, policy);
  rep.suite = "hopf-axioms";
  const uint32_t d = H.dim();
  const CycloCtx* ctx = H.ctx();

  {  // coassociativity, exhaustive per basis element
    bool pass = true;
    std::string w;
    for (uint32_t x = 0; x < d && pass; ++x) {
      std::unordered_map<uint64_t, Cyc> lhs, rhs;
      for (size_t e = H.comult.begin(x); e < H.comult.end(x); ++e) {
        uint32_t a = H.comult.j[e], b = H.comult.k[e];
        Cyc c = H.comult.pool->at(H.comult.cid[e]);
        for (size_t f = H.comult.begin(a); f < H.comult.end(a); ++f) {
          uint64_t key = (uint64_t(H.comult.j[f]) * d + H.comult.k[f]) * d + b;
          auto [it, fresh] = lhs.try_emplace(key, ctx->zero());
          it->second += H.comult.pool->at(H.comult.cid[f]) * c;
        }
        for (size_t f = H.comult.begin(b); f < H.comult.end(b); ++f) {
          uint64_t key = (uint64_t(a) * d + H.comult.j[f]) * d + H.comult.k[f];
          auto [it, fresh] = rhs.try_emplace(key, ctx->zero());
          it->second += H.comult.pool->at(H.comult.cid[f]) * c;
        }
      }
      for (auto& [k, v] : rhs) {
        auto [it, fresh] = lhs.try_emplace(k, ctx->zero());
        it->second -= v;
      }
      for (auto& [k, v] : lhs)
        if (!v.is_zero()) {
          pass = false;
          w = "(x)=(" + std::to_string(x) + ")";
          break;
        }
    }
    rep.add("coassoc", pass, w);
  }

  {  // counit laws per basis element
    bool pass = true;
    std::string w;
    for (uint32_t x = 0; x < d && pass; ++x) {
      FlatAcc left, right;
      for (size_t e = H.comult.begin(x); e < H.comult.end(x); ++e) {
        Cyc c = H.comult.pool->at(H.comult.cid[e]);
        left.add(H.comult.k[e], c * H.counit[H.comult.j[e]]);
        right.add(H.comult.j[e], c * H.counit[H.comult.k[e]]);
      }
      Vec want = vec_unit(x, ctx->one());
      if (!(left.finish() == want) || !(right.finish() == want)) {
        pass = false;
        w = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("counit", pass, w);
  }

  {  // Delta(1) = 1 (x) 1 and eps(1) = 1
    Vec2 d1 = H.delta(H.alg.unit);
    Vec2Acc want;
    for (const auto& [i, ci] : H.alg.unit)
      for (const auto& [j, cj] : H.alg.unit) want.add(uint64_t(i) * d + j, ci * cj);
    rep.add("delta-unit", vec2_eq(d1, want.take()));
    rep.add("eps-unit", H.eps(H.alg.unit) == ctx->one());
  }

  {  // bialgebra law Delta(ab) = Delta(a)Delta(b), eps(ab) = eps(a)eps(b)
    uint64_t total = uint64_t(d) * d;
    bool exhaustive = total <= policy.exhaustive_pair_limit;
    uint64_t n = exhaustive ? total : policy.sampled_pairs;
    WitnessMin wit;
    std::atomic<uint64_t> fails{0}, efails{0};
    parallel_chunks(n, [&](unsigned chunk, uint64_t b, uint64_t e) {
      Rng rng(policy.seed * 2654435761ULL + chunk + 7);
      for (uint64_t t = b; t < e; ++t) {
        uint64_t i = exhaustive ? t / d : rng.below(d);
        uint64_t j = exhaustive ? t % d : rng.below(d);
        Vec2Acc lhs;
        Cyc el = ctx->zero();
        const auto& m = H.alg.mult;
        for (size_t e1 = m.row_begin(uint32_t(i), uint32_t(j)); e1 < m.row_end(uint32_t(i), uint32_t(j)); ++e1) {
          Cyc c = m.pool->at(m.cid[e1]);
          uint32_t x = m.idx[e1];
          for (size_t f = H.comult.begin(x); f < H.comult.end(x); ++f)
            lhs.add(uint64_t(H.comult.j[f]) * d + H.comult.k[f],
                    H.comult.pool->at(H.comult.cid[f]) * c);
          el += H.counit[x] * c;
        }
        Vec2 rhs = vec2_mul(m, m, H.delta_basis(uint32_t(i)), H.delta_basis(uint32_t(j)));
        if (!vec2_eq(lhs.take(), rhs)) {
          fails++;
          wit.offer({i, j});
        }
        if (!(el == H.counit[i] * H.counit[j])) {
          efails++;
          wit.offer({i, j});
        }
      }
    });
    rep.add(exhaustive ? "delta-mult-exhaustive" : "delta-mult-sampled",
            fails == 0 && efails == 0, (fails || efails) ? "(i,j)=" + wit.str() : "");
  }

  {  // antipode axioms m(S (x) id)Delta = unit . eps = m(id (x) S)Delta
    bool pass_l = true, pass_r = true;
    std::string wl, wr;
    for (uint32_t x = 0; x < d; ++x) {
      FlatAcc left, right;
      for (size_t e = H.comult.begin(x); e < H.comult.end(x); ++e) {
        Cyc c = H.comult.pool->at(H.comult.cid[e]);
        uint32_t a = H.comult.j[e], b = H.comult.k[e];
        for (size_t f = H.antipode.begin(a); f < H.antipode.end(a); ++f) {
          Cyc cf = H.antipode.pool->at(H.antipode.cid[f]) * c;
          for (size_t g = H.alg.mult.row_begin(H.antipode.idx[f], b);
               g < H.alg.mult.row_end(H.antipode.idx[f], b); ++g)
            left.add(H.alg.mult.idx[g], H.alg.mult.pool->at(H.alg.mult.cid[g]) * cf);
        }
        for (size_t f = H.antipode.begin(b); f < H.antipode.end(b); ++f) {
          Cyc cf = H.antipode.pool->at(H.antipode.cid[f]) * c;
          for (size_t g = H.alg.mult.row_begin(a, H.antipode.idx[f]);
               g < H.alg.mult.row_end(a, H.antipode.idx[f]); ++g)
            right.add(H.alg.mult.idx[g], H.alg.mult.pool->at(H.alg.mult.cid[g]) * cf);
        }
      }
      Vec want = vec_scale(H.alg.unit, H.counit[x]);
      if (pass_l && !(left.finish() == want)) {
        pass_l = false;
        wl = "(x)=(" + std::to_string(x) + ")";
      }
      if (pass_r && !(right.finish() == want)) {
        pass_r = false;
        wr = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("antipode-left", pass_l, wl);
    rep.add("antipode-right", pass_r, wr);
  }

  {  // S bijective: S o S^{-1} = id = S^{-1} o S
    bool pass = true;
    std::string w;
    for (uint32_t x = 0; x < d && pass; ++x) {
      Vec e = vec_unit(x, ctx->one());
      if (!vec_eq(H.s(H.s_inv(e)), e) || !vec_eq(H.s_inv(H.s(e)), e)) {
        pass = false;
        w = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("antipode-bijective", pass, w);
  }
  return rep;
}

// ------------------------------------------------------- tensor views / JSON

SparseTensor mult_tensor(const Algebra& A) {
  uint32_t d = A.dim();
  TensorBuilder tb(A.ctx, {Slot{d, Variance::Contra}, Slot{d, Variance::Co}, Slot{d, Variance::Co}});
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j)
      for (size_t e = A.mult.row_begin(i, j); e < A.mult.row_end(i, j); ++e)
        tb.add({A.mult.idx[e], i, j}, A.mult.pool->at(A.mult.cid[e]));
  return tb.build();
}

SparseTensor unit_tensor(const Algebra& A) {
  TensorBuilder tb(A.ctx, {Slot{A.dim(), Variance::Contra}});
  for (const auto& [i, c] : A.unit) tb.add({i}, c);
  return tb.build();
}

SparseTensor comult_tensor(const HopfAlgebra& H) {
  uint32_t d = H.dim();
  TensorBuilder tb(H.ctx(), {Slot{d, Variance::Co}, Slot{d, Variance::Contra}, Slot{d, Variance::Contra}});
  for (uint32_t i = 0; i < d; ++i)
    for (size_t e = H.comult.begin(i); e < H.comult.end(i); ++e)
      tb.add({i, H.comult.j[e], H.comult.k[e]}, H.comult.pool->at(H.comult.cid[e]));
  return tb.build();
}

SparseTensor counit_tensor(const HopfAlgebra& H) {
  TensorBuilder tb(H.ctx(), {Slot{H.dim(), Variance::Co}});
  for (uint32_t i = 0; i < H.dim(); ++i) tb.add({i}, H.counit[i]);
  return tb.build();
}

SparseTensor linmap_tensor(const LinMap& m, const CycloCtx* ctx) {
  TensorBuilder tb(ctx, {Slot{m.dout, Variance::Contra}, Slot{m.din, Variance::Co}});
  for (uint32_t i = 0; i < m.din; ++i)
    for (size_t e = m.begin(i); e < m.end(i); ++e)
      tb.add({m.idx[e], i}, m.pool->at(m.cid[e]));
  return tb.build();
}

SparseTensor antipode_tensor(const HopfAlgebra& H) { return linmap_tensor(H.antipode, H.ctx()); }

SparseTensor action_tensor(const BilinMap& m, const CycloCtx* ctx) {
  TensorBuilder tb(ctx, {Slot{m.d1, Variance::Co}, Slot{m.d2, Variance::Co}, Slot{m.dout, Variance::Contra}});
  for (uint32_t i = 0; i < m.d1; ++i)
    for (uint32_t j = 0; j < m.d2; ++j)
      for (size_t e = m.row_begin(i, j); e < m.row_end(i, j); ++e)
        tb.add({i, j, m.idx[e]}, m.pool->at(m.cid[e]));
  return tb.build();
}

BilinMap bilin_from_rows(uint32_t d1, uint32_t d2, uint32_t dout,
                         std::shared_ptr<CycPool> pool,
                         const std::function<Vec(uint32_t, uint32_t)>& row) {
  BilinBuilder bb(d1, d2, dout, std::move(pool));
  for (uint32_t i = 0; i < d1; ++i)
    for (uint32_t j = 0; j < d2; ++j) bb.append_row(i, j, row(i, j));
  return bb.take();
}

LinMap linmap_from_rows(uint32_t din, uint32_t dout, std::shared_ptr<CycPool> pool,
                        const std::function<Vec(uint32_t)>& row) {
  LinBuilder lb(din, dout, std::move(pool));
  for (uint32_t i = 0; i < din; ++i) lb.append_row(i, row(i));
  return lb.take();
}

std::string hopf_to_json(const HopfAlgebra& H) {
  nlohmann::ordered_json j;
  j["conductor"] = H.ctx()->conductor();
  j["dim"] = H.dim();
  j["labels"] = H.alg.space.labels;
  j["mult"] = nlohmann::ordered_json::parse(tensor_to_json(mult_tensor(H.alg)));
  j["unit"] = nlohmann::ordered_json::parse(tensor_to_json(unit_tensor(H.alg)));
  j["comult"] = nlohmann::ordered_json::parse(tensor_to_json(comult_tensor(H)));
  j["counit"] = nlohmann::ordered_json::parse(tensor_to_json(counit_tensor(H)));
  j["antipode"] = nlohmann::ordered_json::parse(tensor_to_json(antipode_tensor(H)));
  return j.dump(1);
}

HopfAlgebra hopf_from_json(const CycloCtx* ctx, const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  if (j.at("conductor").get<unsigned>() != ctx->conductor())
    throw std::invalid_argument("bundle conductor does not match context");
  uint32_t d = j.at("dim").get<uint32_t>();
  HopfAlgebra H;
  H.alg.ctx = ctx;
  H.alg.pool = std::make_shared<CycPool>(ctx);
  H.alg.space.dim = d;
  H.alg.space.labels = j.at("labels").get<std::vector<std::string>>();
  H.alg.space.validate();

  SparseTensor mt = tensor_from_json(ctx, j.at("mult").dump());
  std::map<uint64_t, Vec> rows;
  for (size_t e = 0; e < mt.nnz(); ++e) {
    auto idx = mt.unpack(mt.keys[e]);
    rows[uint64_t(idx[1]) * d + idx[2]].emplace_back(idx[0], mt.vals[e]);
  }
  BilinBuilder bb(d, d, d, H.alg.pool);
  for (auto& [k, row] : rows) {
    std::sort(row.begin(), row.end(), [](const Ent& a, const Ent& b) { return a.first < b.first; });
    bb.append_row(static_cast<uint32_t>(k / d), static_cast<uint32_t>(k % d), row);
  }
  H.alg.mult = bb.take();

  SparseTensor ut = tensor_from_json(ctx, j.at("unit").dump());
  VecAcc uacc;
  for (size_t e = 0; e < ut.nnz(); ++e) uacc.add(static_cast<uint32_t>(ut.keys[e]), ut.vals[e]);
  H.alg.unit = uacc.take();

  SparseTensor ct = tensor_from_json(ctx, j.at("comult").dump());
  std::map<uint32_t, std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>>> crows;
  for (size_t e = 0; e < ct.nnz(); ++e) {
    auto idx = ct.unpack(ct.keys[e]);
    crows[idx[0]].push_back({{idx[1], idx[2]}, ct.vals[e]});
  }
  PairRowsBuilder prb(d, d, d, H.alg.pool);
  for (auto& [i, terms] : crows) prb.append_row(i, terms);
  H.comult = prb.take();

  SparseTensor et = tensor_from_json(ctx, j.at("counit").dump());
  H.counit.assign(d, ctx->zero());
  for (size_t e = 0; e < et.nnz(); ++e) H.counit[static_cast<uint32_t>(et.keys[e])] = et.vals[e];

  SparseTensor st = tensor_from_json(ctx, j.at("antipode").dump());
  std::map<uint32_t, Vec> srows;
  for (size_t e = 0; e < st.nnz(); ++e) {
    auto idx = st.unpack(st.keys[e]);
    srows[idx[1]].emplace_back(idx[0], st.vals[e]);
  }
  LinBuilder lb(d, d, H.alg.pool);
  for (auto& [i, row] : srows) {
    std::sort(row.begin(), row.end(), [](const Ent& a, const Ent& b) { return a.first < b.first; });
    lb.append_row(i, row);
  }
  H.antipode = lb.take();
  H.antipode_inv = invert_linmap(H.antipode, ctx, H.alg.pool);
  return H;
}

}  // namespace hopfforge
