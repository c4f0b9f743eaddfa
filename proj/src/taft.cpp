#include "taft.hpp"

#include <algorithm>

namespace hopfforge {

namespace {

std::string pow_label(const std::string& g, uint32_t e) {
  if (e == 0) return "";
  if (e == 1) return g;
  return g + "^" + std::to_string(e);
}

std::string mono_label(std::initializer_list<std::pair<const char*, uint32_t>> parts) {
  std::string out;
  for (const auto& [g, e] : parts) {
    std::string piece = pow_label(g, e);
    if (piece.empty()) continue;
    if (!out.empty()) out += "*";
    out += piece;
  }
  return out.empty() ? "1" : out;
}

DenseMat mat_mul(const DenseMat& a, const DenseMat& b, const CycloCtx* ctx) {
  DenseMat r(a.rows, b.cols, ctx);
  for (uint32_t i = 0; i < a.rows; ++i)
    for (uint32_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (uint32_t j = 0; j < b.cols; ++j)
        if (!b.at(k, j).is_zero()) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

}  // namespace

Vec TaftBundle::hpow(const Vec& v, uint32_t e) const {
  Vec r = dbl->heisenberg.unit;
  for (uint32_t i = 0; i < e; ++i) r = dbl->heisenberg.mult.apply(r, v);
  return r;
}

std::unique_ptr<TaftBundle> build_taft(const CycloCtx* ctx) {
  auto T = std::make_unique<TaftBundle>();
  T->ctx = ctx;
  T->p = ctx->p();
  if (T->p < 2) throw std::invalid_argument("Taft family needs p >= 2 (conductor 4p)");
  const unsigned p = T->p, P4 = 4 * p;
  const Cyc q = ctx->q();

  // B: k E = q E k, E^p = 0, k^{4p} = 1
  T->oaB = std::make_unique<OrderedAlgebra>(
      ctx, std::vector<GenSpec>{{"E", p, false}, {"k", P4, true}});
  OrderedAlgebra& oa = *T->oaB;
  oa.set_swap_rule(1, 0, vec_scale(vec_unit(oa.mono({1, 1}), ctx->one()), q));

  auto pool = std::make_shared<CycPool>(ctx);
  const uint32_t db = oa.dim();
  std::vector<GenHopfData> gens(2);
  // Delta(E) = 1 (x) E + E (x) k^2
  gens[0].delta = Vec2{{uint64_t(oa.mono({0, 0})) * db + oa.mono({1, 0}), ctx->one()},
                       {uint64_t(oa.mono({1, 0})) * db + oa.mono({0, 2}), ctx->one()}};
  std::sort(gens[0].delta.begin(), gens[0].delta.end(),
            [](const Ent2& a, const Ent2& b) { return a.first < b.first; });
  gens[0].eps = ctx->zero();
  gens[0].antipode = vec_unit(oa.mono({1, P4 - 2}), -ctx->one());  // -E k^{-2}
  // Delta(k) = k (x) k
  gens[1].delta = Vec2{{uint64_t(oa.mono({0, 1})) * db + oa.mono({0, 1}), ctx->one()}};
  gens[1].eps = ctx->one();
  gens[1].antipode = vec_unit(oa.mono({0, P4 - 1}), ctx->one());
  T->B = hopf_from_presentation(oa, pool, gens);
  T->E_B = vec_unit(T->idxB(1, 0), ctx->one());
  T->k_B = vec_unit(T->idxB(0, 1), ctx->one());

  T->BsRaw = dual_hopf(T->B);

  // F, kappa as functionals; their ordered products span B*
  Vec F_raw, kappa_raw;
  {
    Cyc inv_qmq = ctx->q_minus_qinv().inv();
    VecAcc fa, ka;
    for (uint32_t n = 0; n < P4; ++n) {
      fa.add(T->idxB(1, n), ctx->qpow(-long(n)) * inv_qmq);
      ka.add(T->idxB(0, n), ctx->qpow_half(-long(n)));
    }
    F_raw = fa.take();
    kappa_raw = ka.take();
  }
  T->basis_change = DenseMat(db, db, ctx);
  {
    Vec Fa = T->BsRaw.alg.unit;
    for (uint32_t a = 0; a < p; ++a) {
      Vec col = Fa;
      for (uint32_t b = 0; b < P4; ++b) {
        for (const auto& [i, c] : col) T->basis_change.at(i, T->idxBs(a, b)) = c;
        col = T->BsRaw.alg.mul(col, kappa_raw);
      }
      Fa = T->BsRaw.alg.mul(Fa, F_raw);
    }
  }
  auto cinv = dense_inverse(T->basis_change, ctx);
  if (!cinv)
    throw std::runtime_error("F^a kappa^b do not span B* (change of basis is singular)");

  VecSpace bs_space;
  bs_space.dim = db;
  for (uint32_t a = 0; a < p; ++a)
    for (uint32_t b = 0; b < P4; ++b)
      bs_space.labels.push_back(mono_label({{"F", a}, {"kappa", b}}));
  T->Bs = change_basis(T->BsRaw, T->basis_change, *cinv, bs_space);
  T->F_Bs = vec_unit(T->idxBs(1, 0), ctx->one());
  T->kappa_Bs = vec_unit(T->idxBs(0, 1), ctx->one());

  T->pairing = DenseMat(db, db, ctx);
  for (uint32_t al = 0; al < db; ++al)
    for (uint32_t b = 0; b < db; ++b) T->pairing.at(al, b) = T->basis_change.at(b, al);

  T->dbl = build_double(T->B, T->Bs, T->pairing);

  // the (kappa, z, lambda, partial) elements of H(B*)
  const Cyc qmq = ctx->q_minus_qinv();
  T->z_H = vec_unit(T->dbl->didx(T->idxBs(0, 0), T->idxB(1, P4 - 2)), -qmq);
  T->lambda_H = vec_unit(T->dbl->didx(T->idxBs(0, 1), T->idxB(0, 1)), ctx->one());
  T->partial_H = vec_unit(T->dbl->didx(T->idxBs(1, 0), T->idxB(0, 0)), qmq);
  T->kappa_H = vec_unit(T->dbl->didx(T->idxBs(0, 1), T->idxB(0, 0)), ctx->one());
  return T;
}

// --------------------------------------------------------- D(B) presentation

Report verify_double_presentation(const TaftBundle& T) {
  Report rep;
  rep.suite = "double-presentation";
  const CycloCtx* ctx = T.ctx;
  const unsigned p = T.p, P4 = 4 * p;
  const Cyc q = ctx->q(), one = ctx->one();
  const DoubleBundle& D = *T.dbl;
  const BilinMap& dm = D.drinfeld.alg.mult;
  auto mulD = [&](const Vec& a, const Vec& b) { return dm.apply(a, b); };

  Vec E = D.embed_B(T.E_B), k = D.embed_B(T.k_B);
  Vec F = D.embed_Bs(T.F_Bs), kap = D.embed_Bs(T.kappa_Bs);
  Vec unit = D.drinfeld.alg.unit;

  // i) relations in B
  rep.add("kE=qEk", vec_eq(mulD(k, E), vec_scale(mulD(E, k), q)));
  rep.add("E^p=0", D.drinfeld.alg.pow(E, p).empty());
  rep.add("k^4p=1", vec_eq(D.drinfeld.alg.pow(k, P4), unit));
  // ii) relations in B*
  rep.add("kappaF=qFkappa", vec_eq(mulD(kap, F), vec_scale(mulD(F, kap), q)));
  rep.add("F^p=0", D.drinfeld.alg.pow(F, p).empty());
  rep.add("kappa^4p=1", vec_eq(D.drinfeld.alg.pow(kap, P4), unit));
  // iii) cross relations
  rep.add("k-kappa-commute", vec_eq(mulD(k, kap), mulD(kap, k)));
  rep.add("kF=q^-1Fk", vec_eq(mulD(k, F), vec_scale(mulD(F, k), ctx->qpow(-1))));
  rep.add("kappaE=q^-1Ekappa", vec_eq(mulD(kap, E), vec_scale(mulD(E, kap), ctx->qpow(-1))));
  {
    Vec lhs = vec_add(mulD(E, F), vec_scale(mulD(F, E), -one));
    Vec k2 = D.drinfeld.alg.pow(k, 2), kap2 = D.drinfeld.alg.pow(kap, 2);
    Vec rhs = vec_scale(vec_add(k2, vec_scale(kap2, -one)), ctx->q_minus_qinv().inv());
    rep.add("[E,F]=(k2-kappa2)/(q-q^-1)", vec_eq(lhs, rhs));
  }
  // Hopf structure displays
  {
    uint64_t dd = D.dim();
    Vec2 dF = D.drinfeld.delta(F);
    Vec2Acc want;
    uint32_t kap2_idx = D.didx(T.idxBs(0, 2), T.idxB(0, 0));
    uint32_t F_idx = D.didx(T.idxBs(1, 0), T.idxB(0, 0));
    uint32_t unit_idx = D.didx(T.idxBs(0, 0), T.idxB(0, 0));
    want.add(uint64_t(kap2_idx) * dd + F_idx, one);
    want.add(uint64_t(F_idx) * dd + unit_idx, one);
    rep.add("DeltaD(F)=kappa2(x)F+F(x)1", vec2_eq(dF, want.take()));

    Vec2 dk = D.drinfeld.delta(kap);
    uint32_t kap_idx = D.didx(T.idxBs(0, 1), T.idxB(0, 0));
    Vec2Acc wk;
    wk.add(uint64_t(kap_idx) * dd + kap_idx, one);
    rep.add("DeltaD(kappa)=kappa(x)kappa", vec2_eq(dk, wk.take()));
  }
  rep.add("epsD(F)=0", D.drinfeld.eps(F).is_zero());
  rep.add("epsD(kappa)=1", D.drinfeld.eps(kap) == one);
  {
    Vec sF = D.drinfeld.s(F);
    // -kappa^{-2} F = -q^{-2} F kappa^{4p-2}
    Vec want = vec_unit(D.didx(T.idxBs(1, P4 - 2), T.idxB(0, 0)), -ctx->qpow(-2));
    rep.add("SD(F)=-kappa^-2F", vec_eq(sF, want));
    rep.add("SD(kappa)=kappa^-1",
            vec_eq(D.drinfeld.s(kap), vec_unit(D.didx(T.idxBs(0, P4 - 1), T.idxB(0, 0)), one)));
  }

  // full agreement with the four-generator presentation F < kappa < E < k
  {
    OrderedAlgebra pres(ctx, {{"F", p, false}, {"kappa", P4, true}, {"E", p, false}, {"k", P4, true}});
    Cyc inv_qmq = ctx->q_minus_qinv().inv();
    pres.set_swap_rule(1, 0, vec_unit(pres.mono({1, 1, 0, 0}), q));          // kappa F = q F kappa
    {
      Vec r = vec_unit(pres.mono({1, 0, 1, 0}), ctx->one());                 // E F = F E + ...
      r = vec_add(r, vec_unit(pres.mono({0, 0, 0, 2}), inv_qmq));
      r = vec_add(r, vec_unit(pres.mono({0, 2, 0, 0}), -inv_qmq));
      pres.set_swap_rule(2, 0, r);
    }
    pres.set_swap_rule(2, 1, vec_unit(pres.mono({0, 1, 1, 0}), q));          // E kappa = q kappa E
    pres.set_swap_rule(3, 0, vec_unit(pres.mono({1, 0, 0, 1}), ctx->qpow(-1)));  // k F
    pres.set_swap_rule(3, 1, vec_unit(pres.mono({0, 1, 0, 1}), one));            // k kappa
    pres.set_swap_rule(3, 2, vec_unit(pres.mono({0, 0, 1, 1}), q));              // k E = q E k
    bool ok = true;
    std::string w;
    auto to_double = [&](uint32_t mono) {
      auto e = pres.exponents(mono);
      return D.didx(T.idxBs(e[0], e[1]), T.idxB(e[2], e[3]));
    };
    for (uint32_t i = 0; i < pres.dim() && ok; ++i)
      for (uint32_t j = 0; j < pres.dim() && ok; ++j) {
        Vec want = pres.mul_mono(i, j);
        VecAcc mapped;
        for (const auto& [m, c] : want) mapped.add(to_double(m), c);
        Vec got = dm.row(to_double(i), to_double(j));
        if (!vec_eq(mapped.take(), got)) {
          ok = false;
          w = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    rep.add("presentation-structure-constants", ok, w);
  }
  return rep;
}

// ------------------------------------------------------------ hd basis change

namespace {

// columns z^a lambda^b partial^c kappa^d of H(B*), packed ((a*4p+b)*p+c)*4p+d
struct HdSpan {
  std::vector<Vec> cols;
  std::unique_ptr<SpanSolver> solver;
  unsigned p;
  uint32_t pack(uint32_t a, uint32_t b, uint32_t c, uint32_t d) const {
    return ((a * 4 * p + b) * p + c) * 4 * p + d;
  }
};

HdSpan make_hd_span(const TaftBundle& T) {
  HdSpan S;
  S.p = T.p;
  const unsigned p = T.p, P4 = 4 * p;
  const auto& H = T.dbl->heisenberg;
  S.cols.resize(uint64_t(p) * P4 * p * P4);
  Vec za = H.unit;
  for (uint32_t a = 0; a < p; ++a) {
    Vec zl = za;
    for (uint32_t b = 0; b < P4; ++b) {
      Vec zld = zl;
      for (uint32_t c = 0; c < p; ++c) {
        Vec cur = zld;
        for (uint32_t d = 0; d < P4; ++d) {
          S.cols[S.pack(a, b, c, d)] = cur;
          cur = H.mult.apply(cur, T.kappa_H);
        }
        zld = H.mult.apply(zld, T.partial_H);
      }
      zl = H.mult.apply(zl, T.lambda_H);
    }
    za = H.mult.apply(za, T.z_H);
  }
  S.solver = std::make_unique<SpanSolver>(T.ctx, S.cols);
  return S;
}

}  // namespace

Report verify_hd_basis(const TaftBundle& T) {
  Report rep;
  rep.suite = "hd-basis";
  const CycloCtx* ctx = T.ctx;
  const unsigned p = T.p, P4 = 4 * p;
  const auto& H = T.dbl->heisenberg;
  auto mul = [&](const Vec& a, const Vec& b) { return H.mult.apply(a, b); };
  const Vec &z = T.z_H, &lam = T.lambda_H, &pd = T.partial_H, &kap = T.kappa_H;

  // the section 3.1.3 relation display
  rep.add("kappa-z", vec_eq(mul(kap, z), vec_scale(mul(z, kap), ctx->qpow(-1))));
  rep.add("kappa-lambda", vec_eq(mul(kap, lam), vec_scale(mul(lam, kap), ctx->qpow_half(1))));
  rep.add("kappa-partial", vec_eq(mul(kap, pd), vec_scale(mul(pd, kap), ctx->q())));
  rep.add("kappa^4p=1", vec_eq(T.hpow(kap, P4), H.unit));
  rep.add("lambda^4p-value", vec_eq(T.hpow(lam, P4), vec_scale(H.unit, -ctx->one())),
          "verdict: lambda^4p evaluates to -1 (lambda has multiplicative order 8p); the "
          "stated relation lambda^4p=1 holds only up to sign and is recorded as a typo; "
          "the abstract presentation with lambda^2p=1 used downstream is unaffected");
  rep.add("z^p=0", T.hpow(z, p).empty());
  rep.add("partial^p=0", T.hpow(pd, p).empty());
  rep.add("lambda-z", vec_eq(mul(lam, z), mul(z, lam)));
  rep.add("lambda-partial", vec_eq(mul(lam, pd), mul(pd, lam)));
  {
    Vec lhs = mul(pd, z);
    Vec rhs = vec_add(vec_scale(H.unit, ctx->q_minus_qinv()),
                      vec_scale(mul(z, pd), ctx->qpow(-2)));
    rep.add("partial-z", vec_eq(lhs, rhs));
  }

  HdSpan S = make_hd_span(T);
  rep.add("basis-change-invertible", S.solver->rank() == T.dbl->dim(),
          "rank=" + std::to_string(S.solver->rank()));

  // structure constants against the z < lambda < partial < kappa presentation
  if (T.dbl->dim() <= 512) {
    OrderedAlgebra pres(ctx, {{"z", p, false},
                              {"lam", P4, true, -ctx->one()},  // lambda^4p = -1
                              {"d", p, false},
                              {"kappa", P4, true}});
    pres.set_swap_rule(1, 0, vec_unit(pres.mono({1, 1, 0, 0}), ctx->one()));
    {
      Vec r = vec_unit(pres.mono({0, 0, 0, 0}), ctx->q_minus_qinv());
      r = vec_add(r, vec_unit(pres.mono({1, 0, 1, 0}), ctx->qpow(-2)));
      pres.set_swap_rule(2, 0, r);
    }
    pres.set_swap_rule(2, 1, vec_unit(pres.mono({0, 1, 1, 0}), ctx->one()));
    pres.set_swap_rule(3, 0, vec_unit(pres.mono({1, 0, 0, 1}), ctx->qpow(-1)));
    pres.set_swap_rule(3, 1, vec_unit(pres.mono({0, 1, 0, 1}), ctx->qpow_half(1)));
    pres.set_swap_rule(3, 2, vec_unit(pres.mono({0, 0, 1, 1}), ctx->q()));
    bool ok = true;
    std::string w;
    for (uint32_t i = 0; i < pres.dim() && ok; ++i)
      for (uint32_t j = 0; j < pres.dim() && ok; ++j) {
        auto coords = S.solver->coords(H.mult.apply(S.cols[i], S.cols[j]));
        if (!coords || !vec_eq(*coords, pres.mul_mono(i, j))) {
          ok = false;
          w = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    rep.add("pbw-structure-constants", ok, w);
  }
  return rep;
}

// ------------------------------------------------------------ D-action table

Report verify_d_action_table(const TaftBundle& T) {
  Report rep;
  rep.suite = "d-action-table";
  const CycloCtx* ctx = T.ctx;
  const unsigned p = T.p, P4 = 4 * p;
  const DoubleBundle& D = *T.dbl;
  const auto& H = D.heisenberg;
  auto mul = [&](const Vec& a, const Vec& b) { return H.mult.apply(a, b); };

  Vec E_D = D.embed_B(T.E_B), k_D = D.embed_B(T.k_B);
  Vec F_D = D.embed_Bs(T.F_Bs), kap_D = D.embed_Bs(T.kappa_Bs);

  auto pow_of = [&](const Vec& v, uint32_t n) { return T.hpow(v, n); };
  auto check_cells = [&](const std::string& name, const Vec& gen, const Vec& base,
                         uint32_t range, const std::function<Vec(uint32_t)>& rhs) {
    bool pass = true;
    std::string w;
    for (uint32_t n = 0; n < range; ++n) {
      Vec lhs = D.het_act(gen, pow_of(base, n));
      if (!vec_eq(lhs, rhs(n))) {
        pass = false;
        w = "(n)=(" + std::to_string(n) + ")";
        break;
      }
    }
    rep.add(name, pass, w);
  };

  const Vec &z = T.z_H, &lam = T.lambda_H, &pd = T.partial_H, &kap = T.kappa_H;
  Cyc one = ctx->one();

  // E |> kappa = 0 (the table states this single cell for the kappa column)
  rep.add("E-on-kappa", D.het_act(E_D, kap).empty());

  // suspected-typo cells: stated RHS lacks the exponent n
  {
    std::vector<uint32_t> stated_fails, corrected_fails;
    for (uint32_t n = 0; n < P4; ++n) {
      Vec lhs = D.het_act(k_D, pow_of(kap, n));
      Vec stated = vec_scale(kap, ctx->qpow_half(-long(n)));
      Vec corrected = vec_scale(pow_of(kap, n), ctx->qpow_half(-long(n)));
      if (!vec_eq(lhs, stated)) stated_fails.push_back(n);
      if (!vec_eq(lhs, corrected)) corrected_fails.push_back(n);
    }
    bool stated_at_1 =
        std::find(stated_fails.begin(), stated_fails.end(), 1u) == stated_fails.end();
    rep.add("k-on-kappa^n-corrected", corrected_fails.empty() && stated_at_1,
            "verdict: heterotic action gives q^(-n/2) kappa^n for all n; stated cell "
            "q^(-n/2) kappa (no exponent) holds only at n=1, recorded as a typo (" +
                std::to_string(stated_fails.size()) + " of " + std::to_string(P4) +
                " exponents disagree with the stated form)");
  }
  {
    std::vector<uint32_t> stated_fails, corrected_fails;
    for (uint32_t n = 0; n < P4; ++n) {
      Vec lhs = D.het_act(k_D, pow_of(lam, n));
      Vec stated = vec_scale(lam, ctx->qpow_half(-long(n)));
      Vec corrected = vec_scale(pow_of(lam, n), ctx->qpow_half(-long(n)));
      if (!vec_eq(lhs, stated)) stated_fails.push_back(n);
      if (!vec_eq(lhs, corrected)) corrected_fails.push_back(n);
    }
    bool stated_at_1 =
        std::find(stated_fails.begin(), stated_fails.end(), 1u) == stated_fails.end();
    rep.add("k-on-lambda^n-corrected", corrected_fails.empty() && stated_at_1,
            "verdict: heterotic action gives q^(-n/2) lambda^n for all n; stated cell "
            "q^(-n/2) lambda (no exponent) holds only at n=1, recorded as a typo (" +
                std::to_string(stated_fails.size()) + " of " + std::to_string(P4) +
                " exponents disagree with the stated form)");
  }

  check_cells("F-on-kappa^n", F_D, kap, P4, [&](uint32_t n) {
    return vec_scale(mul(pd, pow_of(kap, n)),
                     -(ctx->qpow_half(long(n)) * ctx->qnum_half(long(n))));
  });
  check_cells("E-on-lambda^n", E_D, lam, P4, [&](uint32_t n) {
    return vec_scale(mul(pow_of(lam, n), z),
                     ctx->qpow_half(-long(n)) * ctx->qnum_half(long(n)));
  });
  check_cells("F-on-lambda^n", F_D, lam, P4, [&](uint32_t n) {
    return vec_scale(mul(pow_of(lam, n), pd),
                     -(ctx->qpow_half(long(n)) * ctx->qnum_half(long(n))));
  });
  check_cells("E-on-z^n", E_D, z, p, [&](uint32_t n) {
    return vec_scale(pow_of(z, n + 1), -(ctx->qpow(long(n)) * ctx->qnum(long(n))));
  });
  check_cells("k-on-z^n", k_D, z, p, [&](uint32_t n) {
    return vec_scale(pow_of(z, n), ctx->qpow(long(n)));
  });
  check_cells("F-on-z^n", F_D, z, p, [&](uint32_t n) {
    if (n == 0) return Vec{};
    return vec_scale(pow_of(z, n - 1), ctx->qnum(long(n)) * ctx->qpow(1 - long(n)));
  });
  check_cells("E-on-partial^n", E_D, pd, p, [&](uint32_t n) {
    if (n == 0) return Vec{};
    return vec_scale(pow_of(pd, n - 1), ctx->qpow(1 - long(n)) * ctx->qnum(long(n)));
  });
  check_cells("k-on-partial^n", k_D, pd, p, [&](uint32_t n) {
    return vec_scale(pow_of(pd, n), ctx->qpow(-long(n)));
  });
  check_cells("F-on-partial^n", F_D, pd, p, [&](uint32_t n) {
    return vec_scale(pow_of(pd, n + 1), -(ctx->qpow(long(n)) * ctx->qnum(long(n))));
  });
  // the kappa-action line
  check_cells("kappa-on-kappa^n", kap_D, kap, P4, [&](uint32_t n) { return pow_of(kap, n); });
  check_cells("kappa-on-partial^n", kap_D, pd, p, [&](uint32_t n) {
    return vec_scale(pow_of(pd, n), ctx->qpow(long(n)));
  });
  check_cells("kappa-on-lambda^n", kap_D, lam, P4, [&](uint32_t n) {
    return vec_scale(pow_of(lam, n), ctx->qpow_half(long(n)));
  });
  check_cells("kappa-on-z^n", kap_D, z, p, [&](uint32_t n) {
    return vec_scale(pow_of(z, n), ctx->qpow(-long(n)));
  });
  (void)one;
  return rep;
}

// --------------------------------------------------------------------- U-bar

std::unique_ptr<UqBundle> build_uq(const CycloCtx* ctx) {
  auto U = std::make_unique<UqBundle>();
  U->ctx = ctx;
  U->p = ctx->p();
  if (U->p < 2) throw std::invalid_argument("U-bar needs p >= 2");
  const unsigned p = U->p, P2 = 2 * p;
  const Cyc one = ctx->one();

  U->oa = std::make_unique<OrderedAlgebra>(
      ctx, std::vector<GenSpec>{{"F", p, false}, {"E", p, false}, {"K", P2, true}});
  OrderedAlgebra& oa = *U->oa;
  {
    // E F = F E + (K - K^{-1})/(q - q^{-1})
    Cyc inv_qmq = ctx->q_minus_qinv().inv();
    Vec r = vec_unit(oa.mono({1, 1, 0}), one);
    r = vec_add(r, vec_unit(oa.mono({0, 0, 1}), inv_qmq));
    r = vec_add(r, vec_unit(oa.mono({0, 0, P2 - 1}), -inv_qmq));
    oa.set_swap_rule(1, 0, r);
  }
  oa.set_swap_rule(2, 0, vec_unit(oa.mono({1, 0, 1}), ctx->qpow(-2)));  // K F = q^-2 F K
  oa.set_swap_rule(2, 1, vec_unit(oa.mono({0, 1, 1}), ctx->qpow(2)));   // K E = q^2 E K

  auto pool = std::make_shared<CycPool>(ctx);
  const uint32_t d = oa.dim();
  std::vector<GenHopfData> gens(3);
  // F: Delta = F (x) 1 + K^{-1} (x) F
  gens[0].delta = Vec2{{uint64_t(oa.mono({1, 0, 0})) * d + oa.mono({0, 0, 0}), one},
                       {uint64_t(oa.mono({0, 0, P2 - 1})) * d + oa.mono({1, 0, 0}), one}};
  std::sort(gens[0].delta.begin(), gens[0].delta.end(),
            [](const Ent2& a, const Ent2& b) { return a.first < b.first; });
  gens[0].eps = ctx->zero();
  gens[0].antipode = vec_unit(oa.mono({1, 0, 1}), -ctx->qpow(-2));  // -K F = -q^{-2} F K
  // E: Delta = E (x) K + 1 (x) E
  gens[1].delta = Vec2{{uint64_t(oa.mono({0, 0, 0})) * d + oa.mono({0, 1, 0}), one},
                       {uint64_t(oa.mono({0, 1, 0})) * d + oa.mono({0, 0, 1}), one}};
  std::sort(gens[1].delta.begin(), gens[1].delta.end(),
            [](const Ent2& a, const Ent2& b) { return a.first < b.first; });
  gens[1].eps = ctx->zero();
  gens[1].antipode = vec_unit(oa.mono({0, 1, P2 - 1}), -one);  // -E K^{-1}
  // K
  gens[2].delta = Vec2{{uint64_t(oa.mono({0, 0, 1})) * d + oa.mono({0, 0, 1}), one}};
  gens[2].eps = one;
  gens[2].antipode = vec_unit(oa.mono({0, 0, P2 - 1}), one);
  U->U = hopf_from_presentation(oa, pool, gens);
  U->F = vec_unit(U->idx(1, 0, 0), one);
  U->E = vec_unit(U->idx(0, 1, 0), one);
  U->K = vec_unit(U->idx(0, 0, 1), one);
  U->Kinv = vec_unit(U->idx(0, 0, P2 - 1), one);
  return U;
}

namespace {

// the quotient D(B)/(kappa k - 1) with the span of F^l E^m k^{2n} inside it
struct Truncation {
  RowEchelon ideal;
  std::vector<Vec> ubar_reps;  // reduced representatives, indexed like UqBundle
  std::unique_ptr<SpanSolver> ubar;
  bool central = true;
  uint32_t dbar_dim = 0;

  Truncation(const CycloCtx* ctx) : ideal(ctx) {}
};

Truncation make_truncation(const TaftBundle& T) {
  const DoubleBundle& D = *T.dbl;
  const unsigned p = T.p;
  Truncation tr(T.ctx);

  Vec c = vec_add(vec_unit(D.didx(T.idxBs(0, 1), T.idxB(0, 1)), T.ctx->one()),
                  vec_scale(D.drinfeld.alg.unit, -T.ctx->one()));
  for (uint32_t x = 0; x < D.dim() && tr.central; ++x) {
    Vec ex = vec_unit(x, T.ctx->one());
    if (!vec_eq(D.drinfeld.alg.mult.apply(c, ex), D.drinfeld.alg.mult.apply(ex, c)))
      tr.central = false;
  }
  for (uint32_t x = 0; x < D.dim(); ++x)
    tr.ideal.insert(D.drinfeld.alg.mult.apply(c, vec_unit(x, T.ctx->one())));
  tr.dbar_dim = D.dim() - tr.ideal.rank();

  tr.ubar_reps.reserve(2 * p * p * p);
  for (uint32_t l = 0; l < p; ++l)
    for (uint32_t m = 0; m < p; ++m)
      for (uint32_t n = 0; n < 2 * p; ++n)
        tr.ubar_reps.push_back(tr.ideal.reduce(
            vec_unit(D.didx(T.idxBs(l, 0), T.idxB(m, 2 * n)), T.ctx->one())));
  tr.ubar = std::make_unique<SpanSolver>(T.ctx, tr.ubar_reps);
  return tr;
}

}  // namespace

Report verify_uq_truncation(const TaftBundle& T, const UqBundle& Uq) {
  Report rep;
  rep.suite = "truncation-agreement";
  const CycloCtx* ctx = T.ctx;
  const unsigned p = T.p;
  const DoubleBundle& D = *T.dbl;
  Truncation tr = make_truncation(T);

  rep.add("kappa-k-minus-1-central", tr.central);
  rep.add("dim-Dbar", tr.dbar_dim == 4 * p * p * p,
          "dim=" + std::to_string(tr.dbar_dim));
  rep.add("ubar-span-rank", tr.ubar->rank() == 2 * p * p * p,
          "rank=" + std::to_string(tr.ubar->rank()));
  rep.add("dim-Ubar-presentation", Uq.U.dim() == 2 * p * p * p);

  const uint32_t du = Uq.U.dim();
  auto project = [&](const Vec& dvec) { return tr.ubar->coords(tr.ideal.reduce(dvec)); };

  {  // multiplication agreement
    bool ok = true;
    std::string w;
    for (uint32_t i = 0; i < du && ok; ++i)
      for (uint32_t j = 0; j < du && ok; ++j) {
        auto got = project(D.drinfeld.alg.mult.apply(tr.ubar_reps[i], tr.ubar_reps[j]));
        if (!got || !vec_eq(*got, Uq.U.alg.mult.row(i, j))) {
          ok = false;
          w = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    rep.add("mult-agreement", ok, w);
  }
  {  // comultiplication agreement
    bool ok = true;
    std::string w;
    // coset projections of single D basis vectors, cached
    std::vector<std::optional<Vec>> pcoord(D.dim());
    auto leg = [&](uint32_t x) -> const std::optional<Vec>& {
      if (!pcoord[x].has_value()) {
        auto c = project(vec_unit(x, ctx->one()));
        pcoord[x] = c ? *c : Vec{};
        if (!c) pcoord[x].reset();
      }
      return pcoord[x];
    };
    for (uint32_t i = 0; i < du && ok; ++i) {
      Vec2 dd = D.drinfeld.delta(tr.ubar_reps[i]);
      Vec2Acc acc;
      for (const auto& [key, c] : dd) {
        uint32_t x = static_cast<uint32_t>(key / D.dim());
        uint32_t y = static_cast<uint32_t>(key % D.dim());
        const auto &px = leg(x), &py = leg(y);
        if (!px || !py) {
          ok = false;
          w = "(i)=(" + std::to_string(i) + ") leg outside Ubar";
          break;
        }
        for (const auto& [a, ca] : *px)
          for (const auto& [b, cb] : *py) acc.add(uint64_t(a) * du + b, c * ca * cb);
      }
      if (ok && !vec2_eq(acc.take(), Uq.U.delta_basis(i))) {
        ok = false;
        w = "(i)=(" + std::to_string(i) + ")";
      }
    }
    rep.add("comult-agreement", ok, w);
  }
  {  // counit and antipode agreement
    bool okc = true, oks = true;
    std::string wc, ws;
    for (uint32_t i = 0; i < du; ++i) {
      if (okc && !(D.drinfeld.eps(tr.ubar_reps[i]) == Uq.U.counit[i])) {
        okc = false;
        wc = "(i)=(" + std::to_string(i) + ")";
      }
      auto got = project(D.drinfeld.s(tr.ubar_reps[i]));
      if (oks && (!got || !vec_eq(*got, Uq.U.antipode.row(i)))) {
        oks = false;
        ws = "(i)=(" + std::to_string(i) + ")";
      }
    }
    rep.add("counit-agreement", okc, wc);
    rep.add("antipode-agreement", oks, ws);
  }
  return rep;
}

// --------------------------------------------------------------------- H-bar

namespace {

// letters appearing in the 3-fold Sweedler legs of the U-bar generators
enum class Leg : uint8_t { One, E, F, K, Kinv };

struct PureTables {
  const CycloCtx* ctx;
  unsigned p;
  OrderedAlgebra* oa;  // z < lam < d  (or z < d with lam_order = 0)
  bool with_lambda;

  // action of a leg letter on z^n, lambda^n, partial^n as an element
  Vec on_z(Leg g, uint32_t n) const {
    switch (g) {
      case Leg::One: return mono_pow(0, n);
      case Leg::K: return vec_scale(mono_pow(0, n), ctx->qpow(2 * long(n)));
      case Leg::Kinv: return vec_scale(mono_pow(0, n), ctx->qpow(-2 * long(n)));
      case Leg::E:
        return vec_scale(mono_pow(0, n + 1), -(ctx->qpow(long(n)) * ctx->qnum(long(n))));
      case Leg::F: {
        if (n == 0) return {};
        return vec_scale(mono_pow(0, n - 1), ctx->qnum(long(n)) * ctx->qpow(1 - long(n)));
      }
    }
    return {};
  }
  Vec on_lam(Leg g, uint32_t n) const {
    switch (g) {
      case Leg::One: return mono_pow(1, n);
      case Leg::K: return vec_scale(mono_pow(1, n), ctx->qpow(-long(n)));
      case Leg::Kinv: return vec_scale(mono_pow(1, n), ctx->qpow(long(n)));
      case Leg::E: {
        // q^{-n/2} [n/2] lambda^n z
        Vec v = lam_z(n);
        return vec_scale(v, ctx->qpow_half(-long(n)) * ctx->qnum_half(long(n)));
      }
      case Leg::F: {
        Vec v = lam_d(n);
        return vec_scale(v, -(ctx->qpow_half(long(n)) * ctx->qnum_half(long(n))));
      }
    }
    return {};
  }
  Vec on_d(Leg g, uint32_t n) const {
    switch (g) {
      case Leg::One: return mono_pow(2, n);
      case Leg::K: return vec_scale(mono_pow(2, n), ctx->qpow(-2 * long(n)));
      case Leg::Kinv: return vec_scale(mono_pow(2, n), ctx->qpow(2 * long(n)));
      case Leg::E: {
        if (n == 0) return {};
        return vec_scale(mono_pow(2, n - 1), ctx->qpow(1 - long(n)) * ctx->qnum(long(n)));
      }
      case Leg::F:
        return vec_scale(mono_pow(2, n + 1), -(ctx->qpow(long(n)) * ctx->qnum(long(n))));
    }
    return {};
  }

  // z^n, lambda^n, partial^n and the mixed monomials used above
  Vec mono_pow(uint32_t var, uint32_t n) const {
    std::vector<uint32_t> e(oa->ngens(), 0);
    uint32_t slot = with_lambda ? var : (var == 2 ? 1 : 0);
    if (!with_lambda && var == 1) throw std::logic_error("no lambda in C_q[z,d]");
    if (n >= oa->gen_spec(slot).order) {
      if (oa->gen_spec(slot).cyclic)
        e[slot] = n % oa->gen_spec(slot).order;
      else
        return {};
    } else {
      e[slot] = n;
    }
    return vec_unit(oa->mono(e), ctx->one());
  }
  Vec lam_z(uint32_t n) const {  // lambda^n z
    std::vector<uint32_t> e(oa->ngens(), 0);
    e[0] = 1;
    e[1] = n % oa->gen_spec(1).order;
    return vec_unit(oa->mono(e), ctx->one());
  }
  Vec lam_d(uint32_t n) const {  // lambda^n partial
    std::vector<uint32_t> e(oa->ngens(), 0);
    e[1] = n % oa->gen_spec(1).order;
    e[2] = 1;
    return vec_unit(oa->mono(e), ctx->one());
  }
};

// action of one U-bar generator on every basis monomial, via the 3-fold legs
std::vector<Vec> generator_rows(PureTables& tab, OrderedAlgebra& oa, char gen) {
  // legs of Delta^2 for E, F, K, K^{-1}
  std::vector<std::array<Leg, 3>> legs;
  if (gen == 'E')
    legs = {{Leg::E, Leg::K, Leg::K}, {Leg::One, Leg::E, Leg::K}, {Leg::One, Leg::One, Leg::E}};
  else if (gen == 'F')
    legs = {{Leg::F, Leg::One, Leg::One},
            {Leg::Kinv, Leg::F, Leg::One},
            {Leg::Kinv, Leg::Kinv, Leg::F}};
  else if (gen == 'K')
    legs = {{Leg::K, Leg::K, Leg::K}};
  else
    legs = {{Leg::Kinv, Leg::Kinv, Leg::Kinv}};

  std::vector<Vec> rows(oa.dim());
  for (uint32_t x = 0; x < oa.dim(); ++x) {
    auto e = oa.exponents(x);
    uint32_t a = e[0], b = tab.with_lambda ? e[1] : 0, c = tab.with_lambda ? e[2] : e[1];
    VecAcc acc;
    for (const auto& L : legs) {
      // without a lambda part the middle leg is hit by the counit
      if (!tab.with_lambda && (L[1] == Leg::E || L[1] == Leg::F)) continue;
      Vec t = tab.on_z(L[0], a);
      if (t.empty()) continue;
      if (tab.with_lambda) {
        Vec tl = tab.on_lam(L[1], b);
        if (tl.empty()) continue;
        t = oa.mul(t, tl);
      }
      Vec td = tab.on_d(L[2], c);
      if (td.empty()) continue;
      t = oa.mul(t, td);
      for (const auto& [i, v] : t) acc.add(i, v);
    }
    rows[x] = acc.take();
  }
  return rows;
}

// rows for every U-bar basis element by composing generator operators
BilinMap compose_action(const UqBundle& Uq, OrderedAlgebra& oa,
                        const std::vector<Vec>& rE, const std::vector<Vec>& rF,
                        const std::vector<Vec>& rK, std::shared_ptr<CycPool> pool) {
  const unsigned p = Uq.p;
  const uint32_t du = Uq.U.dim(), da = oa.dim();
  auto apply_rows = [&](const std::vector<Vec>& rows, const Vec& v) {
    VecAcc acc;
    for (const auto& [i, c] : v)
      for (const auto& [o, oc] : rows[i]) acc.add(o, oc * c);
    return acc.take();
  };
  std::vector<std::vector<Vec>> act(du, std::vector<Vec>(da));
  for (uint32_t u = 0; u < du; ++u) {
    uint32_t n = u % (2 * p), m = (u / (2 * p)) % p, l = u / (2 * p) / p;
    for (uint32_t x = 0; x < da; ++x) {
      if (l + m + n == 0) {
        act[u][x] = vec_unit(x, Uq.ctx->one());
      } else if (l > 0) {
        act[u][x] = apply_rows(rF, act[Uq.idx(l - 1, m, n)][x]);
      } else if (m > 0) {
        act[u][x] = apply_rows(rE, act[Uq.idx(0, m - 1, n)][x]);
      } else {
        act[u][x] = apply_rows(rK, act[Uq.idx(0, 0, n - 1)][x]);
      }
    }
  }
  return bilin_from_rows(du, da, da, std::move(pool),
                         [&](uint32_t u, uint32_t x) { return act[u][x]; });
}

}  // namespace

std::unique_ptr<HbarBundle> build_hbar(const UqBundle& Uq) {
  auto Hb = std::make_unique<HbarBundle>();
  const CycloCtx* ctx = Uq.ctx;
  Hb->ctx = ctx;
  Hb->p = Uq.p;
  Hb->uq = &Uq;
  const unsigned p = Uq.p, P2 = 2 * p;
  const Cyc one = ctx->one(), qmq = ctx->q_minus_qinv();

  Hb->oa = std::make_unique<OrderedAlgebra>(
      ctx, std::vector<GenSpec>{{"z", p, false}, {"lam", P2, true}, {"d", p, false}});
  Hb->oaCzd = std::make_unique<OrderedAlgebra>(
      ctx, std::vector<GenSpec>{{"z", p, false}, {"d", p, false}});
  for (OrderedAlgebra* oa : {Hb->oa.get(), Hb->oaCzd.get()}) {
    uint32_t dgen = oa->ngens() - 1;  // index of "d"
    Vec r = vec_unit(0, qmq);
    std::vector<uint32_t> zd(oa->ngens(), 0);
    zd[0] = 1;
    zd[dgen] = 1;
    r = vec_add(r, vec_unit(oa->mono(zd), ctx->qpow(-2)));
    oa->set_swap_rule(dgen, 0, r);
    if (oa->ngens() == 3) oa->set_swap_rule(2, 1, vec_unit(oa->mono({0, 1, 1}), one));
    if (oa->ngens() == 3) oa->set_swap_rule(1, 0, vec_unit(oa->mono({1, 1, 0}), one));
  }

  auto build_yd = [&](OrderedAlgebra& oa, bool with_lambda, const std::string& name) {
    YDModuleAlgebra yd;
    yd.H = &Uq.U;
    yd.name = name;
    yd.A = materialize(oa, std::make_shared<CycPool>(ctx));
    PureTables tab{ctx, p, &oa, with_lambda};
    auto rE = generator_rows(tab, oa, 'E');
    auto rF = generator_rows(tab, oa, 'F');
    auto rK = generator_rows(tab, oa, 'K');
    yd.action = compose_action(Uq, oa, rE, rF, rK, yd.A.pool);

    // coaction: delta(z^a) delta(lam^b) delta(d^c), products in U (x) A
    const uint32_t da = oa.dim(), du = Uq.U.dim();
    auto dz = [&](uint32_t m) {
      Vec2 out;
      for (uint32_t s = 0; s <= m; ++s) {
        Cyc c = ctx->qpow(long(s) * (1 - long(m))) * ctx->q_minus_qinv().pow(s) *
                ctx->qbin(m, s);
        if (s % 2 == 1) c = -c;
        Vec zz = tab.mono_pow(0, m - s);
        if (zz.empty()) continue;
        uint32_t uleg = Uq.idx(0, s, (2 * P2 - m) % P2);
        for (const auto& [i, ci] : zz) out.emplace_back(uint64_t(uleg) * da + i, c * ci);
      }
      std::sort(out.begin(), out.end(),
                [](const Ent2& a, const Ent2& b) { return a.first < b.first; });
      return out;
    };
    auto dd = [&](uint32_t m) {
      Vec2 out;
      for (uint32_t s = 0; s <= m; ++s) {
        Cyc c = ctx->qpow(long(s) * (long(m) - long(s))) * ctx->q_minus_qinv().pow(s) *
                ctx->qbin(m, s);
        Vec zz = tab.mono_pow(2, m - s);
        if (zz.empty()) continue;
        uint32_t uleg = Uq.idx(s, 0, (s + 2 * P2 - m) % P2);
        for (const auto& [i, ci] : zz) out.emplace_back(uint64_t(uleg) * da + i, c * ci);
      }
      std::sort(out.begin(), out.end(),
                [](const Ent2& a, const Ent2& b) { return a.first < b.first; });
      return out;
    };
    PairRowsBuilder prb(da, du, da, yd.A.pool);
    for (uint32_t x = 0; x < da; ++x) {
      auto e = oa.exponents(x);
      uint32_t a = e[0], b = with_lambda ? e[1] : 0, c = with_lambda ? e[2] : e[1];
      Vec2 cur = dz(a);
      if (with_lambda && b > 0) {
        // delta(lam^b) = 1 (x) lam^b
        Vec2 dl{{uint64_t(Uq.idx(0, 0, 0)) * da + oa.mono({0, b, 0}), one}};
        cur = vec2_mul(Uq.U.alg.mult, yd.A.mult, cur, dl);
      }
      cur = vec2_mul(Uq.U.alg.mult, yd.A.mult, cur, dd(c));
      std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
      for (const auto& [k, v] : cur)
        terms.push_back({{static_cast<uint32_t>(k / da), static_cast<uint32_t>(k % da)}, v});
      prb.append_row(x, terms);
    }
    yd.coaction = prb.take();
    return yd;
  };

  Hb->hbar = build_yd(*Hb->oa, true, "Hbar");
  Hb->czd = build_yd(*Hb->oaCzd, false, "C_q[z,d]");
  return Hb;
}

Report verify_hbar_truncation(const TaftBundle& T, const UqBundle& Uq, const HbarBundle& Hb) {
  Report rep;
  rep.suite = "hbar-truncation";
  const CycloCtx* ctx = T.ctx;
  const unsigned p = T.p, P2 = 2 * p, P4 = 4 * p;
  const DoubleBundle& D = *T.dbl;
  HdSpan S = make_hd_span(T);
  Truncation tr = make_truncation(T);

  // iota: Hbar monomial -> H(B*) representative z^a lam^b d^c
  auto iota = [&](uint32_t x) {
    auto e = Hb.oa->exponents(x);
    return S.cols[S.pack(e[0], e[1], e[2], 0)];
  };
  // pi: H(B*) -> Hbar (subalgebra coordinates, then lambda^{2p} = 1)
  auto pi = [&](const Vec& v) -> std::optional<Vec> {
    auto coords = S.solver->coords(v);
    if (!coords) return std::nullopt;
    VecAcc acc;
    for (const auto& [col, c] : *coords) {
      uint32_t d = col % P4, cc = (col / P4) % p, b = (col / P4 / p) % P4, a = col / P4 / p / P4;
      if (d != 0) return std::nullopt;  // not in the z,lambda,partial subalgebra
      acc.add(Hb.oa->mono({a, b % P2, cc}), c);
    }
    return acc.take();
  };

  Vec E_D = D.embed_B(T.E_B), F_D = D.embed_Bs(T.F_Bs);
  Vec K_D = D.embed_B(T.B.alg.mul(T.k_B, T.k_B));
  Vec kapk_D = D.drinfeld.alg.mult.apply(D.embed_Bs(T.kappa_Bs), D.embed_B(T.k_B));

  {  // the ideal generator kappa k acts trivially on the subalgebra
    bool ok = true;
    std::string w;
    for (uint32_t x = 0; x < Hb.hbar.dimA() && ok; ++x) {
      auto got = pi(D.het_act(kapk_D, iota(x)));
      if (!got || !vec_eq(*got, vec_unit(x, ctx->one()))) {
        ok = false;
        w = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("kappa-k-acts-trivially", ok, w);
  }
  {  // heterotic action truncates to the closed-form Hbar action
    struct GenPair {
      const char* name;
      const Vec* dgen;
      const Vec* ugen;
    };
    GenPair pairs[] = {{"E", &E_D, &Uq.E}, {"F", &F_D, &Uq.F}, {"K=k^2", &K_D, &Uq.K}};
    for (const auto& g : pairs) {
      bool ok = true;
      std::string w;
      for (uint32_t x = 0; x < Hb.hbar.dimA() && ok; ++x) {
        auto got = pi(D.het_act(*g.dgen, iota(x)));
        Vec want = Hb.hbar.act(*g.ugen, vec_unit(x, ctx->one()));
        if (!got || !vec_eq(*got, want)) {
          ok = false;
          w = "(x)=(" + std::to_string(x) + ")";
        }
      }
      rep.add(std::string("action-truncates-") + g.name, ok, w);
    }
  }
  {  // coaction of (3) projects to the closed-form Hbar coaction
    bool ok = true;
    std::string w;
    std::vector<std::optional<Vec>> dleg(D.dim());
    auto project_d = [&](uint32_t x) -> const std::optional<Vec>& {
      if (!dleg[x].has_value()) {
        auto c = tr.ubar->coords(tr.ideal.reduce(vec_unit(x, ctx->one())));
        if (c) dleg[x] = *c;
      }
      return dleg[x];
    };
    const uint32_t da = Hb.hbar.dimA(), du = Uq.U.dim();
    for (uint32_t x = 0; x < da && ok; ++x) {
      Vec2 down = D.coact(iota(x));
      Vec2Acc acc;
      for (const auto& [key, c] : down) {
        uint32_t didx = static_cast<uint32_t>(key / D.dim());
        uint32_t hidx = static_cast<uint32_t>(key % D.dim());
        const auto& pu = project_d(didx);
        auto ph = pi(vec_unit(hidx, ctx->one()));
        if (!pu || !ph) {
          ok = false;
          w = "(x)=(" + std::to_string(x) + ") leg outside the truncation";
          break;
        }
        for (const auto& [u, cu] : *pu)
          for (const auto& [h, ch] : *ph) acc.add(uint64_t(u) * da + h, c * cu * ch);
      }
      if (ok && !vec2_eq(acc.take(), Hb.hbar.coact_basis(x))) {
        ok = false;
        w = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("coaction-truncates", ok, w);
  }
  return rep;
}

// ------------------------------------------------------------- normal order

Vec normal_order_closed(const HbarBundle& Hb, uint32_t m, uint32_t n) {
  const CycloCtx* ctx = Hb.ctx;
  VecAcc acc;
  for (uint32_t i = 0; i <= std::min(m, n); ++i) {
    long e = -long(2 * m - i) * long(n) + long(i) * long(m) - long(i) * (long(i) - 1) / 2;
    Cyc c = ctx->qpow(e) * ctx->qbin(m, i) * ctx->qbin(n, i) * ctx->qfac(i) *
            ctx->q_minus_qinv().pow(i);
    acc.add(Hb.oaCzd->mono({n - i, m - i}), c);
  }
  return acc.take();
}

Vec normal_order_rewrite(const HbarBundle& Hb, uint32_t m, uint32_t n) {
  return Hb.oaCzd->mul_mono(Hb.oaCzd->mono({0, m}), Hb.oaCzd->mono({n, 0}));
}

Report verify_normal_order(const HbarBundle& Hb) {
  Report rep;
  rep.suite = "normal-order";
  bool ok = true;
  std::string w;
  for (uint32_t m = 0; m < Hb.p && ok; ++m)
    for (uint32_t n = 0; n < Hb.p && ok; ++n)
      if (!vec_eq(normal_order_closed(Hb, m, n), normal_order_rewrite(Hb, m, n))) {
        ok = false;
        w = "(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")";
      }
  rep.add("closed-form-vs-rewriting", ok, w);
  {
    // (1,1): partial z = (q - q^{-1}) 1 + q^{-2} z partial
    const CycloCtx* ctx = Hb.ctx;
    Vec want = vec_add(vec_unit(Hb.oaCzd->mono({0, 0}), ctx->q_minus_qinv()),
                       vec_unit(Hb.oaCzd->mono({1, 1}), ctx->qpow(-2)));
    rep.add("partial-z-relation", vec_eq(normal_order_closed(Hb, 1, 1), want));
  }
  return rep;
}

// --------------------------------------------------------- matrix realization

namespace {

// sparse matrix ops on Mat_p coordinates, entries may carry a lambda power
struct MatOps {
  const CycloCtx* ctx;
  unsigned p, nlam;  // nlam = 1 for plain Mat_p, 2p for the lambda variant
  const DenseMat *Z, *D;

  uint32_t eidx(uint32_t i, uint32_t j, uint32_t t) const { return (i * p + j) * nlam + t; }
  // left multiplication by a constant matrix
  Vec mul_left(const DenseMat& A, const Vec& v) const {
    VecAcc acc;
    for (const auto& [x, c] : v) {
      uint32_t t = x % nlam, j = (x / nlam) % p, k = x / nlam / p;
      for (uint32_t i = 0; i < p; ++i)
        if (!A.at(i, k).is_zero()) acc.add(eidx(i, j, t), A.at(i, k) * c);
    }
    return acc.take();
  }
  Vec mul_right(const Vec& v, const DenseMat& A) const {
    VecAcc acc;
    for (const auto& [x, c] : v) {
      uint32_t t = x % nlam, k = (x / nlam) % p, i = x / nlam / p;
      for (uint32_t j = 0; j < p; ++j)
        if (!A.at(k, j).is_zero()) acc.add(eidx(i, j, t), A.at(k, j) * c);
    }
    return acc.take();
  }
  Vec opK(const Vec& v, bool inv) const {
    Vec out;
    out.reserve(v.size());
    for (const auto& [x, c] : v) {
      uint32_t t = x % nlam, j = (x / nlam) % p, i = x / nlam / p;
      long e = 2 * (long(i) - long(j)) - long(t);  // K |> lambda^t e_ij
      out.emplace_back(x, c * ctx->qpow(inv ? -e : e));
    }
    return out;
  }
  Vec opE(const Vec& v) const {
    Cyc inv_qmq = ctx->q_minus_qinv().inv();
    Vec a = mul_right(v, *Z);
    Vec b = mul_left(*Z, opK(v, false));
    return vec_scale(vec_add(a, vec_scale(b, -ctx->one())), inv_qmq);
  }
  Vec opF(const Vec& v) const {
    Cyc inv_qmq = ctx->q_minus_qinv().inv();
    Vec a = mul_left(*D, v);
    Vec b = mul_right(opK(v, true), *D);
    return vec_scale(vec_add(a, vec_scale(b, -ctx->one())), inv_qmq);
  }
};

// generic composition of generator operators over the U-bar PBW basis
BilinMap compose_action_generic(const UqBundle& Uq, uint32_t da,
                                const std::function<Vec(const Vec&)>& fE,
                                const std::function<Vec(const Vec&)>& fF,
                                const std::function<Vec(const Vec&)>& fK,
                                std::shared_ptr<CycPool> pool) {
  const unsigned p = Uq.p;
  const uint32_t du = Uq.U.dim();
  std::vector<std::vector<Vec>> act(du, std::vector<Vec>(da));
  for (uint32_t u = 0; u < du; ++u) {
    uint32_t n = u % (2 * p), m = (u / (2 * p)) % p, l = u / (2 * p) / p;
    for (uint32_t x = 0; x < da; ++x) {
      if (l + m + n == 0)
        act[u][x] = vec_unit(x, Uq.ctx->one());
      else if (l > 0)
        act[u][x] = fF(act[Uq.idx(l - 1, m, n)][x]);
      else if (m > 0)
        act[u][x] = fE(act[Uq.idx(0, m - 1, n)][x]);
      else
        act[u][x] = fK(act[Uq.idx(0, 0, n - 1)][x]);
    }
  }
  return bilin_from_rows(du, da, da, std::move(pool),
                         [&](uint32_t u, uint32_t x) { return act[u][x]; });
}

}  // namespace

std::unique_ptr<MatRealization> build_matrix_realization(const UqBundle& Uq,
                                                         const HbarBundle& Hb) {
  auto M = std::make_unique<MatRealization>();
  const CycloCtx* ctx = Uq.ctx;
  M->ctx = ctx;
  M->p = Uq.p;
  M->uq = &Uq;
  const unsigned p = Uq.p, P2 = 2 * p;
  const Cyc one = ctx->one(), qmq = ctx->q_minus_qinv();

  M->Z = DenseMat(p, p, ctx);
  for (uint32_t i = 1; i < p; ++i) M->Z.at(i, i - 1) = one;
  M->D = DenseMat(p, p, ctx);
  for (uint32_t i = 0; i + 1 < p; ++i)
    M->D.at(i, i + 1) = qmq * ctx->qpow(-long(i)) * ctx->qnum(long(i) + 1);

  // rho: z^a d^c -> Z^a D^c, columns indexed like the C_q[z,d] basis a*p + c
  M->rho = DenseMat(p * p, p * p, ctx);
  {
    DenseMat Za(p, p, ctx);
    for (uint32_t i = 0; i < p; ++i) Za.at(i, i) = one;
    for (uint32_t a = 0; a < p; ++a) {
      DenseMat cur = Za;
      for (uint32_t c = 0; c < p; ++c) {
        for (uint32_t i = 0; i < p; ++i)
          for (uint32_t j = 0; j < p; ++j) M->rho.at(i * p + j, a * p + c) = cur.at(i, j);
        cur = mat_mul(cur, M->D, ctx);
      }
      Za = mat_mul(M->Z, Za, ctx);
    }
  }
  auto rinv = dense_inverse(M->rho, ctx);
  if (!rinv)
    throw std::runtime_error(
        "rho is rank-deficient: C_q[z,d] -> Mat_p is not an isomorphism here");
  M->rho_inv = std::move(*rinv);

  auto build_mat_yd = [&](uint32_t nlam, const std::string& name) {
    YDModuleAlgebra yd;
    yd.H = &Uq.U;
    yd.name = name;
    yd.A.ctx = ctx;
    yd.A.pool = std::make_shared<CycPool>(ctx);
    const uint32_t da = p * p * nlam;
    yd.A.space.dim = da;
    for (uint32_t i = 0; i < p; ++i)
      for (uint32_t j = 0; j < p; ++j)
        for (uint32_t t = 0; t < nlam; ++t) {
          std::string lbl = pow_label("lam", t);
          std::string e = "e" + std::to_string(i + 1) + std::to_string(j + 1);
          yd.A.space.labels.push_back(lbl.empty() ? e : lbl + "*" + e);
        }
    yd.A.space.validate();

    MatOps ops{ctx, p, nlam, &M->Z, &M->D};
    BilinBuilder bb(da, da, da, yd.A.pool);
    for (uint32_t x = 0; x < da; ++x) {
      uint32_t t = x % nlam, jx = (x / nlam) % p, ix = x / nlam / p;
      for (uint32_t y = 0; y < da; ++y) {
        uint32_t s = y % nlam, jy = (y / nlam) % p, iy = y / nlam / p;
        Vec row;
        if (jx == iy) row = vec_unit(ops.eidx(ix, jy, (t + s) % nlam), one);
        bb.append_row(x, y, row);
      }
    }
    yd.A.mult = bb.take();
    {
      VecAcc u;
      for (uint32_t i = 0; i < p; ++i) u.add(ops.eidx(i, i, 0), one);
      yd.A.unit = u.take();
    }
    yd.action = compose_action_generic(
        Uq, da, [&ops](const Vec& v) { return ops.opE(v); },
        [&ops](const Vec& v) { return ops.opF(v); },
        [&ops](const Vec& v) { return ops.opK(v, false); }, yd.A.pool);

    // coaction: delta(Z), delta(D) per the displayed formulas, extended as an
    // algebra comodule map, then moved to the e_ij basis through rho
    const uint32_t du = Uq.U.dim();
    Vec2 dZ, dD;
    {
      Vec2Acc az, ad;
      uint32_t kinv = Uq.idx(0, 0, P2 - 1), ekinv = Uq.idx(0, 1, P2 - 1);
      uint32_t fidx = Uq.idx(1, 0, 0);
      for (uint32_t i = 1; i < p; ++i) az.add(uint64_t(kinv) * da + ops.eidx(i, i - 1, 0), one);
      for (uint32_t i = 0; i < p; ++i)
        az.add(uint64_t(ekinv) * da + ops.eidx(i, i, 0), -qmq);
      for (uint32_t i = 0; i + 1 < p; ++i)
        ad.add(uint64_t(kinv) * da + ops.eidx(i, i + 1, 0), M->D.at(i, i + 1));
      for (uint32_t i = 0; i < p; ++i) ad.add(uint64_t(fidx) * da + ops.eidx(i, i, 0), qmq);
      dZ = az.take();
      dD = ad.take();
    }
    Vec2 unit2;
    {
      Vec2Acc u2;
      for (const auto& [uu, cu] : Uq.U.alg.unit)
        for (const auto& [aa, ca] : yd.A.unit) u2.add(uint64_t(uu) * da + aa, cu * ca);
      unit2 = u2.take();
    }
    std::vector<Vec2> dmono(p * p);
    {
      Vec2 Zpow = unit2;
      for (uint32_t a = 0; a < p; ++a) {
        Vec2 cur = Zpow;
        for (uint32_t c = 0; c < p; ++c) {
          dmono[a * p + c] = cur;
          cur = vec2_mul(Uq.U.alg.mult, yd.A.mult, cur, dD);
        }
        Zpow = vec2_mul(Uq.U.alg.mult, yd.A.mult, Zpow, dZ);
      }
    }
    PairRowsBuilder prb(da, du, da, yd.A.pool);
    for (uint32_t x = 0; x < da; ++x) {
      uint32_t t = x % nlam, eix = x / nlam;
      Vec2Acc acc;
      for (uint32_t m = 0; m < p * p; ++m) {
        const Cyc& c = M->rho_inv.at(m, eix);
        if (c.is_zero()) continue;
        for (const auto& [key, v] : dmono[m]) {
          uint32_t uleg = static_cast<uint32_t>(key / da);
          uint32_t aleg = static_cast<uint32_t>(key % da);
          acc.add(uint64_t(uleg) * da + (aleg + t), v * c);  // reattach lambda^t
        }
      }
      std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
      for (const auto& [k, v] : acc.take())
        terms.push_back({{static_cast<uint32_t>(k / da), static_cast<uint32_t>(k % da)}, v});
      prb.append_row(x, terms);
    }
    yd.coaction = prb.take();
    return yd;
  };

  M->mat = build_mat_yd(1, "Mat_p");
  M->matlam = build_mat_yd(P2, "Mat_p(C_2p[lam])");
  return M;
}

Report verify_matrix_realization(const HbarBundle& Hb, const MatRealization& M) {
  Report rep;
  rep.suite = "matrix-iso";
  const CycloCtx* ctx = M.ctx;
  const unsigned p = M.p, P2 = 2 * p;
  const UqBundle& Uq = *M.uq;
  const uint32_t dm = p * p, du = Uq.U.dim();

  auto rho_vec = [&](const Vec& v) {  // C_q[z,d] coords -> Mat_p coords
    VecAcc acc;
    for (const auto& [m, c] : v)
      for (uint32_t e = 0; e < dm; ++e)
        if (!M.rho.at(e, m).is_zero()) acc.add(e, M.rho.at(e, m) * c);
    return acc.take();
  };

  rep.add("rho-invertible", true, "rank=" + std::to_string(dm));
  {
    bool ok = true;
    std::string w;
    for (uint32_t i = 0; i < dm && ok; ++i)
      for (uint32_t j = 0; j < dm && ok; ++j) {
        Vec lhs = rho_vec(Hb.czd.A.mult.row(i, j));
        Vec rhs = M.mat.A.mul(rho_vec(vec_unit(i, ctx->one())), rho_vec(vec_unit(j, ctx->one())));
        if (!vec_eq(lhs, rhs)) {
          ok = false;
          w = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    rep.add("rho-multiplicative", ok, w);
  }
  rep.add("rho-unit", vec_eq(rho_vec(Hb.czd.A.unit), M.mat.A.unit));

  {  // D Z - q^{-2} Z D = (q - q^{-1}) Id
    DenseMat lhs = mat_mul(M.D, M.Z, ctx);
    DenseMat zd = mat_mul(M.Z, M.D, ctx);
    bool ok = true;
    for (uint32_t i = 0; i < p && ok; ++i)
      for (uint32_t j = 0; j < p && ok; ++j) {
        Cyc want = i == j ? ctx->q_minus_qinv() : ctx->zero();
        if (!(lhs.at(i, j) - ctx->qpow(-2) * zd.at(i, j) == want)) ok = false;
      }
    rep.add("DZ-qm2-ZD-identity", ok);
  }

  {  // action transport for every U-bar basis element
    bool ok = true;
    std::string w;
    for (uint32_t u = 0; u < du && ok; ++u)
      for (uint32_t x = 0; x < dm && ok; ++x) {
        Vec lhs = rho_vec(Hb.czd.action.row(u, x));
        Vec rhs = M.mat.action.apply(vec_unit(u, ctx->one()), rho_vec(vec_unit(x, ctx->one())));
        if (!vec_eq(lhs, rhs)) {
          ok = false;
          w = "(u,x)=(" + std::to_string(u) + "," + std::to_string(x) + ")";
        }
      }
    rep.add("action-transport", ok, w);
  }
  {  // coaction transport
    bool ok = true;
    std::string w;
    for (uint32_t x = 0; x < dm && ok; ++x) {
      Vec2Acc lhs;
      for (size_t e = Hb.czd.coaction.begin(x); e < Hb.czd.coaction.end(x); ++e) {
        Cyc c = Hb.czd.coaction.pool->at(Hb.czd.coaction.cid[e]);
        Vec rr = rho_vec(vec_unit(Hb.czd.coaction.k[e], ctx->one()));
        for (const auto& [i, ci] : rr)
          lhs.add(uint64_t(Hb.czd.coaction.j[e]) * dm + i, ci * c);
      }
      Vec2 rhs = M.mat.coact(rho_vec(vec_unit(x, ctx->one())));
      if (!vec2_eq(lhs.take(), rhs)) {
        ok = false;
        w = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("coaction-transport", ok, w);
  }

  // lambda variant: rho extended by lambda -> lambda
  auto rho_lam = [&](uint32_t hidx) {  // Hbar basis mono -> matlam coords
    auto e = Hb.oa->exponents(hidx);
    Vec zr = rho_vec(vec_unit(Hb.oaCzd->mono({e[0], e[2]}), ctx->one()));
    Vec out;
    for (const auto& [m, c] : zr) out.emplace_back(m * P2 + e[1], c);
    return out;
  };
  auto rho_lam_vec = [&](const Vec& v) {
    VecAcc acc;
    for (const auto& [i, c] : v) acc.add_scaled(rho_lam(i), c);
    return acc.take();
  };
  {
    bool okm = true, oka = true, okc = true;
    std::string wm, wa, wc;
    const uint32_t dh = Hb.hbar.dimA();
    for (uint32_t i = 0; i < dh && okm; ++i)
      for (uint32_t j = 0; j < dh && okm; ++j) {
        Vec lhs = rho_lam_vec(Hb.hbar.A.mult.row(i, j));
        Vec rhs = M.matlam.A.mul(rho_lam(i), rho_lam(j));
        if (!vec_eq(lhs, rhs)) {
          okm = false;
          wm = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    for (uint32_t u = 0; u < du && oka; ++u)
      for (uint32_t x = 0; x < dh && oka; ++x) {
        Vec lhs = rho_lam_vec(Hb.hbar.action.row(u, x));
        Vec rhs = M.matlam.action.apply(vec_unit(u, ctx->one()), rho_lam(x));
        if (!vec_eq(lhs, rhs)) {
          oka = false;
          wa = "(u,x)=(" + std::to_string(u) + "," + std::to_string(x) + ")";
        }
      }
    const uint32_t dml = M.matlam.dimA();
    for (uint32_t x = 0; x < dh && okc; ++x) {
      Vec2Acc lhs;
      for (size_t e = Hb.hbar.coaction.begin(x); e < Hb.hbar.coaction.end(x); ++e) {
        Cyc c = Hb.hbar.coaction.pool->at(Hb.hbar.coaction.cid[e]);
        for (const auto& [i, ci] : rho_lam(Hb.hbar.coaction.k[e]))
          lhs.add(uint64_t(Hb.hbar.coaction.j[e]) * dml + i, ci * c);
      }
      Vec2 rhs = M.matlam.coact(rho_lam(x));
      if (!vec2_eq(lhs.take(), rhs)) {
        okc = false;
        wc = "(x)=(" + std::to_string(x) + ")";
      }
    }
    rep.add("rho-lambda-multiplicative", okm, wm);
    rep.add("rho-lambda-action", oka, wa);
    rep.add("rho-lambda-coaction", okc, wc);
  }
  return rep;
}

// ------------------------------------------------------------ worked examples

Report verify_worked_examples(const HbarBundle& Hb, const MatRealization& M, uint64_t seed) {
  Report rep;
  rep.suite = "worked-examples";
  rep.seed = seed;
  const CycloCtx* ctx = M.ctx;
  const unsigned p = M.p, P2 = 2 * p;
  const UqBundle& Uq = *M.uq;

  if (p == 3) {  // the F-action display on lambda-dependent 3x3 matrices
    auto el = [&](uint32_t i, uint32_t j, uint32_t t) {  // 1-based e_ij with lambda^t
      return (uint32_t)(((i - 1) * p + (j - 1)) * P2 + t);
    };
    auto q = [&](long e) { return ctx->qpow(e); };
    bool ok = true;
    std::string w;
    for (uint32_t n = 0; n < P2 && ok; ++n) {
      struct Expect {
        uint32_t k, l;
        Vec want;
      };
      std::vector<Expect> cells = {
          {1, 1, vec_unit(el(1, 2, n), -q(long(n)))},
          {1, 2, vec_unit(el(1, 3, n), q(long(n) - 2))},
          {2, 1, vec_add(vec_unit(el(1, 1, n), ctx->one()), vec_unit(el(2, 2, n), -q(long(n) - 2)))},
          {2, 2, vec_add(vec_unit(el(1, 2, n), ctx->one()), vec_unit(el(2, 3, n), q(long(n) - 4)))},
          {2, 3, vec_unit(el(1, 3, n), ctx->one())},
          {3, 1, vec_add(vec_unit(el(2, 1, n), q(-1)), vec_unit(el(3, 2, n), -q(long(n) + 2)))},
          {3, 2, vec_add(vec_unit(el(2, 2, n), q(-1)), vec_unit(el(3, 3, n), q(long(n))))},
          {3, 3, vec_unit(el(2, 3, n), q(-1))},
      };
      for (const auto& c : cells) {
        Vec got = M.matlam.action.apply(Uq.F, vec_unit(el(c.k, c.l, n), ctx->one()));
        if (!vec_eq(got, c.want)) {
          ok = false;
          w = "(k,l,n)=(" + std::to_string(c.k) + "," + std::to_string(c.l) + "," +
              std::to_string(n) + ")";
          break;
        }
      }
    }
    rep.add("F-action-display", ok, w);
    {  // bottom-left entry of the display is identically zero
      bool zero_ok = true;
      for (uint32_t x = 0; x < M.matlam.dimA() && zero_ok; ++x) {
        Vec got = M.matlam.action.apply(Uq.F, vec_unit(x, ctx->one()));
        for (const auto& [i, c] : got)
          if (i / P2 == uint32_t((3 - 1) * p + (1 - 1))) zero_ok = false;
      }
      rep.add("F-action-display-entry-31-zero", zero_ok);
    }
  }

  if (p == 2) {
    const uint32_t dm = p * p;
    auto e = [&](uint32_t i, uint32_t j) { return (i - 1) * p + (j - 1); };  // 1-based
    auto U = [&](std::initializer_list<std::pair<Vec, Cyc>> terms) {
      VecAcc acc;
      for (const auto& [v, c] : terms)
        for (const auto& [i, ci] : v) acc.add(i, ci * c);
      return acc.take();
    };
    const Cyc one = ctx->one(), two_i = ctx->q_minus_qinv();  // 2i = q - q^{-1} at q = i
    Vec uone = Uq.U.alg.unit;
    auto umul = [&](const Vec& a, const Vec& b) { return Uq.U.alg.mul(a, b); };
    Vec K2 = umul(Uq.K, Uq.K), K3 = umul(K2, Uq.K);
    Vec EF = umul(Uq.E, Uq.F);
    Vec EFK3 = umul(EF, K3), EK3 = umul(Uq.E, K3), EK2 = umul(Uq.E, K2), FK3 = umul(Uq.F, K3);

    {  // the p=2 coaction display, column by column
      struct Cell {
        uint32_t src;  // x_kl index
        uint32_t dst;  // matrix position of the displayed entry
        Vec coeff;     // U-bar element
      };
      std::vector<Cell> cells;
      auto add = [&](uint32_t si, uint32_t sj, uint32_t di, uint32_t dj, const Vec& c) {
        cells.push_back({e(si, sj), e(di, dj), c});
      };
      // entry (1,1)
      add(1, 1, 1, 1, U({{uone, one}, {EFK3, -two_i}}));
      add(1, 2, 1, 1, Uq.F);
      add(2, 1, 1, 1, vec_scale(EK3, -two_i));
      add(2, 2, 1, 1, vec_scale(EFK3, two_i));
      // entry (1,2)
      add(1, 1, 1, 2, vec_scale(EK2, two_i));
      add(1, 2, 1, 2, K3);
      add(2, 2, 1, 2, vec_scale(EK2, -two_i));
      // entry (2,1)
      add(1, 1, 2, 1, FK3);
      add(2, 1, 2, 1, K3);
      add(2, 2, 2, 1, vec_scale(FK3, -one));
      // entry (2,2)
      add(1, 1, 2, 2, U({{uone, one}, {K2, -one}, {EFK3, -two_i}}));
      add(1, 2, 2, 2, Uq.F);
      add(2, 1, 2, 2, vec_scale(EK3, -two_i));
      add(2, 2, 2, 2, U({{K2, one}, {EFK3, two_i}}));

      bool ok = true;
      std::string w;
      for (uint32_t src = 0; src < dm && ok; ++src) {
        Vec2Acc want;
        for (const auto& c : cells)
          if (c.src == src)
            for (const auto& [u, cu] : c.coeff) want.add(uint64_t(u) * dm + c.dst, cu);
        if (!vec2_eq(M.mat.coact_basis(src), want.take())) {
          ok = false;
          w = "(x)=(" + std::to_string(src) + ")";
        }
      }
      rep.add("coaction-display", ok, w);
    }

    {  // the braided-commutativity expansion display
      const Cyc i_half = ctx->zeta(2) * ctx->from_rat(make_rat(1, 2));  // i/2
      const Cyc two_i_c = two_i;
      // term k: A[k] maps Y, B[k] maps X; entries (out, in, coeff)
      using Triple = std::tuple<uint32_t, uint32_t, Cyc>;
      auto T = [&](std::initializer_list<Triple> a, std::initializer_list<Triple> b) {
        return std::make_pair(std::vector<Triple>(a), std::vector<Triple>(b));
      };
      std::vector<std::pair<std::vector<Triple>, std::vector<Triple>>> terms = {
          T({{e(1, 1), e(1, 1), one},
             {e(1, 2), e(1, 2), -one},
             {e(2, 1), e(2, 1), -one},
             {e(2, 2), e(2, 2), one}},
            {{e(1, 2), e(1, 2), one}, {e(2, 1), e(2, 1), one}}),
          T({{e(1, 1), e(1, 1), one},
             {e(1, 2), e(1, 2), one},
             {e(2, 1), e(2, 1), one},
             {e(2, 2), e(2, 2), one}},
            {{e(1, 1), e(1, 1), one}, {e(2, 2), e(2, 2), one}}),
          T({{e(1, 1), e(1, 2), -i_half},
             {e(2, 2), e(1, 2), -i_half},
             {e(2, 1), e(1, 1), i_half},
             {e(2, 1), e(2, 2), -i_half}},
            {{e(1, 2), e(1, 1), two_i_c}, {e(1, 2), e(2, 2), -two_i_c}}),
          T({{e(1, 1), e(1, 2), i_half},
             {e(2, 2), e(1, 2), i_half},
             {e(2, 1), e(1, 1), i_half},
             {e(2, 1), e(2, 2), -i_half}},
            {{e(1, 1), e(2, 1), -two_i_c}, {e(2, 2), e(2, 1), -two_i_c}}),
          T({{e(1, 1), e(2, 1), one},
             {e(2, 2), e(2, 1), one},
             {e(1, 2), e(1, 1), one},
             {e(1, 2), e(2, 2), -one}},
            {{e(2, 1), e(2, 2), one}, {e(2, 1), e(1, 1), -one}}),
          T({{e(1, 1), e(2, 1), one},
             {e(2, 2), e(2, 1), one},
             {e(1, 2), e(2, 2), one},
             {e(1, 2), e(1, 1), -one}},
            {{e(1, 1), e(1, 2), one}, {e(2, 2), e(1, 2), one}}),
          T({{e(1, 1), e(2, 2), i_half},
             {e(1, 1), e(1, 1), -i_half},
             {e(2, 2), e(2, 2), i_half},
             {e(2, 2), e(1, 1), -i_half}},
            {{e(1, 1), e(1, 1), two_i_c},
             {e(1, 1), e(2, 2), -two_i_c},
             {e(2, 2), e(1, 1), two_i_c},
             {e(2, 2), e(2, 2), -two_i_c}}),
      };
      bool ok = true;
      std::string w;
      for (uint32_t xb = 0; xb < dm && ok; ++xb)
        for (uint32_t yb = 0; yb < dm && ok; ++yb) {
          // LHS: (X_{(-1)} |> Y) (x) X_{(0)} for X = e_xb, Y = e_yb
          Vec2Acc lhs;
          for (size_t f = M.mat.coaction.begin(xb); f < M.mat.coaction.end(xb); ++f) {
            Cyc c = M.mat.coaction.pool->at(M.mat.coaction.cid[f]);
            uint32_t u = M.mat.coaction.j[f], x0 = M.mat.coaction.k[f];
            for (size_t g = M.mat.action.row_begin(u, yb); g < M.mat.action.row_end(u, yb); ++g)
              lhs.add(uint64_t(M.mat.action.idx[g]) * dm + x0,
                      M.mat.action.pool->at(M.mat.action.cid[g]) * c);
          }
          Vec2Acc rhs;
          for (const auto& [A, B] : terms) {
            for (const auto& [ao, ai, ac] : A) {
              if (ai != yb) continue;
              for (const auto& [bo, bi, bc] : B) {
                if (bi != xb) continue;
                rhs.add(uint64_t(ao) * dm + bo, ac * bc);
              }
            }
          }
          if (!vec2_eq(lhs.take(), rhs.take())) {
            ok = false;
            w = "(X,Y)=(" + std::to_string(xb) + "," + std::to_string(yb) + ")";
          }
        }
      rep.add("braided-comm-expansion-display", ok, w);
    }
  }

  {  // the expansion contracts to XY on random matrices
    Rng rng(seed ? seed : 7);
    bool ok = true;
    std::string w;
    const uint32_t dm = M.mat.dimA();
    for (int trial = 0; trial < 20 && ok; ++trial) {
      VecAcc xa, ya;
      for (uint32_t i = 0; i < dm; ++i) {
        xa.add(i, ctx->from_long(long(rng.below(7)) - 3));
        ya.add(i, ctx->from_long(long(rng.below(7)) - 3));
      }
      Vec X = xa.take(), Y = ya.take();
      VecAcc contracted;
      Vec2 cx = M.mat.coact(X);
      for (const auto& [key, c] : cx) {
        uint32_t u = static_cast<uint32_t>(key / dm), x0 = static_cast<uint32_t>(key % dm);
        Vec moved = M.mat.action.apply(vec_unit(u, ctx->one()), Y);
        for (const auto& [i, ci] : M.mat.A.mul(moved, vec_unit(x0, ctx->one())))
          contracted.add(i, ci * c);
      }
      if (!vec_eq(contracted.take(), M.mat.A.mul(X, Y))) {
        ok = false;
        w = "trial " + std::to_string(trial);
      }
    }
    rep.add("expansion-contracts-to-XY", ok, w);
  }
  return rep;
}

// ------------------------------------------------------------ truncated chains

std::unique_ptr<TruncFactors> build_trunc_factors(const HbarBundle& Hb) {
  auto F = std::make_unique<TruncFactors>();
  const CycloCtx* ctx = Hb.ctx;
  const unsigned p = Hb.p;
  const UqBundle& Uq = *Hb.uq;

  auto restrict_var = [&](bool z_side, const std::string& name) {
    YDModuleAlgebra yd;
    yd.H = &Uq.U;
    yd.name = name;
    yd.A.ctx = ctx;
    yd.A.pool = std::make_shared<CycPool>(ctx);
    yd.A.space.dim = p;
    for (uint32_t a = 0; a < p; ++a)
      yd.A.space.labels.push_back(pow_label(z_side ? "z" : "d", a).empty()
                                      ? "1"
                                      : pow_label(z_side ? "z" : "d", a));
    yd.A.space.validate();
    // czd index of the generator power a
    auto czd_idx = [&](uint32_t a) { return z_side ? Hb.idxCzd(a, 0) : Hb.idxCzd(0, a); };
    auto from_czd = [&](const Vec& v) {
      VecAcc acc;
      for (const auto& [i, c] : v) {
        uint32_t a = i / p, cc = i % p;
        uint32_t pure = z_side ? a : cc;
        if ((z_side && cc != 0) || (!z_side && a != 0))
          throw std::logic_error("restriction left the single-variable subalgebra");
        acc.add(pure, c);
      }
      return acc.take();
    };
    BilinBuilder bb(p, p, p, yd.A.pool);
    for (uint32_t a = 0; a < p; ++a)
      for (uint32_t b = 0; b < p; ++b)
        bb.append_row(a, b, a + b < p ? vec_unit(a + b, ctx->one()) : Vec{});
    yd.A.mult = bb.take();
    yd.A.unit = vec_unit(0, ctx->one());
    yd.action = bilin_from_rows(Uq.U.dim(), p, p, yd.A.pool, [&](uint32_t u, uint32_t a) {
      return from_czd(Hb.czd.action.row(u, czd_idx(a)));
    });
    PairRowsBuilder prb(p, Uq.U.dim(), p, yd.A.pool);
    for (uint32_t a = 0; a < p; ++a) {
      std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> terms;
      for (size_t e = Hb.czd.coaction.begin(czd_idx(a)); e < Hb.czd.coaction.end(czd_idx(a)); ++e) {
        Vec aleg = from_czd(Vec{{Hb.czd.coaction.k[e], ctx->one()}});
        for (const auto& [i, c] : aleg)
          terms.push_back({{Hb.czd.coaction.j[e], i},
                           Hb.czd.coaction.pool->at(Hb.czd.coaction.cid[e]) * c});
      }
      prb.append_row(a, terms);
    }
    yd.coaction = prb.take();
    return yd;
  };
  F->cz = restrict_var(true, "C_p[z]");
  F->cd = restrict_var(false, "C_p*[d]");
  return F;
}

std::vector<const YDModuleAlgebra*> trunc_chain_factors(const TruncFactors& F, uint32_t n) {
  std::vector<const YDModuleAlgebra*> out;
  for (uint32_t slot = 1; slot <= n; ++slot)
    out.push_back(slot % 2 == 1 ? &F.cd : &F.cz);
  return out;
}

}  // namespace hopfforge
