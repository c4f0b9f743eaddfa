#include "engine.hpp"

namespace hopfforge {

Engine::Engine(unsigned p) : p_(p), ctx_(4 * p) {
  if (!supported_p(p)) throw std::invalid_argument("unsupported p (supported tiers: 2, 3, 5)");
}

Engine::~Engine() = default;

YDPolicy Engine::default_policy(uint64_t seed) const {
  YDPolicy pol;
  pol.seed = seed;
  return pol;
}

TaftBundle& Engine::taft() {
  if (!doubles_supported())
    throw std::invalid_argument("the double-sized bundles are built for p <= 3 only");
  if (!taft_) taft_ = build_taft(&ctx_);
  return *taft_;
}

UqBundle& Engine::uq() {
  if (!uq_) uq_ = build_uq(&ctx_);
  return *uq_;
}

HbarBundle& Engine::hbar() {
  if (!hbar_) hbar_ = build_hbar(uq());
  return *hbar_;
}

MatRealization& Engine::mat() {
  if (!mat_) mat_ = build_matrix_realization(uq(), hbar());
  return *mat_;
}

TruncFactors& Engine::trunc() {
  if (!trunc_) trunc_ = build_trunc_factors(hbar());
  return *trunc_;
}

YDModuleAlgebra& Engine::heisenberg_yd() {
  if (!hyd_) {
    hyd_ = std::make_unique<YDModuleAlgebra>(taft().dbl->heisenberg_yd());
    certify(*hyd_, default_policy(1));
  }
  return *hyd_;
}

YDModuleAlgebra& Engine::restricted_bscop() {
  if (!xs_) {
    auto [Xs, Xb] = restricted_structures(*taft().dbl);
    xs_ = std::make_unique<YDModuleAlgebra>(std::move(Xs));
    xb_ = std::make_unique<YDModuleAlgebra>(std::move(Xb));
    certify(*xs_, default_policy(1));
    certify(*xb_, default_policy(1));
  }
  return *xs_;
}

YDModuleAlgebra& Engine::restricted_b() {
  restricted_bscop();
  return *xb_;
}

void Engine::ensure_mat_certified() {
  MatRealization& M = mat();
  if (!mat_certified_) {
    certify(M.mat, default_policy(1));
    certify(M.matlam, default_policy(1));
    mat_certified_ = true;
  }
}

Algebroid& Engine::algebroid(bool with_lambda) {
  ensure_mat_certified();
  auto& slot = with_lambda ? alg_lam_ : alg_plain_;
  if (!slot) slot = build_algebroid(with_lambda ? mat().matlam : mat().mat);
  return *slot;
}

std::vector<uint32_t> Engine::ubar_generator_indices() {
  UqBundle& U = uq();
  return {U.idx(0, 0, 0), U.idx(0, 1, 0), U.idx(1, 0, 0), U.idx(0, 0, 1)};
}

std::vector<std::string> Engine::algebra_names() {
  std::vector<std::string> out{"uq", "hbar", "matp"};
  if (doubles_supported()) {
    out.insert(out.begin(), {"taft", "taftdual", "double", "heisenberg"});
  }
  return out;
}

const ExprAlgebra& Engine::algebra(const std::string& name) {
  auto it = expr_.find(name);
  if (it != expr_.end()) return *it->second;

  auto make = [&](const std::string& n) {
    auto a = std::make_unique<ExprAlgebra>();
    a->name = n;
    a->ctx = &ctx_;
    return a;
  };
  auto from_algebra = [&](std::unique_ptr<ExprAlgebra>& a, const Algebra& alg) {
    a->dim = alg.dim();
    a->labels = alg.space.labels;
    a->unit = alg.unit;
    const BilinMap* m = &alg.mult;
    a->mul = [m](const Vec& x, const Vec& y) { return m->apply(x, y); };
  };

  std::unique_ptr<ExprAlgebra> a;
  if (name == "taft") {
    TaftBundle& T = taft();
    a = make(name);
    from_algebra(a, T.B.alg);
    a->gens["E"] = T.E_B;
    a->gens["k"] = T.k_B;
  } else if (name == "taftdual") {
    TaftBundle& T = taft();
    a = make(name);
    from_algebra(a, T.Bs.alg);
    a->gens["F"] = T.F_Bs;
    a->gens["kappa"] = T.kappa_Bs;
  } else if (name == "double" || name == "heisenberg") {
    TaftBundle& T = taft();
    const ExprAlgebra& left = algebra("taftdual");
    const ExprAlgebra& right = algebra("taft");
    a = make(name);
    from_algebra(a, name == "double" ? T.dbl->drinfeld.alg : T.dbl->heisenberg);
    DoubleBundle* D = T.dbl.get();
    a->gens["E"] = D->embed_B(T.E_B);
    a->gens["k"] = D->embed_B(T.k_B);
    a->gens["F"] = D->embed_Bs(T.F_Bs);
    a->gens["kappa"] = D->embed_Bs(T.kappa_Bs);
    if (name == "heisenberg") {
      a->gens["z"] = T.z_H;
      a->gens["lam"] = T.lambda_H;
      a->gens["d"] = T.partial_H;
    }
    a->smash_left = &left;
    a->smash_right = &right;
    uint32_t db = T.B.dim();
    a->smash_combine = [db](const Vec& mu, const Vec& m) {
      VecAcc acc;
      for (const auto& [i, ci] : mu)
        for (const auto& [j, cj] : m) acc.add(i * db + j, ci * cj);
      return acc.take();
    };
  } else if (name == "uq") {
    UqBundle& U = uq();
    a = make(name);
    from_algebra(a, U.U.alg);
    a->gens["E"] = U.E;
    a->gens["F"] = U.F;
    a->gens["K"] = U.K;
  } else if (name == "hbar") {
    HbarBundle& H = hbar();
    a = make(name);
    from_algebra(a, H.hbar.A);
    a->gens["z"] = vec_unit(H.idx(1, 0, 0), ctx_.one());
    a->gens["lam"] = vec_unit(H.idx(0, 1, 0), ctx_.one());
    a->gens["d"] = vec_unit(H.idx(0, 0, 1), ctx_.one());
  } else if (name == "matp") {
    MatRealization& M = mat();
    a = make(name);
    from_algebra(a, M.mat.A);
    VecAcc z, d;
    for (uint32_t i = 1; i < p_; ++i) z.add(i * p_ + (i - 1), ctx_.one());
    for (uint32_t i = 0; i + 1 < p_; ++i) d.add(i * p_ + (i + 1), M.D.at(i, i + 1));
    a->gens["z"] = z.take();
    a->gens["d"] = d.take();
  } else {
    throw std::invalid_argument("unknown algebra name: " + name);
  }
  auto* raw = a.get();
  expr_[name] = std::move(a);
  return *raw;
}

}  // namespace hopfforge
