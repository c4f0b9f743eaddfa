#pragma once

// Drinfeld double D(B) and Heisenberg double H(B*) on B* (x) B, Lu's cocycle
// eta with its pseudo-antipode, the heterotic D(B) action on H(B*), the
// H(B*) coaction, and the cocycle-twist construction of a braided commutative
// Yetter-Drinfeld module algebra from a normal right 2-cocycle.

#include "yd.hpp"

namespace hopfforge {

// A 2-cocycle eta: H (x) H -> k together with s(h) = eta(h', h'') S(h''').
struct Cocycle {
  const HopfAlgebra* H = nullptr;
  std::unordered_map<uint64_t, Cyc> eta;  // key i * dim + j
  LinMap pseudo_antipode;

  Cyc eval(uint32_t i, uint32_t j) const;
  Cyc eval_vv(const Vec& a, const Vec& b) const;
};

struct DoubleBundle {
  const HopfAlgebra* B = nullptr;
  const HopfAlgebra* Bs = nullptr;  // B* in the working basis
  DualPair pair;

  HopfAlgebra drinfeld;   // D(B): cross product, coalgebra of B^{*cop} (x) B
  Algebra heisenberg;     // H(B*) = B* # B
  BilinMap heterotic;     // D(B) (x) H(B*) -> H(B*) action of Eq. (the-action)
  PairRows hd_coact;      // beta # b -> (beta'' (x) b') (x) (beta' # b'')
  Cocycle lu;             // Lu's eta on D(B)

  uint32_t dimB() const { return B->dim(); }
  uint32_t dimBs() const { return Bs->dim(); }
  uint32_t dim() const { return dimBs() * dimB(); }
  // basis index of mu (x) m
  uint32_t didx(uint32_t mu, uint32_t m) const { return mu * dimB() + m; }

  Vec embed_Bs(const Vec& mu) const;  // mu -> mu (x) 1
  Vec embed_B(const Vec& m) const;    // m  -> eps (x) m

  // heterotic action / pseudo-adjoint form / coaction on elements
  Vec het_act(const Vec& M, const Vec& A) const { return heterotic.apply(M, A); }
  Vec pseudo_adjoint(const Vec& M, const Vec& A) const;
  Vec2 coact(const Vec& A) const;

  // H(B*) endowed with the heterotic action and coaction (3) as a candidate
  // Yetter-Drinfeld module algebra
  YDModuleAlgebra heisenberg_yd(const std::string& name = "H(B*)") const;

  DoubleBundle() = default;
  DoubleBundle(const DoubleBundle&) = delete;
  DoubleBundle& operator=(const DoubleBundle&) = delete;
};

// Everything is generic in B: the double of any finite-dimensional Hopf
// algebra with bijective antipode, given its dual in a chosen basis.
std::unique_ptr<DoubleBundle> build_double(const HopfAlgebra& B, const HopfAlgebra& Bs,
                                           DenseMat pairing);

Cocycle lu_cocycle(const DoubleBundle& D);
Cocycle trivial_cocycle(const HopfAlgebra& H);

// All cocycle conditions of the twist theorem: normality, the 2-cocycle
// identity, the eta/s compatibility conditions in both the eta- and the
// star-product forms, and Delta(s(h)) = S(h'') (x) s(h').
Report check_cocycle_conditions(const HopfAlgebra& H, const Cocycle& eta,
                                const BilinMap& star, const YDPolicy& policy = {});

// Star-eta: the twisted product M' N' eta(M'', N'') as a bilinear map.
BilinMap star_product(const HopfAlgebra& H, const Cocycle& eta);

struct TwistResult {
  Report checks;                        // rejection report when not all pass
  std::optional<YDModuleAlgebra> yd;    // H_star when the hypotheses hold
};
// Theorem (cocycle twist): for eta passing the checks, H_star with action
// g |> h = g' * h * s(g'') and coaction Delta is a braided commutative YD
// module algebra.  The returned structure is re-certified by the yd module.
TwistResult twist_module_algebra(const HopfAlgebra& H, const Cocycle& eta,
                                 const YDPolicy& policy = {});

}  // namespace hopfforge
