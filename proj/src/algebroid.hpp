#pragma once

// Smash-product Hopf algebroid A # H for a certified braided commutative
// Yetter-Drinfeld module algebra A: counit, source/target, the base-balanced
// coproduct with its explicit linear quotient, the antipode tau, and the
// section gamma, plus the verification sweeps over all of them.

#include "taft.hpp"

namespace hopfforge {

struct Algebroid {
  const YDModuleAlgebra* A = nullptr;  // base
  const HopfAlgebra* H = nullptr;
  Algebra total;  // A # H, index a * dimH + h

  LinMap eps;     // total -> base, componentwise counit
  LinMap target;  // base -> total, t(X) = X_(0) # S^{-1}(X_(-1))
  LinMap tau;     // total -> total

  uint32_t dimA() const { return A->dimA(); }
  uint32_t dimH() const { return H->dim(); }
  uint32_t tidx(uint32_t a, uint32_t h) const { return a * dimH() + h; }

  Vec s_of(const Vec& X) const;  // X -> X # 1
  Vec t_of(const Vec& X) const { return target.apply(X); }
  Vec embed_H(const Vec& h) const;  // h -> 1 # h

  // balanced tensor product over the base: the ambient space for one fixed
  // right leg g is total (x) base (the relations never touch g), an element
  // is kept as a sparse vector over  x * dimA + Y
  using Amb = Vec;
  Amb amb_of(const Vec& left_total, const Vec& right_base) const;
  // normal form x (x) Y -> t(Y) x (x) 1, the quotient representative
  Vec project(const Amb& v) const;

  // coproduct of a total basis element: list of (left total index pairs) with
  // the componentwise formula Delta(e_a h) = (e_a h') (x)_A (1 h'')
  std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>> delta_rows(uint32_t x) const;

  // gamma((X#h) (x)_A (Y#g)) = (X t(Y) h) (x) (1#g); returns the first leg
  // for one ambient pair, the g leg is untouched
  Vec gamma_first_leg(uint32_t total_idx, uint32_t base_idx) const;

  Algebroid() = default;
  Algebroid(const Algebroid&) = delete;
  Algebroid& operator=(const Algebroid&) = delete;
};

// Rejects an uncertified base (the construction's hypotheses are exactly a
// braided commutative Yetter-Drinfeld module algebra).
std::unique_ptr<Algebroid> build_algebroid(const YDModuleAlgebra& A);

// All axiom sweeps: smash associativity, counit/source/target laws, the
// t-commutation identity, balance law in the quotient (normal form route and,
// when `gaussian` is set, the explicit row-echelon quotient as a cross-check),
// tau values and anti-multiplicativity, and the gamma condition
// m (id (x) tau) gamma Delta = s eps.  hgens are the H basis indices used for
// the h, g legs of the balance-law sweep (the generator set).
Report verify_algebroid(const Algebroid& al, uint64_t seed, bool gaussian,
                        const std::vector<uint32_t>& hgens);

// the displayed t(Z), t(D), tau(Z), tau(D) patterns for the Mat_p base
Report verify_algebroid_matp(const Algebroid& al, const MatRealization& M);

}  // namespace hopfforge
