#pragma once

// Yetter-Drinfeld machinery: the axiom checkers (module, comodule, module
// algebra, comodule algebra, the YD compatibility condition), the braiding
// and braided symmetry, braided products, the phi isomorphism, restricted
// D(B)-structures on B^{*cop} and B, and alternating chains.

#include "hopf.hpp"

namespace hopfforge {

struct DoubleBundle;  // doubles.hpp

// Left-left H-module (algebra) with a left H-coaction; action and coaction
// are structure tensors over the bases of H and A.
struct YDModuleAlgebra {
  const HopfAlgebra* H = nullptr;
  Algebra A;
  BilinMap action;    // (h, a) -> A
  PairRows coaction;  // a -> sum (h-leg, a-leg)
  std::string name;
  bool certified = false;

  uint32_t dimH() const { return H->dim(); }
  uint32_t dimA() const { return A.dim(); }
  Vec act(const Vec& h, const Vec& a) const { return action.apply(h, a); }
  Vec2 coact_basis(uint32_t a) const;  // key = h * dimA + a
  Vec2 coact(const Vec& a) const;
};

// Certification policy: exhaustive when the index-pair count fits the
// threshold, otherwise seeded sampling (the seed lands in the report).
struct YDPolicy {
  uint64_t exhaustive_pair_limit = 100000;
  uint64_t sampled_pairs = 1000000;
  uint64_t exhaustive_triple_limit = 1u << 25;
  uint64_t sampled_triples = 1000000;
  uint64_t seed = 1;
};

Report check_module(const YDModuleAlgebra& s, const YDPolicy& p = {});
Report check_comodule(const YDModuleAlgebra& s);
Report check_module_algebra(const YDModuleAlgebra& s, const YDPolicy& p = {});
Report check_comodule_algebra(const YDModuleAlgebra& s, const YDPolicy& p = {});
Report check_yd(const YDModuleAlgebra& s, const YDPolicy& p = {});
Report check_braided_commutativity(const YDModuleAlgebra& s, const YDPolicy& p = {});

// Runs every axiom suite above and flips `certified` when all pass.
Report certify(YDModuleAlgebra& s, const YDPolicy& p = {});

// c_{X,Y}: x (x) y -> (x_{(-1)} |> y) (x) x_{(0)}   as a matrix on X (x) Y
// c^{-1}_{X,Y}: y (x) x -> x_{(0)} (x) (S^{-1}(x_{(-1)}) |> y)
DenseMat braiding_matrix(const YDModuleAlgebra& X, const YDModuleAlgebra& Y);
DenseMat braiding_inverse_matrix(const YDModuleAlgebra& X, const YDModuleAlgebra& Y);
Report check_braiding_inverse(const YDModuleAlgebra& X, const YDModuleAlgebra& Y);
Report check_braided_symmetry(const YDModuleAlgebra& X, const YDModuleAlgebra& Y);

// Braided product X |><| Y per the twisted tensor composition; diagonal
// action, codiagonal coaction.  Index = x * dimY + y.
YDModuleAlgebra braided_product(const YDModuleAlgebra& X, const YDModuleAlgebra& Y,
                                const std::string& name);

// phi: X |><| Y -> Y |><| X, x |><| y -> (x_{(-1)} |> y) |><| x_{(0)}
DenseMat phi_matrix(const YDModuleAlgebra& X, const YDModuleAlgebra& Y);
Report check_phi_iso(const YDModuleAlgebra& X, const YDModuleAlgebra& Y);

// Restricted D(B)-module algebra structures on B^{*cop} and B (Theorem 2).
std::pair<YDModuleAlgebra, YDModuleAlgebra> restricted_structures(const DoubleBundle& D);

// ----- alternating chains ---------------------------------------------------

// Lazy chain: factor algebras X_1 |><| ... |><| X_n over one Hopf algebra.
// Elements are kept as sparse combinations of slot-index tuples; products are
// normal-ordered through the braided-product recursion.
class Chain {
 public:
  Chain(const HopfAlgebra* H, std::vector<const YDModuleAlgebra*> factors);

  uint32_t nfactors() const { return static_cast<uint32_t>(fac_.size()); }
  uint64_t dim() const { return dim_; }
  const YDModuleAlgebra& factor(uint32_t i) const { return *fac_[i]; }
  const HopfAlgebra* hopf() const { return H_; }

  // element of the chain carried as sparse map over packed tuples
  using CVec = std::vector<std::pair<uint64_t, Cyc>>;
  uint64_t pack(const std::vector<uint32_t>& slot_idx) const;
  std::vector<uint32_t> unpack(uint64_t key) const;

  CVec one() const;
  // generator g of factor slot (0-based), i.e. 1 x ... x g x ... x 1
  CVec slot_elem(uint32_t slot, uint32_t basis_idx) const;
  CVec mul(const CVec& a, const CVec& b) const;
  CVec act(const Vec& h, const CVec& a) const;          // diagonal action
  std::vector<std::pair<std::pair<uint32_t, uint64_t>, Cyc>> coact(const CVec& a) const;
  bool eq(const CVec& a, const CVec& b) const;
  CVec scale(const CVec& a, const Cyc& c) const;
  CVec add(const CVec& a, const CVec& b) const;

  // braided commutativity yx = (y_(-1) |> x) y_(0) searched over slot basis
  // elements; returns a witness description when a counterexample exists
  std::optional<std::string> find_braided_comm_counterexample() const;

 private:
  CVec mul_mono(uint64_t a, uint64_t b) const;
  const HopfAlgebra* H_;
  std::vector<const YDModuleAlgebra*> fac_;
  std::vector<uint64_t> strides_;
  uint64_t dim_;
};

// Materialized chain as a YDModuleAlgebra (for small n / small factors).
YDModuleAlgebra materialize_chain(const Chain& ch, const std::string& name);

}  // namespace hopfforge
