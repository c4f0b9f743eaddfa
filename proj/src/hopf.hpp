#pragma once

// Finite-dimensional (Hopf) algebras as structure-constant bundles, duality,
// op/cop variants, evaluation pairing with the four regular actions, and the
// axiom verifier.  Nothing here is specific to the Taft family.

#include <functional>
#include <memory>

#include "linalg.hpp"
#include "ordalg.hpp"
#include "report.hpp"
#include "tensor.hpp"
#include "vec.hpp"

namespace hopfforge {

// elements of A (x) B, packed key = i * dimB + j
using Ent2 = std::pair<uint64_t, Cyc>;
using Vec2 = std::vector<Ent2>;

class Vec2Acc {
 public:
  void add(uint64_t key, const Cyc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc_.try_emplace(key, c);
    if (!fresh) it->second += c;
  }
  void add(uint32_t i, uint32_t j, uint64_t dim2, const Cyc& c) {
    add(uint64_t(i) * dim2 + j, c);
  }
  Vec2 take();

 private:
  std::unordered_map<uint64_t, Cyc> acc_;
};

Vec2 vec2_mul(const BilinMap& m1, const BilinMap& m2, const Vec2& a, const Vec2& b);
bool vec2_eq(const Vec2& a, const Vec2& b);
Vec2 vec2_scale(const Vec2& a, const Cyc& c);

struct Algebra {
  const CycloCtx* ctx = nullptr;
  std::shared_ptr<CycPool> pool;
  VecSpace space;
  BilinMap mult;
  Vec unit;

  uint32_t dim() const { return space.dim; }
  Vec mul(const Vec& a, const Vec& b) const { return mult.apply(a, b); }
  Vec pow(const Vec& a, uint32_t e) const;
};

struct HopfAlgebra {
  Algebra alg;
  PairRows comult;
  std::vector<Cyc> counit;  // dense
  LinMap antipode;
  LinMap antipode_inv;

  const CycloCtx* ctx() const { return alg.ctx; }
  uint32_t dim() const { return alg.dim(); }
  Vec mul(const Vec& a, const Vec& b) const { return alg.mul(a, b); }
  Cyc eps(const Vec& v) const;
  Vec2 delta(const Vec& v) const;           // in A (x) A
  Vec2 delta_basis(uint32_t i) const;
  Vec s(const Vec& v) const { return antipode.apply(v); }
  Vec s_inv(const Vec& v) const { return antipode_inv.apply(v); }
};

// --- constructions ---------------------------------------------------------

Algebra materialize(OrderedAlgebra& oa, std::shared_ptr<CycPool> pool);

struct GenHopfData {
  Vec2 delta;   // Delta(g) in A (x) A coordinates
  Cyc eps;
  Vec antipode; // S(g)
};
// Hopf structure on a presented algebra from generator data; the antipode
// inverse is obtained by exact matrix inversion.
HopfAlgebra hopf_from_presentation(OrderedAlgebra& oa, std::shared_ptr<CycPool> pool,
                                   const std::vector<GenHopfData>& gens);

LinMap invert_linmap(const LinMap& m, const CycloCtx* ctx, std::shared_ptr<CycPool> pool);

// B* on the dual basis of B's basis.
HopfAlgebra dual_hopf(const HopfAlgebra& B);

enum class OpCop { Op, Cop };
HopfAlgebra op_cop(const HopfAlgebra& H, OpCop which);

// new basis vectors are the columns of C (expressed in the old basis)
HopfAlgebra change_basis(const HopfAlgebra& H, const DenseMat& C, const DenseMat& Cinv,
                         VecSpace new_space);

// --- dual pair and regular actions ----------------------------------------

struct DualPair {
  const HopfAlgebra* B = nullptr;
  const HopfAlgebra* Bs = nullptr;
  DenseMat pairing;        // pairing.at(alpha, b) = <alpha, b>
  BilinMap lact_B_on_Bs;   // (b, beta)  -> b  ~> beta      = <beta'', b> beta'
  BilinMap ract_B_on_Bs;   // (beta, m)  -> beta <~ m       = <beta', m> beta''
  BilinMap ract_Bs_on_B;   // (b, mu)    -> b <~ mu         = <mu, b'> b''
  BilinMap lact_Bs_on_B;   // (mu, b)    -> mu ~> b         = b' <mu, b''>
};

DualPair build_dual_pair(const HopfAlgebra& B, const HopfAlgebra& Bs, DenseMat pairing);

// --- verification -----------------------------------------------------------

struct CheckPolicy {
  uint64_t exhaustive_pair_limit = 200000;    // #(i,j) at or below: exhaustive
  uint64_t exhaustive_triple_limit = 1u << 25;
  uint64_t sampled_pairs = 1000000;
  uint64_t sampled_triples = 100000;
  uint64_t seed = 1;
};

Report verify_hopf(const HopfAlgebra& H, const CheckPolicy& policy = {});
Report verify_algebra(const Algebra& A, const CheckPolicy& policy = {});

// --- tensor views and serialization ----------------------------------------

SparseTensor mult_tensor(const Algebra& A);          // [out contra, in co, in co]
SparseTensor unit_tensor(const Algebra& A);          // [contra]
SparseTensor comult_tensor(const HopfAlgebra& H);    // [in co, out contra, out contra]
SparseTensor counit_tensor(const HopfAlgebra& H);    // [co]
SparseTensor antipode_tensor(const HopfAlgebra& H);  // [out contra, in co]
SparseTensor linmap_tensor(const LinMap& m, const CycloCtx* ctx);
SparseTensor action_tensor(const BilinMap& m, const CycloCtx* ctx);  // [co, co, out contra]
BilinMap bilin_from_rows(uint32_t d1, uint32_t d2, uint32_t dout,
                         std::shared_ptr<CycPool> pool,
                         const std::function<Vec(uint32_t, uint32_t)>& row);
LinMap linmap_from_rows(uint32_t din, uint32_t dout, std::shared_ptr<CycPool> pool,
                        const std::function<Vec(uint32_t)>& row);

std::string hopf_to_json(const HopfAlgebra& H);
HopfAlgebra hopf_from_json(const CycloCtx* ctx, const std::string& json);

}  // namespace hopfforge
