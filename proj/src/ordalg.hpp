#pragma once

// Algebras presented by ordered generators with straightening rules, e.g.
// k E = q E k or E F = F E + (k^2 - kappa^2)/(q - q^{-1}).  The basis is the
// set of ordered monomials g_0^{e_0} ... g_{r-1}^{e_{r-1}} with e_i below the
// generator's order; normal ordering is done by recursive single swaps, which
// doubles as the independent rewriting oracle for closed-form identities.

#include <optional>
#include <string>
#include <vector>

#include "vec.hpp"

namespace hopfforge {

struct GenSpec {
  std::string name;
  uint32_t order;  // exponents run over 0 .. order-1
  bool cyclic;     // g^order = wrap when cyclic, otherwise g^order = 0
  std::optional<Cyc> wrap;  // scalar value of g^order for cyclic generators (default 1)
};

class OrderedAlgebra {
 public:
  OrderedAlgebra(const CycloCtx* ctx, std::vector<GenSpec> gens);

  // value of g_hi * g_lo (hi > lo) as a normal-form element
  void set_swap_rule(uint32_t hi, uint32_t lo, Vec value);

  const CycloCtx* ctx() const { return ctx_; }
  uint32_t dim() const { return dim_; }
  uint32_t ngens() const { return static_cast<uint32_t>(gens_.size()); }
  const GenSpec& gen_spec(uint32_t g) const { return gens_[g]; }

  uint32_t mono(const std::vector<uint32_t>& exps) const;
  std::vector<uint32_t> exponents(uint32_t idx) const;
  uint32_t unit_index() const { return 0; }

  Vec one() const { return vec_unit(0, ctx_->one()); }
  Vec gen_elem(uint32_t g, uint32_t e = 1) const;
  Vec mul_mono(uint32_t a, uint32_t b);
  Vec mul(const Vec& a, const Vec& b);
  Vec power(const Vec& a, uint32_t e);

  std::string label(uint32_t idx) const;
  std::vector<std::string> labels() const;

 private:
  const Vec& times_gen(uint32_t m, uint32_t g);

  const CycloCtx* ctx_;
  std::vector<GenSpec> gens_;
  std::vector<uint32_t> strides_;
  uint32_t dim_;
  std::vector<Vec> swap_;  // hi * ngens + lo
  std::vector<char> swap_set_;
  std::vector<std::vector<std::optional<Vec>>> memo_;  // [mono][gen]
};

}  // namespace hopfforge
