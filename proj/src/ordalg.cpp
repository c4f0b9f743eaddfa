#include "ordalg.hpp"

#include <stdexcept>

namespace hopfforge {

OrderedAlgebra::OrderedAlgebra(const CycloCtx* ctx, std::vector<GenSpec> gens)
    : ctx_(ctx), gens_(std::move(gens)) {
  if (gens_.empty()) throw std::invalid_argument("presentation needs generators");
  strides_.assign(gens_.size(), 1);
  for (size_t i = gens_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * gens_[i].order;
  uint64_t d = uint64_t(strides_[0]) * gens_[0].order;
  if (d > (1u << 24)) throw std::invalid_argument("presentation algebra too large");
  dim_ = static_cast<uint32_t>(d);
  swap_.resize(gens_.size() * gens_.size());
  swap_set_.assign(gens_.size() * gens_.size(), 0);
  memo_.resize(dim_);
  for (auto& row : memo_) row.resize(gens_.size());
}

void OrderedAlgebra::set_swap_rule(uint32_t hi, uint32_t lo, Vec value) {
  if (hi <= lo || hi >= gens_.size()) throw std::invalid_argument("swap rule needs hi > lo");
  swap_[hi * gens_.size() + lo] = std::move(value);
  swap_set_[hi * gens_.size() + lo] = 1;
}

uint32_t OrderedAlgebra::mono(const std::vector<uint32_t>& exps) const {
  uint32_t k = 0;
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (exps[i] >= gens_[i].order) throw std::out_of_range("exponent out of range");
    k += strides_[i] * exps[i];
  }
  return k;
}

std::vector<uint32_t> OrderedAlgebra::exponents(uint32_t idx) const {
  std::vector<uint32_t> e(gens_.size());
  for (size_t i = 0; i < gens_.size(); ++i) {
    e[i] = idx / strides_[i];
    idx %= strides_[i];
  }
  return e;
}

Vec OrderedAlgebra::gen_elem(uint32_t g, uint32_t e) const {
  std::vector<uint32_t> exps(gens_.size(), 0);
  Cyc coeff = ctx_->one();
  if (e >= gens_[g].order) {
    if (gens_[g].cyclic) {
      uint32_t wraps = e / gens_[g].order;
      if (gens_[g].wrap) coeff = gens_[g].wrap->pow(wraps);
      e %= gens_[g].order;
    } else {
      return {};
    }
  }
  exps[g] = e;
  return vec_unit(mono(exps), coeff);
}

const Vec& OrderedAlgebra::times_gen(uint32_t m, uint32_t g) {
  auto& slot = memo_[m][g];
  if (slot) return *slot;

  std::vector<uint32_t> exps = exponents(m);
  int blocker = -1;
  for (int t = static_cast<int>(gens_.size()) - 1; t > static_cast<int>(g); --t)
    if (exps[t] > 0) { blocker = t; break; }

  Vec result;
  if (blocker < 0) {
    exps[g] += 1;
    if (exps[g] == gens_[g].order) {
      if (gens_[g].cyclic) {
        exps[g] = 0;
        result = vec_unit(mono(exps), gens_[g].wrap ? *gens_[g].wrap : ctx_->one());
      }  // nilpotent: result stays empty
    } else {
      result = vec_unit(mono(exps), ctx_->one());
    }
  } else {
    // m = m1 * g_t, so m * g = m1 * (g_t g) with the swap rule for (t, g)
    uint32_t t = static_cast<uint32_t>(blocker);
    if (!swap_set_[t * gens_.size() + g])
      throw std::logic_error("missing swap rule for generators " + gens_[t].name + "," +
                             gens_[g].name);
    exps[t] -= 1;
    uint32_t m1 = mono(exps);
    VecAcc acc;
    for (const auto& [mono_r, c] : swap_[t * gens_.size() + g])
      acc.add_scaled(mul_mono(m1, mono_r), c);
    result = acc.take();
  }
  slot = std::move(result);
  return *slot;
}

Vec OrderedAlgebra::mul_mono(uint32_t a, uint32_t b) {
  Vec cur = vec_unit(a, ctx_->one());
  std::vector<uint32_t> be = exponents(b);
  for (uint32_t g = 0; g < gens_.size(); ++g) {
    for (uint32_t rep = 0; rep < be[g]; ++rep) {
      VecAcc acc;
      for (const auto& [m, c] : cur) {
        const Vec& step = times_gen(m, g);
        acc.add_scaled(step, c);
      }
      cur = acc.take();
      if (cur.empty()) return cur;
    }
  }
  return cur;
}

Vec OrderedAlgebra::mul(const Vec& a, const Vec& b) {
  VecAcc acc;
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) acc.add_scaled(mul_mono(i, j), ca * cb);
  return acc.take();
}

Vec OrderedAlgebra::power(const Vec& a, uint32_t e) {
  Vec r = one();
  for (uint32_t i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

std::string OrderedAlgebra::label(uint32_t idx) const {
  std::vector<uint32_t> e = exponents(idx);
  std::string out;
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += gens_[i].name;
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<std::string> OrderedAlgebra::labels() const {
  std::vector<std::string> out(dim_);
  for (uint32_t i = 0; i < dim_; ++i) out[i] = label(i);
  return out;
}

}  // namespace hopfforge
