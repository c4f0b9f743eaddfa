#include "tensor.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hopfforge {

void VecSpace::validate() const {
  if (labels.size() != dim) throw std::invalid_argument("label count != dim");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("duplicate basis labels");
}

uint64_t SparseTensor::total_dim() const {
  uint64_t d = 1;
  for (const Slot& s : slots) d *= s.dim;
  return d;
}

std::vector<uint64_t> SparseTensor::strides() const {
  std::vector<uint64_t> st(slots.size(), 1);
  for (size_t i = slots.size(); i-- > 1;) st[i - 1] = st[i] * slots[i].dim;
  return st;
}

uint64_t SparseTensor::pack(const std::vector<uint32_t>& idx) const {
  auto st = strides();
  uint64_t k = 0;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (idx[i] >= slots[i].dim) throw std::out_of_range("tensor index out of range");
    k += st[i] * idx[i];
  }
  return k;
}

std::vector<uint32_t> SparseTensor::unpack(uint64_t key) const {
  auto st = strides();
  std::vector<uint32_t> idx(slots.size());
  for (size_t i = 0; i < slots.size(); ++i) {
    idx[i] = static_cast<uint32_t>(key / st[i]);
    key %= st[i];
  }
  return idx;
}

bool SparseTensor::operator==(const SparseTensor& o) const {
  return slots == o.slots && keys == o.keys && vals == o.vals;
}

Cyc SparseTensor::at(const std::vector<uint32_t>& idx) const {
  uint64_t k = pack(idx);
  auto it = std::lower_bound(keys.begin(), keys.end(), k);
  if (it == keys.end() || *it != k) return ctx->zero();
  return vals[static_cast<size_t>(it - keys.begin())];
}

TensorBuilder::TensorBuilder(const CycloCtx* ctx, std::vector<Slot> slots)
    : ctx_(ctx), slots_(std::move(slots)) {
  strides_.assign(slots_.size(), 1);
  for (size_t i = slots_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * slots_[i].dim;
}

void TensorBuilder::add_key(uint64_t key, const Cyc& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = acc_.try_emplace(key, v);
  if (!fresh) it->second += v;
}

void TensorBuilder::add(const std::vector<uint32_t>& idx, const Cyc& v) {
  uint64_t k = 0;
  for (size_t i = 0; i < slots_.size(); ++i) {
    if (idx[i] >= slots_[i].dim) throw std::out_of_range("tensor index out of range");
    k += strides_[i] * idx[i];
  }
  add_key(k, v);
}

SparseTensor TensorBuilder::build() {
  SparseTensor t;
  t.ctx = ctx_;
  t.slots = slots_;
  std::vector<std::pair<uint64_t, const Cyc*>> tmp;
  tmp.reserve(acc_.size());
  for (const auto& [k, v] : acc_)
    if (!v.is_zero()) tmp.emplace_back(k, &v);
  std::sort(tmp.begin(), tmp.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  t.keys.reserve(tmp.size());
  t.vals.reserve(tmp.size());
  for (auto& [k, v] : tmp) {
    t.keys.push_back(k);
    t.vals.push_back(*v);
  }
  acc_.clear();
  return t;
}

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b) {
  if (a.ctx != b.ctx) throw std::invalid_argument("tensor_product: context mismatch");
  std::vector<Slot> slots = a.slots;
  slots.insert(slots.end(), b.slots.begin(), b.slots.end());
  TensorBuilder out(a.ctx, slots);
  uint64_t bdim = b.total_dim();
  for (size_t i = 0; i < a.nnz(); ++i)
    for (size_t j = 0; j < b.nnz(); ++j)
      out.add_key(a.keys[i] * bdim + b.keys[j], a.vals[i] * b.vals[j]);
  return out.build();
}

SparseTensor permute_slots(const SparseTensor& t, const std::vector<uint32_t>& perm) {
  // perm[i] = source slot placed at position i
  if (perm.size() != t.slots.size()) throw std::invalid_argument("bad permutation size");
  std::vector<Slot> slots(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) slots[i] = t.slots[perm[i]];
  TensorBuilder out(t.ctx, slots);
  std::vector<uint32_t> src, dst(perm.size());
  for (size_t e = 0; e < t.nnz(); ++e) {
    src = t.unpack(t.keys[e]);
    for (size_t i = 0; i < perm.size(); ++i) dst[i] = src[perm[i]];
    out.add(dst, t.vals[e]);
  }
  return out.build();
}

SparseTensor flip_slots(const SparseTensor& t, uint32_t i, uint32_t j) {
  std::vector<uint32_t> perm(t.slots.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[i], perm[j]);
  return permute_slots(t, perm);
}

SparseTensor scale(const SparseTensor& t, const Cyc& c) {
  TensorBuilder out(t.ctx, t.slots);
  for (size_t e = 0; e < t.nnz(); ++e) out.add_key(t.keys[e], t.vals[e] * c);
  return out.build();
}

SparseTensor add(const SparseTensor& a, const SparseTensor& b) {
  if (a.slots != b.slots) throw std::invalid_argument("add: slot mismatch");
  TensorBuilder out(a.ctx, a.slots);
  for (size_t e = 0; e < a.nnz(); ++e) out.add_key(a.keys[e], a.vals[e]);
  for (size_t e = 0; e < b.nnz(); ++e) out.add_key(b.keys[e], b.vals[e]);
  return out.build();
}

SparseTensor sub(const SparseTensor& a, const SparseTensor& b) {
  return add(a, scale(b, b.ctx->from_long(-1)));
}

SparseTensor identity_tensor(const CycloCtx* ctx, uint32_t dim) {
  TensorBuilder out(ctx, {Slot{dim, Variance::Contra}, Slot{dim, Variance::Co}});
  for (uint32_t i = 0; i < dim; ++i) out.add({i, i}, ctx->one());
  return out.build();
}

SparseTensor contract(const SparseTensor& a, const SparseTensor& b,
                      const std::vector<std::pair<uint32_t, uint32_t>>& pairs) {
  if (a.ctx != b.ctx) throw std::invalid_argument("contract: context mismatch");
  std::vector<bool> abound(a.slots.size(), false), bbound(b.slots.size(), false);
  for (auto [ia, ib] : pairs) {
    if (ia >= a.slots.size() || ib >= b.slots.size())
      throw std::invalid_argument("contract: slot index out of range");
    if (abound[ia] || bbound[ib]) throw std::invalid_argument("contract: slot paired twice");
    if (a.slots[ia].dim != b.slots[ib].dim)
      throw std::invalid_argument("contract: paired slots have different dims");
    if (a.slots[ia].var == b.slots[ib].var)
      throw std::invalid_argument("contract: paired slots must have opposite variance");
    abound[ia] = true;
    bbound[ib] = true;
  }
  std::vector<uint32_t> afree, bfree;
  for (uint32_t i = 0; i < a.slots.size(); ++i)
    if (!abound[i]) afree.push_back(i);
  for (uint32_t i = 0; i < b.slots.size(); ++i)
    if (!bbound[i]) bfree.push_back(i);

  std::vector<Slot> oslots;
  for (uint32_t i : afree) oslots.push_back(a.slots[i]);
  for (uint32_t i : bfree) oslots.push_back(b.slots[i]);
  TensorBuilder out(a.ctx, oslots);

  // join on contracted multi-indices; order of pair list fixes the join key
  double key_span = 1.0;
  for (auto [ia, ib] : pairs) key_span *= a.slots[ia].dim + 1.0;
  if (key_span > 9e18) throw std::invalid_argument("contract: too many paired slots");
  auto subkey = [&a, &pairs](const std::vector<uint32_t>& idx,
                             const std::vector<uint32_t>& which) {
    uint64_t k = 0;
    for (size_t t = 0; t < which.size(); ++t)
      k = k * (a.slots[pairs[t].first].dim + 1) + idx[which[t]] + 1;
    return k;
  };
  std::vector<uint32_t> apair, bpair;
  for (auto [ia, ib] : pairs) {
    apair.push_back(ia);
    bpair.push_back(ib);
  }

  std::unordered_map<uint64_t, std::vector<std::pair<uint64_t, const Cyc*>>> lookup;
  uint64_t bfree_dim = 1;
  for (uint32_t i : bfree) bfree_dim *= b.slots[i].dim;
  for (size_t e = 0; e < a.nnz(); ++e) {
    auto idx = a.unpack(a.keys[e]);
    uint64_t fk = 0;
    for (uint32_t s : afree) fk = fk * a.slots[s].dim + idx[s];
    lookup[subkey(idx, apair)].emplace_back(fk, &a.vals[e]);
  }
  for (size_t e = 0; e < b.nnz(); ++e) {
    auto idx = b.unpack(b.keys[e]);
    auto it = lookup.find(subkey(idx, bpair));
    if (it == lookup.end()) continue;
    uint64_t fk = 0;
    for (uint32_t s : bfree) fk = fk * b.slots[s].dim + idx[s];
    for (auto& [afk, av] : it->second) out.add_key(afk * bfree_dim + fk, *av * b.vals[e]);
  }
  return out.build();
}

SparseTensor iterate_coproduct(const SparseTensor& comult, const SparseTensor& x,
                               unsigned k, bool left_nested) {
  if (k < 1) throw std::invalid_argument("iterate_coproduct: k >= 1 required");
  if (x.rank() != 1) throw std::invalid_argument("iterate_coproduct: x must be rank 1");
  SparseTensor cur = x;
  for (unsigned step = 1; step < k; ++step) {
    // expand one leg: leftmost for left-nested, rightmost otherwise
    uint32_t leg = left_nested ? 0 : static_cast<uint32_t>(cur.rank()) - 1;
    SparseTensor expanded = contract(comult, cur, {{0, leg}});
    // contract() puts the two new legs first; rotate them into place
    std::vector<uint32_t> perm;
    uint32_t rest = static_cast<uint32_t>(cur.rank()) - 1;
    if (left_nested) {
      perm = {0, 1};
      for (uint32_t i = 0; i < rest; ++i) perm.push_back(2 + i);
    } else {
      for (uint32_t i = 0; i < rest; ++i) perm.push_back(2 + i);
      perm.push_back(0);
      perm.push_back(1);
    }
    cur = permute_slots(expanded, perm);
  }
  return cur;
}

std::string tensor_to_json(const SparseTensor& t) {
  nlohmann::ordered_json j;
  j["spaces"] = nlohmann::ordered_json::array();
  for (const Slot& s : t.slots)
    j["spaces"].push_back({{"dim", s.dim},
                           {"variance", s.var == Variance::Co ? "co" : "contra"}});
  j["entries"] = nlohmann::ordered_json::array();
  for (size_t e = 0; e < t.nnz(); ++e) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (uint32_t i : t.unpack(t.keys[e])) row.push_back(i);
    row.push_back(t.vals[e].serialize());
    j["entries"].push_back(row);
  }
  return j.dump();
}

SparseTensor tensor_from_json(const CycloCtx* ctx, const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  std::vector<Slot> slots;
  for (const auto& s : j.at("spaces"))
    slots.push_back(Slot{s.at("dim").get<uint32_t>(),
                         s.at("variance").get<std::string>() == "co" ? Variance::Co
                                                                     : Variance::Contra});
  TensorBuilder b(ctx, slots);
  for (const auto& row : j.at("entries")) {
    std::vector<uint32_t> idx;
    for (size_t i = 0; i + 1 < row.size(); ++i) idx.push_back(row[i].get<uint32_t>());
    b.add(idx, Cyc::deserialize(ctx, row.back().get<std::string>()));
  }
  return b.build();
}

}  // namespace hopfforge
