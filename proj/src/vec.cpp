#include "vec.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfforge {

Vec vec_normalize(std::unordered_map<uint32_t, Cyc>&& acc) {
  Vec out;
  out.reserve(acc.size());
  for (auto& [i, c] : acc)
    if (!c.is_zero()) out.emplace_back(i, std::move(c));
  std::sort(out.begin(), out.end(),
            [](const Ent& a, const Ent& b) { return a.first < b.first; });
  return out;
}

Vec vec_unit(uint32_t i, const Cyc& c) {
  Vec v;
  if (!c.is_zero()) v.emplace_back(i, c);
  return v;
}

Vec vec_add(const Vec& a, const Vec& b) {
  VecAcc acc;
  for (const auto& [i, c] : a) acc.add(i, c);
  for (const auto& [i, c] : b) acc.add(i, c);
  return acc.take();
}

Vec vec_scale(const Vec& a, const Cyc& c) {
  Vec out;
  out.reserve(a.size());
  for (const auto& [i, x] : a) {
    Cyc v = x * c;
    if (!v.is_zero()) out.emplace_back(i, v);
  }
  return out;
}

bool vec_eq(const Vec& a, const Vec& b) { return a == b; }

void BilinMap::apply_into(VecAcc& out, uint32_t i, uint32_t j, const Cyc& scale) const {
  for (size_t e = row_begin(i, j); e < row_end(i, j); ++e)
    out.add(idx[e], pool->at(cid[e]) * scale);
}

Vec BilinMap::apply(const Vec& a, const Vec& b) const {
  VecAcc out;
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) apply_into(out, i, j, ca * cb);
  return out.take();
}

Vec BilinMap::row(uint32_t i, uint32_t j) const {
  Vec v;
  for (size_t e = row_begin(i, j); e < row_end(i, j); ++e)
    v.emplace_back(idx[e], pool->at(cid[e]));
  return v;
}

BilinBuilder::BilinBuilder(uint32_t d1, uint32_t d2, uint32_t dout,
                           std::shared_ptr<CycPool> pool) {
  m_.d1 = d1;
  m_.d2 = d2;
  m_.dout = dout;
  m_.pool = std::move(pool);
  m_.off.assign(uint64_t(d1) * d2 + 1, 0);
}

void BilinBuilder::append_row(uint32_t i, uint32_t j, const Vec& v) {
  uint64_t slot = uint64_t(i) * m_.d2 + j;
  if (slot < next_) throw std::logic_error("BilinBuilder rows out of order");
  while (next_ <= slot) m_.off[next_++] = m_.idx.size();
  for (const auto& [o, c] : v) {
    m_.idx.push_back(o);
    m_.cid.push_back(m_.pool->intern(c));
  }
}

BilinMap BilinBuilder::take() {
  while (next_ < m_.off.size()) m_.off[next_++] = m_.idx.size();
  return std::move(m_);
}

PairRowsBuilder::PairRowsBuilder(uint32_t din, uint32_t d1, uint32_t d2,
                                 std::shared_ptr<CycPool> pool) {
  r_.din = din;
  r_.d1 = d1;
  r_.d2 = d2;
  r_.pool = std::move(pool);
  r_.off.assign(uint64_t(din) + 1, 0);
}

void PairRowsBuilder::append_row(
    uint32_t i, const std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>>& terms) {
  if (i < next_) throw std::logic_error("PairRowsBuilder rows out of order");
  while (next_ <= i) r_.off[next_++] = r_.j.size();
  for (const auto& [jk, c] : terms) {
    if (c.is_zero()) continue;
    r_.j.push_back(jk.first);
    r_.k.push_back(jk.second);
    r_.cid.push_back(r_.pool->intern(c));
  }
}

PairRows PairRowsBuilder::take() {
  while (next_ < r_.off.size()) r_.off[next_++] = r_.j.size();
  return std::move(r_);
}

void LinMap::apply_into(VecAcc& out, uint32_t i, const Cyc& scale) const {
  for (size_t e = begin(i); e < end(i); ++e) out.add(idx[e], pool->at(cid[e]) * scale);
}

Vec LinMap::apply(const Vec& v) const {
  VecAcc out;
  for (const auto& [i, c] : v) apply_into(out, i, c);
  return out.take();
}

Vec LinMap::row(uint32_t i) const {
  Vec v;
  for (size_t e = begin(i); e < end(i); ++e) v.emplace_back(idx[e], pool->at(cid[e]));
  return v;
}

LinBuilder::LinBuilder(uint32_t din, uint32_t dout, std::shared_ptr<CycPool> pool) {
  m_.din = din;
  m_.dout = dout;
  m_.pool = std::move(pool);
  m_.off.assign(uint64_t(din) + 1, 0);
}

void LinBuilder::append_row(uint32_t i, const Vec& v) {
  if (i < next_) throw std::logic_error("LinBuilder rows out of order");
  while (next_ <= i) m_.off[next_++] = m_.idx.size();
  for (const auto& [o, c] : v) {
    m_.idx.push_back(o);
    m_.cid.push_back(m_.pool->intern(c));
  }
}

LinMap LinBuilder::take() {
  while (next_ < m_.off.size()) m_.off[next_++] = m_.idx.size();
  return std::move(m_);
}

}  // namespace hopfforge
