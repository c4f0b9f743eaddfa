#pragma once

// Compiled working representations behind the tensor views: sparse basis
// vectors, CSR bilinear maps (mult / action rows), Sweedler-style pair rows
// (comult / coaction), and linear maps.  Scalars in the CSR stores are
// interned in a shared CycPool; accumulators hold real scalars.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "cyclo.hpp"

namespace hopfforge {

using Ent = std::pair<uint32_t, Cyc>;
using Vec = std::vector<Ent>;  // sorted by index, canonical (no zeros)

Vec vec_normalize(std::unordered_map<uint32_t, Cyc>&& acc);
Vec vec_unit(uint32_t i, const Cyc& c);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Cyc& c);
bool vec_eq(const Vec& a, const Vec& b);

class VecAcc {
 public:
  void add(uint32_t i, const Cyc& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc_.try_emplace(i, c);
    if (!fresh) it->second += c;
  }
  void add_scaled(const Vec& v, const Cyc& c) {
    for (const auto& [i, x] : v) add(i, x * c);
  }
  Vec take() { return vec_normalize(std::move(acc_)); }
  bool empty() const { return acc_.empty(); }

 private:
  std::unordered_map<uint32_t, Cyc> acc_;
};

// CSR over (i, j) pairs: bilinear maps V1 (x) V2 -> Vout.
struct BilinMap {
  uint32_t d1 = 0, d2 = 0, dout = 0;
  std::vector<uint64_t> off;  // size d1*d2 + 1
  std::vector<uint32_t> idx;
  std::vector<uint32_t> cid;
  std::shared_ptr<CycPool> pool;

  struct Term {
    uint32_t out;
    const Cyc* c;
  };
  size_t row_begin(uint32_t i, uint32_t j) const { return off[uint64_t(i) * d2 + j]; }
  size_t row_end(uint32_t i, uint32_t j) const { return off[uint64_t(i) * d2 + j + 1]; }
  void apply_into(VecAcc& out, uint32_t i, uint32_t j, const Cyc& scale) const;
  Vec apply(const Vec& a, const Vec& b) const;
  Vec row(uint32_t i, uint32_t j) const;
  size_t nnz() const { return idx.size(); }
};

class BilinBuilder {
 public:
  BilinBuilder(uint32_t d1, uint32_t d2, uint32_t dout, std::shared_ptr<CycPool> pool);
  // rows must be appended in increasing (i*d2 + j) order
  void append_row(uint32_t i, uint32_t j, const Vec& v);
  BilinMap take();

 private:
  BilinMap m_;
  uint64_t next_ = 0;
};

// Per-basis Sweedler rows: i -> sum of c * (e_j (x) e_k).
struct PairRows {
  uint32_t din = 0, d1 = 0, d2 = 0;
  std::vector<uint64_t> off;  // size din + 1
  std::vector<uint32_t> j, k;
  std::vector<uint32_t> cid;
  std::shared_ptr<CycPool> pool;

  size_t begin(uint32_t i) const { return off[i]; }
  size_t end(uint32_t i) const { return off[i + 1]; }
};

class PairRowsBuilder {
 public:
  PairRowsBuilder(uint32_t din, uint32_t d1, uint32_t d2, std::shared_ptr<CycPool> pool);
  void append_row(uint32_t i, const std::vector<std::pair<std::pair<uint32_t, uint32_t>, Cyc>>& terms);
  PairRows take();

 private:
  PairRows r_;
  uint32_t next_ = 0;
};

// Linear maps as per-basis rows (antipode, projections, ...).
struct LinMap {
  uint32_t din = 0, dout = 0;
  std::vector<uint64_t> off;
  std::vector<uint32_t> idx;
  std::vector<uint32_t> cid;
  std::shared_ptr<CycPool> pool;

  size_t begin(uint32_t i) const { return off[i]; }
  size_t end(uint32_t i) const { return off[i + 1]; }
  void apply_into(VecAcc& out, uint32_t i, const Cyc& scale) const;
  Vec apply(const Vec& v) const;
  Vec row(uint32_t i) const;
};

class LinBuilder {
 public:
  LinBuilder(uint32_t din, uint32_t dout, std::shared_ptr<CycPool> pool);
  void append_row(uint32_t i, const Vec& v);
  LinMap take();

 private:
  LinMap m_;
  uint32_t next_ = 0;
};

// Small flat accumulator for hot sweeps: linear probing into a reused buffer
// beats hashing when rows have a handful of terms.
class FlatAcc {
 public:
  void clear() { buf_.clear(); }
  void add(uint32_t i, const Cyc& c) {
    for (auto& [j, v] : buf_)
      if (j == i) {
        v += c;
        return;
      }
    buf_.emplace_back(i, c);
  }
  void add_scaled(const Vec& v, const Cyc& c) {
    for (const auto& [i, x] : v) add(i, x * c);
  }
  // canonical sorted zero-free view (sorts in place)
  const Vec& finish() {
    std::sort(buf_.begin(), buf_.end(),
              [](const Ent& a, const Ent& b) { return a.first < b.first; });
    out_.clear();
    for (auto& e : buf_)
      if (!e.second.is_zero()) out_.push_back(std::move(e));
    return out_;
  }

 private:
  Vec buf_, out_;
};

// Deterministic RNG for sampled sweeps (seed is part of every report).
class Rng {
 public:
  explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    uint64_t x = (s_ += 0x9e3779b97f4a7c15ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

 private:
  uint64_t s_;
};

}  // namespace hopfforge
