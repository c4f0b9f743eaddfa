#include "linalg.hpp"

#include <stdexcept>

namespace hopfforge {

std::optional<DenseMat> dense_inverse(const DenseMat& m, const CycloCtx* ctx) {
  if (m.rows != m.cols) return std::nullopt;
  uint32_t n = m.rows;
  DenseMat a = m;
  DenseMat inv(n, n, ctx);
  for (uint32_t i = 0; i < n; ++i) inv.at(i, i) = ctx->one();
  for (uint32_t col = 0; col < n; ++col) {
    uint32_t piv = n;
    for (uint32_t r = col; r < n; ++r)
      if (!a.at(r, col).is_zero()) { piv = r; break; }
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (uint32_t c = 0; c < n; ++c) {
        std::swap(a.at(piv, c), a.at(col, c));
        std::swap(inv.at(piv, c), inv.at(col, c));
      }
    Cyc d = a.at(col, col).inv();
    for (uint32_t c = 0; c < n; ++c) {
      a.at(col, c) = a.at(col, c) * d;
      inv.at(col, c) = inv.at(col, c) * d;
    }
    for (uint32_t r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      Cyc f = a.at(r, col);
      for (uint32_t c = 0; c < n; ++c) {
        a.at(r, c) -= f * a.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

uint32_t dense_rank(DenseMat m, const CycloCtx* ctx) {
  (void)ctx;
  uint32_t rank = 0;
  uint32_t row = 0;
  for (uint32_t col = 0; col < m.cols && row < m.rows; ++col) {
    uint32_t piv = m.rows;
    for (uint32_t r = row; r < m.rows; ++r)
      if (!m.at(r, col).is_zero()) { piv = r; break; }
    if (piv == m.rows) continue;
    if (piv != row)
      for (uint32_t c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(row, c));
    Cyc d = m.at(row, col).inv();
    for (uint32_t c = col; c < m.cols; ++c) m.at(row, c) = m.at(row, c) * d;
    for (uint32_t r = row + 1; r < m.rows; ++r) {
      if (m.at(r, col).is_zero()) continue;
      Cyc f = m.at(r, col);
      for (uint32_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
    }
    ++row;
    ++rank;
  }
  return rank;
}

Vec mat_apply(const DenseMat& m, const Vec& v, const CycloCtx* ctx) {
  (void)ctx;
  VecAcc acc;
  for (const auto& [c, val] : v)
    for (uint32_t r = 0; r < m.rows; ++r) {
      const Cyc& e = m.at(r, c);
      if (!e.is_zero()) acc.add(r, e * val);
    }
  return acc.take();
}

namespace {
Vec echelon_submul(const Vec& a, const Cyc& f, const Vec& b) {  // a - f*b
  VecAcc acc;
  for (const auto& [i, c] : a) acc.add(i, c);
  for (const auto& [i, c] : b) acc.add(i, -(f * c));
  return acc.take();
}
}  // namespace

Vec RowEchelon::reduce(Vec v) const {
  // rows are fully reduced (tails avoid pivot columns), so a single pass in
  // increasing column order yields the unique normal form of the coset
  size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    Cyc f = v[pos].second;
    v = echelon_submul(v, f, it->second);
  }
  return v;
}

bool RowEchelon::insert(Vec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Cyc lead_inv = v.front().second.inv();
  Vec norm = vec_scale(v, lead_inv);
  uint32_t lead = norm.front().first;
  // back-substitute into existing rows so that lookups stay fully reduced
  for (auto& [piv, row] : rows_) {
    Cyc coeff = ctx_->zero();
    for (const auto& [i, c] : row)
      if (i == lead) { coeff = c; break; }
    if (coeff.is_zero()) continue;
    row = echelon_submul(row, coeff, norm);
  }
  rows_.emplace(lead, std::move(norm));
  return true;
}

SpanSolver::SpanSolver(const CycloCtx* ctx, const std::vector<Vec>& basis) : ctx_(ctx) {
  for (uint32_t b = 0; b < basis.size(); ++b) {
    Vec v = basis[b];
    Vec expr = vec_unit(b, ctx->one());
    size_t pos = 0;
    while (pos < v.size()) {
      auto it = rows_.find(v[pos].first);
      if (it == rows_.end()) {
        ++pos;
        continue;
      }
      Cyc f = v[pos].second;
      v = echelon_submul(v, f, it->second.first);
      expr = echelon_submul(expr, f, it->second.second);
    }
    if (v.empty()) continue;
    Cyc lead_inv = v.front().second.inv();
    uint32_t lead = v.front().first;
    Vec vn = vec_scale(v, lead_inv);
    Vec en = vec_scale(expr, lead_inv);
    for (auto& [piv, re] : rows_) {
      Cyc coeff = ctx->zero();
      for (const auto& [i, c] : re.first)
        if (i == lead) { coeff = c; break; }
      if (coeff.is_zero()) continue;
      re.first = echelon_submul(re.first, coeff, vn);
      re.second = echelon_submul(re.second, coeff, en);
    }
    rows_.emplace(lead, std::make_pair(std::move(vn), std::move(en)));
  }
}

std::optional<Vec> SpanSolver::coords(const Vec& v) const {
  Vec residue = v;
  VecAcc combo;
  while (!residue.empty()) {
    auto it = rows_.find(residue.front().first);
    if (it == rows_.end()) return std::nullopt;
    Cyc f = residue.front().second;
    for (const auto& [i, c] : it->second.second) combo.add(i, f * c);
    residue = echelon_submul(residue, f, it->second.first);
  }
  return combo.take();
}

}  // namespace hopfforge
