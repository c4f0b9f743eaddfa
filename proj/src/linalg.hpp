#pragma once

// Exact dense and sparse-row linear algebra over Q(zeta_N): inverses for
// antipodes and basis changes, row echelon forms for ideals, subalgebra
// membership and balanced-tensor quotients.

#include <map>
#include <optional>
#include <vector>

#include "vec.hpp"

namespace hopfforge {

struct DenseMat {
  uint32_t rows = 0, cols = 0;
  std::vector<Cyc> a;

  DenseMat() = default;
  DenseMat(uint32_t r, uint32_t c, const CycloCtx* ctx)
      : rows(r), cols(c), a(size_t(r) * c, ctx->zero()) {}
  Cyc& at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
  const Cyc& at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }
};

std::optional<DenseMat> dense_inverse(const DenseMat& m, const CycloCtx* ctx);
uint32_t dense_rank(DenseMat m, const CycloCtx* ctx);
Vec mat_apply(const DenseMat& m, const Vec& v, const CycloCtx* ctx);

// Incremental exact row echelon over sparse rows; rows are normalized to a
// leading coefficient of 1 and fully reduced against existing pivots.
class RowEchelon {
 public:
  explicit RowEchelon(const CycloCtx* ctx) : ctx_(ctx) {}
  // reduce v against the current pivots (returns the残 residue)
  Vec reduce(Vec v) const;
  // insert a row; returns true if the rank grew
  bool insert(Vec v);
  uint32_t rank() const { return static_cast<uint32_t>(rows_.size()); }
  const std::map<uint32_t, Vec>& pivot_rows() const { return rows_; }
  bool contains(const Vec& v) const { return reduce(v).empty(); }

 private:
  const CycloCtx* ctx_;
  std::map<uint32_t, Vec> rows_;  // pivot column -> normalized row
};

// Solve the coordinates of v in the span of the given basis vectors
// (returns nullopt when v is outside the span).  basis need not be echelon.
class SpanSolver {
 public:
  SpanSolver(const CycloCtx* ctx, const std::vector<Vec>& basis);
  std::optional<Vec> coords(const Vec& v) const;  // coefficients over basis indices
  uint32_t rank() const { return static_cast<uint32_t>(rows_.size()); }

 private:
  const CycloCtx* ctx_;
  // pivot column -> (normalized row, its expression over original basis indices)
  std::map<uint32_t, std::pair<Vec, Vec>> rows_;
};

}  // namespace hopfforge
