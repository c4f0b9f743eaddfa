#pragma once

// Sparse multi-index tensors over Q(zeta_N).  Every structure map of every
// algebra in this project (mult, comult, action, coaction, antipode, pairing)
// is one of these; generic constructions are contractions and slot shuffles.
//
// Slot conventions used throughout:
//   element of a space        rank 1, contravariant
//   functional                rank 1, covariant
//   mult                      [out contra, in1 co, in2 co]
//   comult                    [in co, out1 contra, out2 contra]
//   antipode / linear map     [out contra, in co]
//   action H (x) A -> A       [H co, A co, out contra]
//   coaction A -> H (x) A     [in co, H contra, A contra]
//   pairing B* (x) B -> k     [co, co]
// Entries are kept canonical: sorted by packed key, no zero coefficients.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyclo.hpp"

namespace hopfforge {

enum class Variance : uint8_t { Co, Contra };

struct Slot {
  uint32_t dim;
  Variance var;
  bool operator==(const Slot&) const = default;
};

struct VecSpace {
  uint32_t dim = 0;
  std::vector<std::string> labels;  // size dim, unique
  void validate() const;
};

struct SparseTensor {
  const CycloCtx* ctx = nullptr;
  std::vector<Slot> slots;
  std::vector<uint64_t> keys;
  std::vector<Cyc> vals;

  size_t rank() const { return slots.size(); }
  size_t nnz() const { return keys.size(); }
  uint64_t total_dim() const;
  std::vector<uint64_t> strides() const;  // slot-0-major
  uint64_t pack(const std::vector<uint32_t>& idx) const;
  std::vector<uint32_t> unpack(uint64_t key) const;

  bool operator==(const SparseTensor& o) const;
  Cyc at(const std::vector<uint32_t>& idx) const;
};

class TensorBuilder {
 public:
  TensorBuilder(const CycloCtx* ctx, std::vector<Slot> slots);
  void add_key(uint64_t key, const Cyc& v);
  void add(const std::vector<uint32_t>& idx, const Cyc& v);
  SparseTensor build();  // canonical: sorted, zero-free
  const std::vector<Slot>& slots() const { return slots_; }

 private:
  const CycloCtx* ctx_;
  std::vector<Slot> slots_;
  std::vector<uint64_t> strides_;
  std::unordered_map<uint64_t, Cyc> acc_;
};

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b);
SparseTensor permute_slots(const SparseTensor& t, const std::vector<uint32_t>& perm);
SparseTensor flip_slots(const SparseTensor& t, uint32_t i, uint32_t j);
SparseTensor scale(const SparseTensor& t, const Cyc& c);
SparseTensor add(const SparseTensor& a, const SparseTensor& b);
SparseTensor sub(const SparseTensor& a, const SparseTensor& b);
SparseTensor identity_tensor(const CycloCtx* ctx, uint32_t dim);  // [out, in]

// Multilinear contraction of the listed slot pairs (slot in a, slot in b).
// Paired slots must have equal dimension and opposite variance.  Free slots
// of a (in order) precede free slots of b in the result.
SparseTensor contract(const SparseTensor& a, const SparseTensor& b,
                      const std::vector<std::pair<uint32_t, uint32_t>>& pairs);

// k-fold Sweedler power of x under Delta; left_nested chooses which leg the
// next Delta lands on (coassociativity makes the results agree).
SparseTensor iterate_coproduct(const SparseTensor& comult, const SparseTensor& x,
                               unsigned k, bool left_nested = true);

std::string tensor_to_json(const SparseTensor& t);
SparseTensor tensor_from_json(const CycloCtx* ctx, const std::string& json);

}  // namespace hopfforge
