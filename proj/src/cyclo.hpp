#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_N), N = 4p, together with
// the q-combinatorics ([n], [n]!, Gaussian binomials) used everywhere else.
// Elements are reduced coefficient vectors in the power basis
// 1, zeta, ..., zeta^{phi(N)-1} modulo the minimal polynomial Phi_N.
//
// Scalars carry a small-integer fast path (common-denominator int64 vector)
// and fall back to GMP rationals when values outgrow it.  Both forms are kept
// canonical, so equality is plain coefficient comparison.

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfforge {

using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

class CycloCtx;

class Cyc {
 public:
  static constexpr int kMaxDeg = 8;

  Cyc() : ctx_(nullptr), den_(1) { num_.fill(0); }
  explicit Cyc(const CycloCtx* ctx) : ctx_(ctx), den_(1) { num_.fill(0); }

  const CycloCtx* ctx() const { return ctx_; }
  bool is_zero() const;
  bool is_small() const { return big_.empty(); }

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator-() const;
  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o) { *this = *this * o; return *this; }
  Cyc inv() const;
  Cyc pow(long e) const;  // negative e inverts first

  // acc += a*b without building a named temporary at call sites
  void add_mul(const Cyc& a, const Cyc& b);

  Rat coeff(int i) const;  // coefficient of zeta^i, 0 <= i < degree
  std::vector<Rat> coeffs() const;

  std::complex<double> embed() const;  // zeta -> e^{2 pi i / N}
  uint64_t hash() const;
  std::string serialize() const;  // "n/d,n/d,..."
  std::string pretty() const;     // human-readable combination of zeta^k

  static Cyc from_coeffs(const CycloCtx* ctx, const std::vector<Rat>& c);
  static Cyc deserialize(const CycloCtx* ctx, const std::string& s);

 private:
  friend class CycloCtx;
  const CycloCtx* ctx_;
  std::array<int64_t, kMaxDeg> num_;
  uint64_t den_;
  std::vector<Rat> big_;  // non-empty = big form, length = degree

  void promote();
  void canonicalize();  // gcd-normalize small form / demote big form if it fits
  void require_same_ctx(const Cyc& o) const;
};

class CycloCtx {
 public:
  explicit CycloCtx(unsigned N);

  unsigned conductor() const { return N_; }
  unsigned degree() const { return deg_; }
  // p with N = 4p, or 0 when N is not of that shape
  unsigned p() const { return N_ % 4 == 0 ? N_ / 4 : 0; }
  const std::vector<mpz_class>& minimal_polynomial() const { return phi_; }

  Cyc zero() const;
  Cyc one() const;
  Cyc from_long(long v) const;
  Cyc from_rat(const Rat& r) const;
  Cyc zeta(long e = 1) const;      // zeta^e, e arbitrary integer
  Cyc qpow(long k) const;          // q^k = zeta^{2k}
  Cyc qpow_half(long t) const;     // q^{t/2} = zeta^t
  Cyc q() const { return qpow(1); }
  Cyc q_minus_qinv() const;        // q - q^{-1}

  // q-integers; half-integer arguments pass twice the value
  Cyc qnum(long n) const { return qnum_half(2 * n); }
  Cyc qnum_half(long twice_n) const;
  Cyc qfac(long n) const;
  Cyc qbin(long m, long n) const;

  const std::vector<mpz_class>& reduction_row(unsigned k) const;  // zeta^{deg+k}

 private:
  unsigned N_, deg_;
  std::vector<mpz_class> phi_;                       // monic, low-to-high
  std::vector<std::vector<mpz_class>> red_rows_;     // zeta^{deg}..zeta^{2deg-2}
  std::vector<Cyc> zeta_pow_;                        // zeta^0..zeta^{N-1}
  mutable std::vector<Cyc> qfac_;                    // filled on construction
  mutable std::vector<std::vector<Cyc>> qbin_;
};

// Scalar interning for the big structure tensors: id 0 is reserved for 1.
class CycPool {
 public:
  explicit CycPool(const CycloCtx* ctx);
  uint32_t intern(const Cyc& v);
  const Cyc& at(uint32_t id) const { return values_[id]; }
  size_t size() const { return values_.size(); }

 private:
  const CycloCtx* ctx_;
  std::vector<Cyc> values_;
  std::vector<std::vector<uint32_t>> buckets_;
  size_t mask_;
  void rehash();
};

}  // namespace hopfforge
