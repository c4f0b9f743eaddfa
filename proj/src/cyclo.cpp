#include "cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace hopfforge {

namespace {

using I128 = __int128;

constexpr int64_t kSmallNumBound = int64_t(1) << 56;
constexpr uint64_t kSmallDenBound = uint64_t(1) << 31;

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t u64_gcd(uint64_t a, uint64_t b) {
  while (b) { uint64_t t = a % b; a = b; b = t; }
  return a;
}

// ---- integer polynomial helpers (low-to-high coefficient order) ----

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// exact division, both monic-divisor case only
ZPoly zdiv_exact(ZPoly num, const ZPoly& den) {
  ZPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, mpz_class(0));
  while (num.size() >= den.size() && !num.empty()) {
    size_t shift = num.size() - den.size();
    mpz_class c = num.back() / den.back();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    ztrim(num);
  }
  if (!num.empty()) throw std::runtime_error("zdiv_exact: nonzero remainder");
  return q;
}

ZPoly cyclotomic_poly(unsigned n, std::map<unsigned, ZPoly>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  ZPoly num(n + 1, mpz_class(0));  // x^n - 1
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) num = zdiv_exact(std::move(num), cyclotomic_poly(d, memo));
  memo[n] = num;
  return num;
}

// ---- rational polynomial helpers for inversion ----

using QPoly = std::vector<Rat>;

void qtrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qpoly_rem_and_quot(QPoly num, const QPoly& den, QPoly* quot) {
  quot->assign(num.size() >= den.size() ? num.size() - den.size() + 1 : 1, Rat(0));
  while (num.size() >= den.size() && !num.empty()) {
    size_t shift = num.size() - den.size();
    Rat c = num.back() / den.back();
    (*quot)[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    qtrim(num);
  }
  return num;
}

}  // namespace

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("malformed rational: " + s);
  if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
    throw std::invalid_argument("rational with zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << r.get_num() << '/' << r.get_den();
  return os.str();
}

// ---------------------------------------------------------------- Cyc

void Cyc::require_same_ctx(const Cyc& o) const {
  if (ctx_ != o.ctx_ || ctx_ == nullptr)
    throw std::invalid_argument("cyclotomic context mismatch");
}

bool Cyc::is_zero() const {
  if (!big_.empty()) {
    for (const Rat& r : big_)
      if (r != 0) return false;
    return true;
  }
  for (int64_t v : num_)
    if (v != 0) return false;
  return true;
}

void Cyc::promote() {
  if (!big_.empty()) return;
  unsigned d = ctx_->degree();
  big_.assign(d, Rat(0));
  for (unsigned i = 0; i < d; ++i) {
    Rat r(static_cast<long>(num_[i]), 1);
    r /= Rat(static_cast<unsigned long>(den_), 1);
    big_[i] = r;
  }
  num_.fill(0);
  den_ = 1;
}

void Cyc::canonicalize() {
  if (!big_.empty()) {
    // demote when everything fits the small form
    mpz_class l(1);
    for (const Rat& r : big_) {
      mpz_class d = r.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
      l = l / g * d;
      if (!l.fits_ulong_p() || l.get_ui() >= kSmallDenBound) return;
    }
    std::array<int64_t, kMaxDeg> nn{};
    unsigned d = ctx_->degree();
    for (unsigned i = 0; i < d; ++i) {
      mpz_class n = big_[i].get_num() * (l / big_[i].get_den());
      if (!n.fits_slong_p()) return;
      long v = n.get_si();
      if (v >= kSmallNumBound || v <= -kSmallNumBound) return;
      nn[i] = v;
    }
    num_ = nn;
    den_ = l.get_ui();
    big_.clear();
    return;
  }
  uint64_t g = den_;
  for (int64_t v : num_) g = u64_gcd(g, v < 0 ? uint64_t(-v) : uint64_t(v));
  if (g > 1) {
    for (auto& v : num_) v /= static_cast<int64_t>(g);
    den_ /= g;
  }
  if (den_ == 0) throw std::logic_error("zero denominator");
  bool allzero = true;
  for (int64_t v : num_) allzero = allzero && v == 0;
  if (allzero) den_ = 1;
}

bool Cyc::operator==(const Cyc& o) const {
  require_same_ctx(o);
  if (big_.empty() != o.big_.empty()) {
    // canonical values always live in the same form; compare via big anyway
    Cyc a = *this, b = o;
    a.promote();
    b.promote();
    return a.big_ == b.big_;
  }
  if (big_.empty()) return num_ == o.num_ && den_ == o.den_;
  return big_ == o.big_;
}

Cyc Cyc::operator+(const Cyc& o) const {
  Cyc r = *this;
  r += o;
  return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
  Cyc r = *this;
  r -= o;
  return r;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  require_same_ctx(o);
  if (big_.empty() && o.big_.empty()) {
    uint64_t g = u64_gcd(den_, o.den_);
    uint64_t m1 = o.den_ / g, m2 = den_ / g;
    if (den_ < kSmallDenBound && m1 < kSmallDenBound &&
        den_ * m1 < (uint64_t(1) << 62) / 2) {
      bool ok = true;
      std::array<int64_t, kMaxDeg> nn{};
      for (int i = 0; i < kMaxDeg; ++i) {
        I128 v = I128(num_[i]) * I128(m1) + I128(o.num_[i]) * I128(m2);
        if (v > I128(INT64_MAX) || v < I128(INT64_MIN)) { ok = false; break; }
        nn[i] = static_cast<int64_t>(v);
      }
      if (ok) {
        num_ = nn;
        den_ *= m1;
        canonicalize();
        return *this;
      }
    }
  }
  Cyc b = o;
  promote();
  b.promote();
  for (size_t i = 0; i < big_.size(); ++i) big_[i] += b.big_[i];
  canonicalize();
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc Cyc::operator-() const {
  Cyc r = *this;
  if (r.big_.empty()) {
    for (auto& v : r.num_) v = -v;
  } else {
    for (auto& v : r.big_) v = -v;
  }
  return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
  require_same_ctx(o);
  unsigned d = ctx_->degree();
  if (big_.empty() && o.big_.empty()) {
    bool small_in = true;
    for (unsigned i = 0; i < d; ++i)
      small_in = small_in && std::abs(num_[i]) < kSmallNumBound &&
                 std::abs(o.num_[i]) < kSmallNumBound;
    if (small_in && den_ < kSmallDenBound && o.den_ < kSmallDenBound) {
      std::array<I128, 2 * kMaxDeg> conv{};
      for (unsigned i = 0; i < d; ++i) {
        if (num_[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j)
          if (o.num_[j] != 0) conv[i + j] += I128(num_[i]) * I128(o.num_[j]);
      }
      for (unsigned k = 2 * d - 2; k + 1 > d && k + 1 >= 1; --k) {
        if (conv[k] == 0) continue;
        if (k < d) break;
        const auto& row = ctx_->reduction_row(k - d);
        for (unsigned i = 0; i < d; ++i)
          if (row[i] != 0) conv[i] += conv[k] * I128(row[i].get_si());
        conv[k] = 0;
      }
      Cyc r(ctx_);
      bool ok = true;
      for (unsigned i = 0; i < d; ++i) {
        if (conv[i] > I128(INT64_MAX) || conv[i] < I128(INT64_MIN)) { ok = false; break; }
        r.num_[i] = static_cast<int64_t>(conv[i]);
      }
      if (ok) {
        r.den_ = den_ * o.den_;
        r.canonicalize();
        return r;
      }
    }
  }
  Cyc a = *this, b = o;
  a.promote();
  b.promote();
  std::vector<Rat> conv(2 * d - 1, Rat(0));
  for (unsigned i = 0; i < d; ++i) {
    if (a.big_[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j)
      if (b.big_[j] != 0) conv[i + j] += a.big_[i] * b.big_[j];
  }
  for (unsigned k = 2 * d - 2; k >= d && k + 1 >= 1; --k) {
    if (conv[k] == 0) continue;
    const auto& row = ctx_->reduction_row(k - d);
    for (unsigned i = 0; i < d; ++i)
      if (row[i] != 0) conv[i] += conv[k] * Rat(row[i]);
    conv[k] = 0;
    if (k == d) break;
  }
  Cyc r(ctx_);
  r.big_.assign(conv.begin(), conv.begin() + d);
  r.canonicalize();
  return r;
}

void Cyc::add_mul(const Cyc& a, const Cyc& b) { *this += a * b; }

Cyc Cyc::inv() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta_N)");
  unsigned d = ctx_->degree();
  QPoly r0(ctx_->minimal_polynomial().size());
  for (size_t i = 0; i < r0.size(); ++i) r0[i] = Rat(ctx_->minimal_polynomial()[i]);
  Cyc self = *this;
  self.promote();
  QPoly r1(self.big_.begin(), self.big_.begin() + d);
  qtrim(r1);
  QPoly t0{Rat(0)}, t1{Rat(1)};
  while (r1.size() > 1) {
    QPoly q;
    QPoly r2 = qpoly_rem_and_quot(r0, r1, &q);
    // t2 = t0 - q*t1
    QPoly t2 = t0;
    t2.resize(std::max(t2.size(), q.size() + t1.size()), Rat(0));
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
    qtrim(t2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r1.empty()) throw std::domain_error("element not invertible (not coprime to Phi_N)");
  Rat c = r1[0];
  Cyc out(ctx_);
  out.big_.assign(d, Rat(0));
  for (size_t i = 0; i < t1.size() && i < d; ++i) out.big_[i] = t1[i] / c;
  // t1 may exceed degree d-1; reduce through multiplication machinery
  if (t1.size() > d) {
    out.big_.assign(d, Rat(0));
    Cyc acc = ctx_->zero();
    for (size_t i = 0; i < t1.size(); ++i) {
      Cyc term = ctx_->from_rat(t1[i] / c) * ctx_->zeta(static_cast<long>(i));
      acc += term;
    }
    return acc;
  }
  out.canonicalize();
  return out;
}

Cyc Cyc::pow(long e) const {
  Cyc base = *this;
  if (e < 0) {
    base = base.inv();
    e = -e;
  }
  Cyc r = ctx_->one();
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Rat Cyc::coeff(int i) const {
  if (!big_.empty()) return big_[i];
  Rat r(static_cast<long>(num_[i]), 1);
  r /= Rat(static_cast<unsigned long>(den_), 1);
  return r;
}

std::vector<Rat> Cyc::coeffs() const {
  std::vector<Rat> out(ctx_->degree());
  for (unsigned i = 0; i < ctx_->degree(); ++i) out[i] = coeff(i);
  return out;
}

std::complex<double> Cyc::embed() const {
  const double theta = 2.0 * M_PI / ctx_->conductor();
  std::complex<double> z(std::cos(theta), std::sin(theta));
  std::complex<double> acc(0, 0), zp(1, 0);
  for (unsigned i = 0; i < ctx_->degree(); ++i) {
    acc += coeff(i).get_d() * zp;
    zp *= z;
  }
  return acc;
}

uint64_t Cyc::hash() const {
  uint64_t h = 0x12345;
  if (big_.empty()) {
    for (unsigned i = 0; i < ctx_->degree(); ++i)
      h = splitmix64(h ^ static_cast<uint64_t>(num_[i]));
    h = splitmix64(h ^ den_);
  } else {
    for (const Rat& r : big_) {
      h = splitmix64(h ^ mpz_fdiv_ui(r.get_num().get_mpz_t(), 0x7fffffffULL));
      h = splitmix64(h ^ mpz_fdiv_ui(r.get_den().get_mpz_t(), 0x7fffffffULL));
    }
  }
  return h;
}

std::string Cyc::serialize() const {
  std::string out;
  for (unsigned i = 0; i < ctx_->degree(); ++i) {
    if (i) out += ',';
    out += rat_to_string(coeff(i));
  }
  return out;
}

std::string Cyc::pretty() const {
  if (is_zero()) return "0";
  std::string out;
  for (unsigned i = 0; i < ctx_->degree(); ++i) {
    Rat c = coeff(i);
    if (c == 0) continue;
    std::string mag;
    Rat a = c > 0 ? c : Rat(-c);
    if (a != 1 || i == 0) {
      mag = a.get_str();
    }
    std::string mono = i == 0 ? "" : (i == 1 ? "zeta" : "zeta^" + std::to_string(i));
    std::string piece = mag;
    if (!mono.empty()) piece += (mag.empty() ? "" : "*") + mono;
    if (out.empty())
      out = (c < 0 ? "-" : "") + piece;
    else
      out += (c < 0 ? " - " : " + ") + piece;
  }
  return out;
}

Cyc Cyc::from_coeffs(const CycloCtx* ctx, const std::vector<Rat>& c) {
  if (c.size() != ctx->degree())
    throw std::invalid_argument("coefficient list length != field degree");
  Cyc r(ctx);
  r.big_ = c;
  r.canonicalize();
  return r;
}

Cyc Cyc::deserialize(const CycloCtx* ctx, const std::string& s) {
  std::vector<Rat> c;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      c.push_back(rat_from_string(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) c.push_back(rat_from_string(cur));
  return from_coeffs(ctx, c);
}

// ---------------------------------------------------------------- CycloCtx

CycloCtx::CycloCtx(unsigned N) : N_(N) {
  if (N < 1) throw std::invalid_argument("conductor must be >= 1");
  std::map<unsigned, ZPoly> memo;
  phi_ = cyclotomic_poly(N, memo);
  deg_ = static_cast<unsigned>(phi_.size()) - 1;
  if (deg_ > Cyc::kMaxDeg)
    throw std::invalid_argument("conductor too large for this build (phi(N) > 8)");

  // rows for zeta^{deg+k}, k = 0..deg-2, derived from the monic Phi_N
  if (deg_ >= 1) {
    std::vector<mpz_class> cur(deg_);
    for (unsigned i = 0; i < deg_; ++i) cur[i] = -phi_[i];
    red_rows_.push_back(cur);
    for (unsigned k = 1; k + 1 < deg_; ++k) {
      std::vector<mpz_class> nxt(deg_, mpz_class(0));
      for (unsigned i = 0; i + 1 < deg_; ++i) nxt[i + 1] = cur[i];
      if (cur[deg_ - 1] != 0)
        for (unsigned i = 0; i < deg_; ++i) nxt[i] += cur[deg_ - 1] * red_rows_[0][i];
      red_rows_.push_back(nxt);
      cur = nxt;
    }
  }

  zeta_pow_.reserve(N_);
  Cyc z(this);
  z.num_.fill(0);
  if (deg_ == 1) {
    // zeta is rational: zeta = -phi_[0]
    z.num_[0] = static_cast<int64_t>(mpz_class(-phi_[0]).get_si());
  } else {
    z.num_[1] = 1;
  }
  Cyc cur = one();
  for (unsigned e = 0; e < N_; ++e) {
    zeta_pow_.push_back(cur);
    cur = cur * z;
  }

  // q-combinatorics tables (q = zeta^2), sized for everything the algebras
  // use; below p = 2 the denominator q - q^{-1} vanishes
  if (p() >= 2) {
    unsigned top = 4 * p() + 2;
    qfac_.resize(top + 1);
    qfac_[0] = one();
    for (unsigned n = 1; n <= top; ++n) qfac_[n] = qfac_[n - 1] * qnum(n);
    qbin_.assign(top + 1, std::vector<Cyc>(top + 1, zero()));
    for (unsigned m = 0; m <= top; ++m) {
      qbin_[m][0] = one();
      for (unsigned n = 1; n <= m; ++n) {
        Cyc a = n <= m - 1 ? qpow(-long(n)) * qbin_[m - 1][n] : zero();
        Cyc b = qpow(long(m) - long(n)) * qbin_[m - 1][n - 1];
        qbin_[m][n] = a + b;
      }
    }
  }
}

Cyc CycloCtx::zero() const { return Cyc(this); }

Cyc CycloCtx::one() const {
  Cyc r(this);
  r.num_[0] = 1;
  return r;
}

Cyc CycloCtx::from_long(long v) const {
  Cyc r(this);
  r.num_[0] = v;
  return r;
}

Cyc CycloCtx::from_rat(const Rat& r) const {
  Cyc c(this);
  c.big_.assign(degree(), Rat(0));
  c.big_[0] = r;
  c.canonicalize();
  return c;
}

Cyc CycloCtx::zeta(long e) const {
  long m = e % static_cast<long>(N_);
  if (m < 0) m += N_;
  return zeta_pow_[static_cast<size_t>(m)];
}

Cyc CycloCtx::qpow(long k) const { return zeta(2 * k); }

Cyc CycloCtx::qpow_half(long t) const { return zeta(t); }

Cyc CycloCtx::q_minus_qinv() const { return qpow(1) - qpow(-1); }

Cyc CycloCtx::qnum_half(long twice_n) const {
  Cyc num = zeta(twice_n) - zeta(-twice_n);
  Cyc den = q_minus_qinv();
  if (den.is_zero()) throw std::domain_error("q - q^{-1} = 0 in this context");
  return num * den.inv();
}

Cyc CycloCtx::qfac(long n) const {
  if (n < 0 || n >= static_cast<long>(qfac_.size()))
    throw std::invalid_argument("qfac argument out of range");
  return qfac_[static_cast<size_t>(n)];
}

Cyc CycloCtx::qbin(long m, long n) const {
  if (m < 0 || n < 0 || n > m || m >= static_cast<long>(qbin_.size()))
    throw std::invalid_argument("qbin arguments out of range");
  return qbin_[static_cast<size_t>(m)][static_cast<size_t>(n)];
}

const std::vector<mpz_class>& CycloCtx::reduction_row(unsigned k) const {
  return red_rows_[k];
}

// ---------------------------------------------------------------- CycPool

CycPool::CycPool(const CycloCtx* ctx) : ctx_(ctx) {
  buckets_.resize(1 << 12);
  mask_ = buckets_.size() - 1;
  values_.push_back(ctx->one());
  buckets_[values_[0].hash() & mask_].push_back(0);
}

void CycPool::rehash() {
  std::vector<std::vector<uint32_t>> nb(buckets_.size() * 4);
  size_t nm = nb.size() - 1;
  for (uint32_t id = 0; id < values_.size(); ++id)
    nb[values_[id].hash() & nm].push_back(id);
  buckets_ = std::move(nb);
  mask_ = nm;
}

uint32_t CycPool::intern(const Cyc& v) {
  uint64_t h = v.hash();
  auto& bucket = buckets_[h & mask_];
  for (uint32_t id : bucket)
    if (values_[id] == v) return id;
  uint32_t id = static_cast<uint32_t>(values_.size());
  values_.push_back(v);
  bucket.push_back(id);
  if (values_.size() > buckets_.size() * 4) rehash();
  return id;
}

}  // namespace hopfforge
