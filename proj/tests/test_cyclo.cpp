#include "cyclo.hpp"

#include <complex>

#include "doctest.h"
#include "vec.hpp"

using namespace hopfforge;

namespace {

// independent oracle: divide x^12 - 1 by the hardcoded small cyclotomics
std::vector<long> phi12_oracle() {
  auto mul = [](std::vector<long> a, const std::vector<long>& b) {
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  std::vector<long> den{1};  // Phi_1 Phi_2 Phi_3 Phi_4 Phi_6
  for (const auto& f : {std::vector<long>{-1, 1}, {1, 1}, {1, 1, 1}, {1, 0, 1}, {1, -1, 1}})
    den = mul(den, f);
  std::vector<long> num(13, 0);
  num[0] = -1;
  num[12] = 1;
  std::vector<long> q(num.size() - den.size() + 1, 0);
  while (num.size() >= den.size()) {
    long c = num.back() / den.back();
    size_t shift = num.size() - den.size();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    while (!num.empty() && num.back() == 0) num.pop_back();
    if (num.empty()) break;
  }
  REQUIRE(num.empty());
  return q;
}

}  // namespace

TEST_CASE("small cyclotomic polynomials") {
  CHECK(CycloCtx(4).minimal_polynomial() == std::vector<mpz_class>{1, 0, 1});   // x^2+1
  CHECK(CycloCtx(1).minimal_polynomial() == std::vector<mpz_class>{-1, 1});     // x-1
  auto oracle = phi12_oracle();
  CycloCtx c12(12);
  const auto& got = c12.minimal_polynomial();
  REQUIRE(got.size() == oracle.size());
  for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == oracle[i]);
}

TEST_CASE("field operations") {
  CycloCtx c4(4);
  CHECK(c4.zeta(1) * c4.zeta(1) == c4.from_long(-1));  // zeta_4 = i

  CycloCtx c8(8);
  Cyc q = c8.q();
  CHECK(q.inv() * q == c8.one());
  Cyc e = c8.zeta(1) + c8.zeta(3);
  CHECK(e * e == c8.from_long(-2));
  // float oracle at zeta = e^{i pi / 4}
  std::complex<double> z = std::polar(1.0, M_PI / 4.0);
  std::complex<double> v = z + z * z * z;
  CHECK(std::abs(v * v - std::complex<double>(-2, 0)) < 1e-12);
  CHECK(std::abs((e * e).embed() - v * v) < 1e-12);

  CHECK_THROWS_AS(c8.zero().inv(), std::domain_error);
  CHECK_THROWS_AS((void)(c8.one() + CycloCtx(4).one()), std::invalid_argument);
}

TEST_CASE("q-integers") {
  for (unsigned p : {2u, 3u, 5u}) {
    CycloCtx ctx(4 * p);
    CHECK(ctx.qnum(1) == ctx.one());
    CHECK(ctx.qnum(p).is_zero());  // q^p = -1 forces [p] = 0
    CHECK(ctx.qnum(-3) == -ctx.qnum(3));
    // recursion [n+1] = q [n] + q^{-n}
    for (long n = 0; n < long(2 * p); ++n)
      CHECK(ctx.qnum(n + 1) == ctx.q() * ctx.qnum(n) + ctx.qpow(-n));
  }
  CycloCtx c12(12);
  CHECK(c12.qnum(2) == c12.one());  // 2 cos(pi/3) = 1
  CHECK(std::abs(c12.qnum(2).embed() - 2.0 * std::cos(M_PI / 3.0)) < 1e-12);
}

TEST_CASE("q-binomials") {
  for (unsigned p : {2u, 3u, 5u}) {
    CycloCtx ctx(4 * p);
    for (long m = 0; m <= long(2 * p); ++m) {
      CHECK(ctx.qbin(m, 0) == ctx.one());
      for (long n = 0; n <= m; ++n) CHECK(ctx.qbin(m, n) == ctx.qbin(m, m - n));
    }
    for (long s = 1; s < long(p); ++s) CHECK(ctx.qbin(p, s).is_zero());
    // factorial ratio whenever denominators are nonzero
    for (long m = 0; m < long(p); ++m)
      for (long n = 0; n <= m; ++n)
        CHECK(ctx.qbin(m, n) == ctx.qfac(m) * (ctx.qfac(m - n) * ctx.qfac(n)).inv());
  }
  CycloCtx c12(12);
  CHECK(c12.qbin(2, 1) == c12.one());
  CHECK_THROWS_AS(c12.qbin(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(c12.qfac(-1), std::invalid_argument);
}

TEST_CASE("random expressions stay within the float oracle") {
  CycloCtx ctx(12);
  Rng rng(20240817);
  std::complex<double> z = std::polar(1.0, 2.0 * M_PI / 12.0);
  for (int trial = 0; trial < 100; ++trial) {
    Cyc a = ctx.zero();
    std::complex<double> fa(0, 0);
    for (int t = 0; t < 6; ++t) {
      long num = long(rng.below(19)) - 9;
      long den = 1 + long(rng.below(4));
      unsigned e = unsigned(rng.below(12));
      a += ctx.from_rat(make_rat(num, den)) * ctx.zeta(e);
      fa += double(num) / double(den) * std::pow(z, e);
    }
    Cyc b = a * a - ctx.from_long(3) * a;
    std::complex<double> fb = fa * fa - 3.0 * fa;
    CHECK(std::abs(b.embed() - fb) < 1e-9);
  }
}

TEST_CASE("serialization round trip") {
  CycloCtx ctx(8);
  Cyc v = ctx.from_rat(make_rat(3, 7)) * ctx.zeta(3) - ctx.from_rat(make_rat(1, 2));
  std::string s = v.serialize();
  CHECK(Cyc::deserialize(&ctx, s) == v);
  CHECK(Cyc::deserialize(&ctx, s).serialize() == s);
  CHECK(rat_to_string(rat_from_string("6/4")) == "3/2");
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}

TEST_CASE("interning pool") {
  CycloCtx ctx(8);
  CycPool pool(&ctx);
  uint32_t a = pool.intern(ctx.q());
  uint32_t b = pool.intern(ctx.qpow(1));
  CHECK(a == b);
  CHECK(pool.at(a) == ctx.q());
  CHECK(pool.intern(ctx.qpow(2)) != a);
}
