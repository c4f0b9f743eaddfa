#pragma once

// The concrete family: the 4p^2-dimensional Taft Hopf algebra B, its dual in
// the (F, kappa) basis, D(B) and H(B*) with the presentation checks, the
// D-action table, truncation to the 2p^3-dimensional quantum group and its
// Heisenberg counterpart, the Mat_p realization, normal ordering, the printed
// worked examples, and truncated chains.

#include <memory>

#include "doubles.hpp"

namespace hopfforge {

struct TaftBundle {
  unsigned p = 0;
  const CycloCtx* ctx = nullptr;

  std::unique_ptr<OrderedAlgebra> oaB;  // E < k
  HopfAlgebra B;                        // basis E^m k^n, index m*4p + n
  HopfAlgebra BsRaw;                    // dual basis of B's basis
  HopfAlgebra Bs;                       // basis F^a kappa^b, index a*4p + b
  DenseMat basis_change;                // columns: F^a kappa^b in raw dual coords
  DenseMat pairing;                     // <F^a kappa^b, E^m k^n>

  std::unique_ptr<DoubleBundle> dbl;

  // generator handles
  uint32_t idxB(uint32_t m, uint32_t n) const { return m * 4 * p + n; }
  uint32_t idxBs(uint32_t a, uint32_t b) const { return a * 4 * p + b; }
  Vec E_B, k_B, F_Bs, kappa_Bs;

  // the (kappa, z, lambda, partial) elements of H(B*)
  Vec z_H, lambda_H, partial_H, kappa_H;
  Vec hpow(const Vec& v, uint32_t e) const;  // powers in H(B*)

  TaftBundle() = default;
  TaftBundle(const TaftBundle&) = delete;
  TaftBundle& operator=(const TaftBundle&) = delete;
};

std::unique_ptr<TaftBundle> build_taft(const CycloCtx* ctx);

// §3.1.2: relations i)-iii) plus the Delta_D / S_D displays, and agreement of
// D(B) with the four-generator presentation's structure constants.
Report verify_double_presentation(const TaftBundle& T);

// §3.1.3: (kappa, z, lambda, partial) is a basis; its relations hold.
Report verify_hd_basis(const TaftBundle& T);

// Eq. (D-action): every table cell against the heterotic action, with the two
// suspected-typo cells checked in printed and exponent-corrected form.
Report verify_d_action_table(const TaftBundle& T);

// ----- U-bar ----------------------------------------------------------------

struct UqBundle {
  unsigned p = 0;
  const CycloCtx* ctx = nullptr;
  std::unique_ptr<OrderedAlgebra> oa;  // F < E < K
  HopfAlgebra U;                       // basis F^l E^m K^n, index (l*p + m)*2p + n
  uint32_t idx(uint32_t l, uint32_t m, uint32_t n) const { return (l * p + m) * 2 * p + n; }
  Vec E, F, K, Kinv;

  UqBundle() = default;
  UqBundle(const UqBundle&) = delete;
  UqBundle& operator=(const UqBundle&) = delete;
};

std::unique_ptr<UqBundle> build_uq(const CycloCtx* ctx);

// quotient-then-subalgebra route: D(B)/(kappa k - 1) restricted to the span
// of F^l E^m k^{2n}, compared against the presentation structure constants
Report verify_uq_truncation(const TaftBundle& T, const UqBundle& Uq);

// ----- H-bar ----------------------------------------------------------------

struct HbarBundle {
  unsigned p = 0;
  const CycloCtx* ctx = nullptr;
  const UqBundle* uq = nullptr;
  std::unique_ptr<OrderedAlgebra> oa;     // z < lambda < partial
  std::unique_ptr<OrderedAlgebra> oaCzd;  // z < partial
  YDModuleAlgebra hbar;  // dim 2p^3 over U
  YDModuleAlgebra czd;   // C_q[z, partial], dim p^2, the lambda-free part
  uint32_t idx(uint32_t a, uint32_t b, uint32_t c) const { return (a * 2 * p + b) * p + c; }
  uint32_t idxCzd(uint32_t a, uint32_t c) const { return a * p + c; }

  HbarBundle() = default;
  HbarBundle(const HbarBundle&) = delete;
  HbarBundle& operator=(const HbarBundle&) = delete;
};

std::unique_ptr<HbarBundle> build_hbar(const UqBundle& Uq);

// consistency of the truncated pair with (D(B), H(B*)): the subquotient map
// intertwines actions and coactions, and the two U-bar constructions agree
Report verify_hbar_truncation(const TaftBundle& T, const UqBundle& Uq, const HbarBundle& Hb);

// ----- normal ordering -------------------------------------------------------

// closed form for partial^m z^n as a combination of z^{n-i} partial^{m-i}
Vec normal_order_closed(const HbarBundle& Hb, uint32_t m, uint32_t n);
// rewriting oracle: the single-swap straightening engine
Vec normal_order_rewrite(const HbarBundle& Hb, uint32_t m, uint32_t n);
Report verify_normal_order(const HbarBundle& Hb);

// ----- matrix realization ----------------------------------------------------

struct MatRealization {
  unsigned p = 0;
  const CycloCtx* ctx = nullptr;
  const UqBundle* uq = nullptr;
  DenseMat Z, D;           // p x p
  DenseMat rho, rho_inv;   // czd basis z^a partial^c -> Mat_p coordinates e_ij
  YDModuleAlgebra mat;     // Mat_p(C) with the (K-mat)-(F-mat) action, index i*p+j
  YDModuleAlgebra matlam;  // Mat_p(C_2p[lambda]), index (i*p+j)*2p + t

  MatRealization() = default;
  MatRealization(const MatRealization&) = delete;
  MatRealization& operator=(const MatRealization&) = delete;
};

std::unique_ptr<MatRealization> build_matrix_realization(const UqBundle& Uq,
                                                         const HbarBundle& Hb);

// rho is an algebra isomorphism and transports action and coaction
Report verify_matrix_realization(const HbarBundle& Hb, const MatRealization& M);

// the printed p=3 F-action display, the p=2 coaction display, and the p=2
// braided-commutativity expansion, entry by entry
Report verify_worked_examples(const HbarBundle& Hb, const MatRealization& M, uint64_t seed);

// ----- truncated chains -------------------------------------------------------

struct TruncFactors {
  YDModuleAlgebra cz;  // C_p[z]
  YDModuleAlgebra cd;  // C_p*[partial]
  TruncFactors() = default;
  TruncFactors(const TruncFactors&) = delete;
  TruncFactors& operator=(const TruncFactors&) = delete;
};
std::unique_ptr<TruncFactors> build_trunc_factors(const HbarBundle& Hb);

// alternating pattern C*[d1] |><| C[z2] |><| ... with n factors
std::vector<const YDModuleAlgebra*> trunc_chain_factors(const TruncFactors& F, uint32_t n);

}  // namespace hopfforge
