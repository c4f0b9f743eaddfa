#pragma once

// Lazily-built bundle registry for one value of p, plus the expression
// evaluation targets the CLI addresses by name.  Supported tiers are
// p in {2, 3, 5}; the double-sized bundles are available for p <= 3.

#include "algebroid.hpp"
#include "expr.hpp"

namespace hopfforge {

class Engine {
 public:
  explicit Engine(unsigned p);
  ~Engine();

  unsigned p() const { return p_; }
  const CycloCtx& ctx() const { return ctx_; }
  static bool supported_p(unsigned p) { return p == 2 || p == 3 || p == 5; }
  bool doubles_supported() const { return p_ <= 3; }

  TaftBundle& taft();  // includes D(B), H(B*), heterotic action (p <= 3)
  UqBundle& uq();
  HbarBundle& hbar();
  MatRealization& mat();
  TruncFactors& trunc();

  // certified YD structures (certification runs once, seeded)
  YDModuleAlgebra& heisenberg_yd();
  YDModuleAlgebra& restricted_bscop();
  YDModuleAlgebra& restricted_b();
  // mat / matlam certified in place inside mat()
  Algebroid& algebroid(bool with_lambda);

  YDPolicy default_policy(uint64_t seed) const;
  std::vector<uint32_t> ubar_generator_indices();

  // expression evaluation registry: taft, taftdual, double, heisenberg,
  // uq, hbar, matp
  const ExprAlgebra& algebra(const std::string& name);
  std::vector<std::string> algebra_names();

 private:
  void ensure_mat_certified();
  unsigned p_;
  CycloCtx ctx_;
  std::unique_ptr<TaftBundle> taft_;
  std::unique_ptr<UqBundle> uq_;
  std::unique_ptr<HbarBundle> hbar_;
  std::unique_ptr<MatRealization> mat_;
  std::unique_ptr<TruncFactors> trunc_;
  std::unique_ptr<YDModuleAlgebra> hyd_, xs_, xb_;
  std::unique_ptr<Algebroid> alg_plain_, alg_lam_;
  bool mat_certified_ = false;
  std::map<std::string, std::unique_ptr<ExprAlgebra>> expr_;
};

}  // namespace hopfforge
