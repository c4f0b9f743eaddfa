#pragma once

// Element expressions for the CLI: sums, scalar multiples, products and
// powers of declared generators, smash pairs via '#', scalars as rationals
// and q-powers (q^k, q^(k/2)).  Precedence '^' > '#' > '*' > '+'; '#' is
// non-associative and only meaningful for the double-type algebras.

#include <map>
#include <memory>

#include "hopf.hpp"

namespace hopfforge {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t p)
      : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

struct ExprNode {
  enum class Kind { Num, QPow, Ident, Pow, Mul, Add, Neg, Smash } kind;
  Rat num;                 // Num
  long half_steps = 0;     // QPow: q^{half_steps/2}
  std::string ident;       // Ident
  size_t pos = 0;          // source position of this node
  long exponent = 0;       // Pow
  std::vector<std::unique_ptr<ExprNode>> kids;
};

using ExprPtr = std::unique_ptr<ExprNode>;

ExprPtr parse_element(const std::string& src);
std::string expr_to_string(const ExprNode& e);

// An evaluation target: generators by name over a fixed ordered basis.
struct ExprAlgebra {
  std::string name;
  const CycloCtx* ctx = nullptr;
  uint32_t dim = 0;
  std::vector<std::string> labels;
  Vec unit;
  std::function<Vec(const Vec&, const Vec&)> mul;
  std::map<std::string, Vec> gens;
  // smash-pair support: '#' evaluates the sides in these registries
  const ExprAlgebra* smash_left = nullptr;
  const ExprAlgebra* smash_right = nullptr;
  std::function<Vec(const Vec&, const Vec&)> smash_combine;
};

Vec eval_element(const ExprNode& e, const ExprAlgebra& alg);
std::string element_pretty(const Vec& v, const ExprAlgebra& alg);
std::string scalar_pretty(const Cyc& c);

}  // namespace hopfforge
