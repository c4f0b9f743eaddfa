#include "expr.hpp"

#include "doctest.h"
#include "engine.hpp"
#include "suites.hpp"
#include "test_util.hpp"

using namespace hopfforge;

TEST_CASE("parsing") {
  SUBCASE("the hbar sample expression") {
    ExprPtr e = parse_element("q^-2 * z*d + (q - q^-1)");
    CHECK(e->kind == ExprNode::Kind::Add);
    std::string printed = expr_to_string(*e);
    // pretty-print . parse . pretty-print is idempotent
    CHECK(expr_to_string(*parse_element(printed)) == printed);
  }
  SUBCASE("smash pairs") {
    ExprPtr e = parse_element("F # E*k^3");
    // '#' binds tighter than '*': (F # E) * k^3
    CHECK(e->kind == ExprNode::Kind::Mul);
    CHECK(e->kids[0]->kind == ExprNode::Kind::Smash);
    CHECK_THROWS_AS(parse_element("F # E # k"), ParseError);
  }
  SUBCASE("identifiers are literal: z^p is a parse error at p") {
    try {
      parse_element("z^p");
      FAIL("expected a parse error");
    } catch (const ParseError& err) {
      CHECK(err.pos == 2);
    }
  }
  SUBCASE("q powers") {
    CHECK(parse_element("q^(1/2)")->half_steps == 1);
    CHECK(parse_element("q^(-3/2)")->half_steps == -3);
    CHECK(parse_element("q^-2")->half_steps == -4);
    CHECK(parse_element("q")->half_steps == 2);
    CHECK_THROWS_AS(parse_element("q^(1/3)"), ParseError);
    CHECK_THROWS_AS(parse_element("z^-1"), ParseError);
    CHECK_THROWS_AS(parse_element("3/0"), ParseError);
    CHECK_THROWS_AS(parse_element("z^9999999"), ParseError);
  }
}

TEST_CASE("evaluation") {
  Engine eng(2);
  const CycloCtx& ctx = eng.ctx();

  SUBCASE("d*z in hbar is (q - q^{-1}) 1 + q^{-2} z d") {
    const ExprAlgebra& alg = eng.algebra("hbar");
    Vec got = eval_element(*parse_element("d*z"), alg);
    Vec want = eval_element(*parse_element("(q - q^-1) + q^-2 * z*d"), alg);
    CHECK(vec_eq(got, want));
    CHECK(!vec_eq(got, eval_element(*parse_element("z*d"), alg)));
  }
  SUBCASE("the unit expression") {
    const ExprAlgebra& alg = eng.algebra("uq");
    CHECK(vec_eq(eval_element(*parse_element("1"), alg), alg.unit));
  }
  SUBCASE("E^p vanishes in uq") {
    const ExprAlgebra& alg = eng.algebra("uq");
    CHECK(eval_element(*parse_element("E^2"), alg).empty());
  }
  SUBCASE("unknown identifiers carry their position") {
    const ExprAlgebra& alg = eng.algebra("uq");
    try {
      eval_element(*parse_element("E*zz"), alg);
      FAIL("expected an error");
    } catch (const ParseError& err) {
      CHECK(err.pos == 2);
    }
  }
  SUBCASE("smash pairs in the heisenberg algebra") {
    const ExprAlgebra& alg = eng.algebra("heisenberg");
    Vec got = eval_element(*parse_element("F # E*k^3"), alg);
    // (F # E) * (eps # k^3) = F # E k^3
    Vec direct = eval_element(*parse_element("F # (E*k^3)"), alg);
    CHECK(vec_eq(got, direct));
    // z = -(q - q^{-1}) * (1 # E*k^6) at p = 2
    Vec z = eval_element(*parse_element("z"), alg);
    Vec via = eval_element(*parse_element("(q^-1 - q)*(1 # E*k^6)"), alg);
    CHECK(vec_eq(z, via));
  }
  SUBCASE("eval is multiplicative on random generator words") {
    const ExprAlgebra& alg = eng.algebra("double");
    Rng rng(99);
    std::vector<std::string> atoms{"E", "F", "k", "kappa", "q", "2", "k^3", "F*kappa"};
    for (int t = 0; t < 40; ++t) {
      std::string a = atoms[rng.below(atoms.size())] + "*" + atoms[rng.below(atoms.size())];
      std::string b = atoms[rng.below(atoms.size())];
      Vec va = eval_element(*parse_element(a), alg);
      Vec vb = eval_element(*parse_element(b), alg);
      Vec prod = eval_element(*parse_element(a + "*(" + b + ")"), alg);
      CHECK(vec_eq(prod, alg.mul(va, vb)));
    }
  }
}

TEST_CASE("pretty printing round trips through the parser") {
  Engine eng(2);
  const ExprAlgebra& alg = eng.algebra("heisenberg");
  for (const char* src : {"z*d + lam", "kappa^2", "(q - q^-1)*z", "F # E", "3/2 * d^1"}) {
    Vec v1 = eval_element(*parse_element(src), alg);
    std::string printed = expr_to_string(*parse_element(src));
    Vec v2 = eval_element(*parse_element(printed), alg);
    CHECK(vec_eq(v1, v2));
    CHECK(expr_to_string(*parse_element(printed)) == printed);
  }
}

TEST_CASE("reports with one seed are identical") {
  Engine eng(2);
  Report a = run_suite(eng, "normal-order", 12345);
  Report b = run_suite(eng, "normal-order", 12345);
  a.ms = b.ms = 0;  // wall time is excluded from determinism
  CHECK(a.to_json() == b.to_json());

  Report c = run_suite(eng, "worked-examples", 777);
  Report d = run_suite(eng, "worked-examples", 777);
  c.ms = d.ms = 0;
  CHECK(c.to_json() == d.to_json());
}

TEST_CASE("exports are byte-stable") {
  Engine eng(2);
  CHECK(export_bundle(eng, "uq", "json") == export_bundle(eng, "uq", "json"));
  CHECK(export_bundle(eng, "matp", "text") == export_bundle(eng, "matp", "text"));
  // 2 p^3 = 16 basis labels in the uq dump
  std::string j = export_bundle(eng, "uq", "json");
  CHECK(j.find("\"dim\": 16") != std::string::npos);
  CHECK_THROWS_AS(export_bundle(eng, "nosuch", "json"), std::invalid_argument);
  CHECK_THROWS_AS(export_bundle(eng, "uq", "yaml"), std::invalid_argument);
}
