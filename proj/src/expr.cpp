#include "expr.hpp"

#include <cctype>

namespace hopfforge {

namespace {

constexpr long kMaxPower = 1 << 20;

class Parser {
 public:
  explicit Parser(const std::string& src) : s_(src) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ < s_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  ExprPtr expr() {
    skip_ws();
    bool neg = eat('-');
    ExprPtr first = term();
    if (neg) {
      auto n = std::make_unique<ExprNode>();
      n->kind = ExprNode::Kind::Neg;
      n->pos = first->pos;
      n->kids.push_back(std::move(first));
      first = std::move(n);
    }
    auto sum = std::make_unique<ExprNode>();
    sum->kind = ExprNode::Kind::Add;
    sum->pos = first->pos;
    sum->kids.push_back(std::move(first));
    while (true) {
      skip_ws();
      if (eat('+')) {
        sum->kids.push_back(term());
      } else if (eat('-')) {
        ExprPtr t = term();
        auto n = std::make_unique<ExprNode>();
        n->kind = ExprNode::Kind::Neg;
        n->pos = t->pos;
        n->kids.push_back(std::move(t));
        sum->kids.push_back(std::move(n));
      } else {
        break;
      }
    }
    if (sum->kids.size() == 1) return std::move(sum->kids.front());
    return sum;
  }

  ExprPtr term() {
    auto prod = std::make_unique<ExprNode>();
    prod->kind = ExprNode::Kind::Mul;
    prod->kids.push_back(smash_factor());
    prod->pos = prod->kids.front()->pos;
    while (eat('*')) prod->kids.push_back(smash_factor());
    if (prod->kids.size() == 1) return std::move(prod->kids.front());
    return prod;
  }

  ExprPtr smash_factor() {
    ExprPtr left = factor();
    if (eat('#')) {
      ExprPtr right = factor();
      skip_ws();
      if (peek() == '#') throw ParseError("'#' is non-associative", pos_);
      auto n = std::make_unique<ExprNode>();
      n->kind = ExprNode::Kind::Smash;
      n->pos = left->pos;
      n->kids.push_back(std::move(left));
      n->kids.push_back(std::move(right));
      return n;
    }
    return left;
  }

  ExprPtr factor() {
    ExprPtr base = atom();
    if (eat('^')) {
      if (base->kind == ExprNode::Kind::QPow) {
        throw ParseError("unexpected '^' after q power", pos_);
      }
      size_t at = pos_;
      skip_ws();
      bool paren = eat('(');
      bool neg = eat('-');
      long n = integer();
      long den = 1;
      if (paren && eat('/')) den = integer();
      if (paren && !eat(')')) throw ParseError("expected ')'", pos_);
      if (den != 1) throw ParseError("fractional powers only allowed on q", at);
      if (neg) throw ParseError("negative powers only allowed on q", at);
      if (n > kMaxPower) throw ParseError("power overflow", at);
      auto p = std::make_unique<ExprNode>();
      p->kind = ExprNode::Kind::Pow;
      p->pos = base->pos;
      p->exponent = n;
      p->kids.push_back(std::move(base));
      return p;
    }
    return base;
  }

  long integer() {
    skip_ws();
    size_t at = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected integer", at);
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > kMaxPower * 16L) throw ParseError("integer overflow", at);
      ++pos_;
    }
    return v;
  }

  ExprPtr atom() {
    skip_ws();
    size_t at = pos_;
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", at);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = integer();
      long den = 1;
      if (eat('/')) den = integer();
      if (den == 0) throw ParseError("malformed scalar: zero denominator", at);
      auto n = std::make_unique<ExprNode>();
      n->kind = ExprNode::Kind::Num;
      n->num = make_rat(num, den);
      n->pos = at;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        name += s_[pos_++];
      if (name == "q") {
        // q, q^k, q^-k, q^(k/2), q^(-k/2)
        long half = 2;
        size_t save = pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip_ws();
          bool paren = eat('(');
          bool neg = eat('-');
          long n = integer();
          long den = 1;
          if (paren && eat('/')) den = integer();
          if (paren && !eat(')')) throw ParseError("expected ')'", pos_);
          if (den != 1 && den != 2) throw ParseError("q powers take halves only", save);
          half = den == 2 ? n : 2 * n;
          if (neg) half = -half;
        } else {
          pos_ = save;
        }
        auto n = std::make_unique<ExprNode>();
        n->kind = ExprNode::Kind::QPow;
        n->half_steps = half;
        n->pos = at;
        return n;
      }
      auto n = std::make_unique<ExprNode>();
      n->kind = ExprNode::Kind::Ident;
      n->ident = name;
      n->pos = at;
      return n;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }
};

struct EvalVal {
  Cyc scalar;
  std::optional<Vec> elem;
};

EvalVal eval_node(const ExprNode& e, const ExprAlgebra& alg);

Vec as_elem(const EvalVal& v, const ExprAlgebra& alg) {
  if (v.elem) return *v.elem;
  return alg.unit;
}

// scalar part folded in
Vec full_value(const EvalVal& v, const ExprAlgebra& alg) {
  return vec_scale(v.elem ? *v.elem : alg.unit, v.scalar);
}

EvalVal eval_node(const ExprNode& e, const ExprAlgebra& alg) {
  const CycloCtx* ctx = alg.ctx;
  switch (e.kind) {
    case ExprNode::Kind::Num:
      return {ctx->from_rat(e.num), std::nullopt};
    case ExprNode::Kind::QPow:
      return {ctx->qpow_half(e.half_steps), std::nullopt};
    case ExprNode::Kind::Ident: {
      auto it = alg.gens.find(e.ident);
      if (it == alg.gens.end())
        throw ParseError("unknown identifier '" + e.ident + "' in algebra " + alg.name, e.pos);
      return {ctx->one(), it->second};
    }
    case ExprNode::Kind::Pow: {
      EvalVal base = eval_node(*e.kids[0], alg);
      if (!base.elem) return {base.scalar.pow(e.exponent), std::nullopt};
      Vec r = alg.unit;
      for (long i = 0; i < e.exponent; ++i) r = alg.mul(r, *base.elem);
      return {base.scalar.pow(e.exponent), vec_scale(r, ctx->one())};
    }
    case ExprNode::Kind::Neg: {
      EvalVal v = eval_node(*e.kids[0], alg);
      v.scalar = -v.scalar;
      return v;
    }
    case ExprNode::Kind::Mul: {
      Cyc sc = ctx->one();
      std::optional<Vec> elem;
      for (const auto& k : e.kids) {
        EvalVal v = eval_node(*k, alg);
        sc = sc * v.scalar;
        if (v.elem) {
          elem = elem ? alg.mul(*elem, *v.elem) : *v.elem;
        }
      }
      return {sc, elem};
    }
    case ExprNode::Kind::Add: {
      VecAcc acc;
      for (const auto& k : e.kids) {
        EvalVal v = eval_node(*k, alg);
        for (const auto& [i, c] : full_value(v, alg)) acc.add(i, c);
      }
      return {ctx->one(), acc.take()};
    }
    case ExprNode::Kind::Smash: {
      if (!alg.smash_left || !alg.smash_right || !alg.smash_combine)
        throw ParseError("'#' is not available in algebra " + alg.name, e.pos);
      EvalVal l = eval_node(*e.kids[0], *alg.smash_left);
      EvalVal r = eval_node(*e.kids[1], *alg.smash_right);
      Vec combined = alg.smash_combine(as_elem(l, *alg.smash_left), as_elem(r, *alg.smash_right));
      return {l.scalar * r.scalar, combined};
    }
  }
  throw std::logic_error("unhandled expression node");
}

}  // namespace

ExprPtr parse_element(const std::string& src) { return Parser(src).parse(); }

std::string expr_to_string(const ExprNode& e) {
  switch (e.kind) {
    case ExprNode::Kind::Num: {
      if (e.num.get_den() == 1) return e.num.get_num().get_str();
      return e.num.get_num().get_str() + "/" + e.num.get_den().get_str();
    }
    case ExprNode::Kind::QPow: {
      if (e.half_steps == 2) return "q";
      if (e.half_steps % 2 == 0) return "q^" + std::to_string(e.half_steps / 2);
      return "q^(" + std::to_string(e.half_steps) + "/2)";
    }
    case ExprNode::Kind::Ident:
      return e.ident;
    case ExprNode::Kind::Pow:
      return expr_to_string(*e.kids[0]) + "^" + std::to_string(e.exponent);
    case ExprNode::Kind::Neg:
      return "-" + expr_to_string(*e.kids[0]);
    case ExprNode::Kind::Mul: {
      std::string out;
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += "*";
        bool paren = e.kids[i]->kind == ExprNode::Kind::Add || e.kids[i]->kind == ExprNode::Kind::Neg;
        out += paren ? "(" + expr_to_string(*e.kids[i]) + ")" : expr_to_string(*e.kids[i]);
      }
      return out;
    }
    case ExprNode::Kind::Add: {
      std::string out;
      for (size_t i = 0; i < e.kids.size(); ++i) {
        const ExprNode* k = e.kids[i].get();
        if (k->kind == ExprNode::Kind::Neg) {
          out += (i ? " - " : "-");
          out += expr_to_string(*k->kids[0]);
        } else {
          if (i) out += " + ";
          out += expr_to_string(*k);
        }
      }
      return out;
    }
    case ExprNode::Kind::Smash: {
      auto wrap = [](const ExprNode& n) {
        bool paren = n.kind == ExprNode::Kind::Add || n.kind == ExprNode::Kind::Mul ||
                     n.kind == ExprNode::Kind::Neg;
        return paren ? "(" + expr_to_string(n) + ")" : expr_to_string(n);
      };
      return wrap(*e.kids[0]) + " # " + wrap(*e.kids[1]);
    }
  }
  return "?";
}

Vec eval_element(const ExprNode& e, const ExprAlgebra& alg) {
  EvalVal v = eval_node(e, alg);
  return full_value(v, alg);
}

std::string scalar_pretty(const Cyc& c) {
  if (c.is_zero()) return "0";
  const CycloCtx* ctx = c.ctx();
  for (unsigned t = 0; t < ctx->conductor(); ++t) {
    Cyc rot = c * ctx->zeta(-long(t));
    bool rational = true;
    for (unsigned i = 1; i < ctx->degree(); ++i)
      if (!(rot.coeff(i) == 0)) {
        rational = false;
        break;
      }
    if (!rational) continue;
    Rat r = rot.coeff(0);
    std::string mag;
    if (r == 1 && t > 0)
      mag = "";
    else if (r == -1 && t > 0)
      mag = "-";
    else {
      mag = r.get_num().get_str();
      if (r.get_den() != 1) mag += "/" + r.get_den().get_str();
      if (t > 0) mag += "*";
    }
    if (t == 0) return mag;
    if (t % 2 == 0) {
      long k = t / 2;
      return mag + (k == 1 ? "q" : "q^" + std::to_string(k));
    }
    return mag + "q^(" + std::to_string(t) + "/2)";
  }
  return "(" + c.pretty() + ")";
}

std::string element_pretty(const Vec& v, const ExprAlgebra& alg) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : v) {
    std::string sc = scalar_pretty(c);
    bool negative = !sc.empty() && sc[0] == '-';
    if (negative) sc = sc.substr(1);
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    const std::string& lbl = alg.labels[i];
    if (lbl == "1") {
      out += sc.empty() ? "1" : sc;
    } else if (sc.empty()) {
      out += lbl;
    } else if (sc == "1") {
      out += lbl;
    } else {
      out += sc + (sc.back() == '*' ? "" : "*") + lbl;
    }
  }
  return out;
}

}  // namespace hopfforge
