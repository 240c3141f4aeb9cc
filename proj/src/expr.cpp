#include "ncann/expr.hpp"

#include "ncann/algebra.hpp"
#include "lexer.hpp"

namespace ncann {

namespace {

using detail::Lexer;
using detail::Token;

class PolyParser {
 public:
  PolyParser(Lexer& lx, const Presentation& P, const Bounds& b, const Endomorphism& alpha)
      : lx_(lx), P_(P), b_(b), alpha_(alpha) {}

  SkewPoly expr() {
    int sign = 1;
    if (lx_.accept_sym("-")) sign = -1;
    SkewPoly acc = signed_term(sign);
    while (true) {
      if (lx_.accept_sym("+"))
        acc = add_poly(P_.field, acc, signed_term(1));
      else if (lx_.accept_sym("-"))
        acc = add_poly(P_.field, acc, signed_term(-1));
      else
        break;
    }
    return acc;
  }

 private:
  SkewPoly signed_term(int sign) {
    SkewPoly t = term();
    if (sign < 0) t = scale_poly(P_.field, t, P_.field.neg(1));
    return t;
  }

  SkewPoly term() {
    SkewPoly acc = factor();
    while (lx_.accept_sym("*")) acc = skew_mul_poly(acc, factor(), alpha_, P_, b_);
    return acc;
  }

  SkewPoly factor() {
    SkewPoly base = primary();
    if (lx_.accept_sym("^")) {
      Token n = lx_.expect_number();
      SkewPoly acc = constant(1);
      for (long long i = 0; i < n.value; ++i) acc = skew_mul_poly(acc, base, alpha_, P_, b_);
      return acc;
    }
    return base;
  }

  SkewPoly constant(Coeff c) {
    SkewPoly f;
    if (c != 0) f.coeffs.push_back(term_elem(Word{}, c));
    return f;
  }

  SkewPoly primary() {
    const Token& t = lx_.peek();
    if (t.kind == Token::Kind::sym && t.text == "(") {
      lx_.next();
      SkewPoly inner = expr();
      lx_.expect_sym(")");
      return inner;
    }
    if (t.kind == Token::Kind::number) {
      lx_.next();
      return constant(P_.field.reduce(t.value));
    }
    if (t.kind == Token::Kind::ident) {
      lx_.next();
      if (t.text == "x") {
        SkewPoly f;
        f.coeffs.assign(2, RingElem{});
        f.coeffs[1] = one_elem();
        return f;
      }
      int fam = P_.family_id(t.text);
      if (fam < 0)
        fail(ErrorKind::unknown_family, "parse error at line " + std::to_string(t.line) +
                                            ", col " + std::to_string(t.col) +
                                            ": unknown family '" + t.text + "'");
      GeneratorId g;
      g.family = fam;
      if (lx_.accept_sym("[")) {
        while (true) {
          Token n = lx_.expect_number();
          g.indices.push_back(static_cast<std::int32_t>(n.value));
          if (lx_.accept_sym("]")) break;
          lx_.expect_sym(",");
        }
      }
      check_generator(g, P_);
      Word w;
      w.letters.push_back(std::move(g));
      check_word_in_bounds(w, P_, b_);
      SkewPoly f;
      f.coeffs.push_back(normal_form(term_elem(w), P_, b_));
      f.trim();
      return f;
    }
    lx_.error("expected number, generator, 'x' or '('");
  }

  Lexer& lx_;
  const Presentation& P_;
  const Bounds& b_;
  const Endomorphism& alpha_;
};

}  // namespace

SkewPoly parse_poly(std::string_view text, const Presentation& P, const Bounds& b,
                    const Endomorphism& alpha) {
  Lexer lx(text);
  PolyParser parser(lx, P, b, alpha);
  SkewPoly f = parser.expr();
  if (!lx.at_end()) lx.error("unexpected trailing input");
  return f;
}

RingElem parse_elem(std::string_view text, const Presentation& P, const Bounds& b) {
  Endomorphism id = Endomorphism::make_identity();
  SkewPoly f = parse_poly(text, P, b, id);
  if (f.degree() > 0)
    fail(ErrorKind::parse, "expected a ring element but the expression involves x");
  return f.is_zero() ? RingElem{} : f.coeffs[0];
}

}  // namespace ncann
