#include "ncann/dsl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ncann/algebra.hpp"
#include "ncann/io.hpp"
#include "lexer.hpp"

namespace ncann {

namespace {

using detail::Lexer;
using detail::Token;

struct VarScope {
  std::vector<std::string>* names;
  int lookup(const std::string& n) const {
    for (std::size_t i = 0; i < names->size(); ++i)
      if ((*names)[i] == n) return static_cast<int>(i);
    return -1;
  }
  int add(const std::string& n) {
    names->push_back(n);
    return static_cast<int>(names->size()) - 1;
  }
};

AffineExpr parse_affine(Lexer& lx, const VarScope& scope, bool allow_new_vars = false,
                        VarScope* mutable_scope = nullptr) {
  AffineExpr e;
  int sign = 1;
  if (lx.accept_sym("-")) sign = -1;
  while (true) {
    const Token& t = lx.peek();
    if (t.kind == Token::Kind::number) {
      lx.next();
      e.c0 += sign * static_cast<int>(t.value);
    } else if (t.kind == Token::Kind::ident) {
      lx.next();
      int v = scope.lookup(t.text);
      if (v < 0) {
        if (allow_new_vars && mutable_scope)
          v = mutable_scope->add(t.text);
        else
          fail(ErrorKind::parse, "parse error at line " + std::to_string(t.line) +
                                     ", col " + std::to_string(t.col) +
                                     ": unknown index variable '" + t.text + "'");
      }
      e.terms.emplace_back(sign, v);
    } else {
      lx.error("expected number or index variable");
    }
    if (lx.accept_sym("+"))
      sign = 1;
    else if (lx.accept_sym("-"))
      sign = -1;
    else
      break;
  }
  return e;
}

int expect_family(const Presentation& P, const Token& t) {
  int f = P.family_id(t.text);
  if (f < 0)
    fail(ErrorKind::unknown_family, "parse error at line " + std::to_string(t.line) +
                                        ", col " + std::to_string(t.col) +
                                        ": unknown family '" + t.text + "'");
  return f;
}

std::vector<RhsLetter> parse_rhs_word(Lexer& lx, const Presentation& P,
                                      const VarScope& scope) {
  std::vector<RhsLetter> word;
  while (true) {
    Token name = lx.expect_ident();
    RhsLetter l;
    l.family = expect_family(P, name);
    if (lx.accept_sym("[")) {
      while (true) {
        l.indices.push_back(parse_affine(lx, scope));
        if (lx.accept_sym("]")) break;
        lx.expect_sym(",");
      }
    }
    if (static_cast<int>(l.indices.size()) != P.family(l.family).arity)
      fail(ErrorKind::parse, "parse error at line " + std::to_string(name.line) +
                                 ": family '" + name.text + "' expects " +
                                 std::to_string(P.family(l.family).arity) + " indices");
    word.push_back(std::move(l));
    if (!lx.accept_sym("*")) break;
  }
  return word;
}

CmpOp parse_cmp_op(Lexer& lx) {
  if (lx.accept_sym(">=")) return CmpOp::ge;
  if (lx.accept_sym("<=")) return CmpOp::le;
  if (lx.accept_sym("==")) return CmpOp::eq;
  if (lx.accept_sym("!=")) return CmpOp::ne;
  if (lx.accept_sym(">")) return CmpOp::gt;
  if (lx.accept_sym("<")) return CmpOp::lt;
  lx.error("expected comparison operator");
}

void parse_rule(Lexer& lx, Presentation& P) {
  RewriteRule rule;
  VarScope scope{&rule.var_names};
  std::ostringstream text;

  // Left-hand side: a word pattern whose index slots are fresh variables or
  // integer constants.
  bool first_letter = true;
  while (true) {
    Token name = lx.expect_ident();
    LetterPattern pat;
    pat.family = expect_family(P, name);
    if (!first_letter) text << '*';
    first_letter = false;
    text << name.text;
    if (lx.accept_sym("[")) {
      text << '[';
      bool first = true;
      while (true) {
        if (!first) text << ',';
        first = false;
        const Token& t = lx.peek();
        if (t.kind == Token::Kind::number) {
          lx.next();
          pat.args.push_back(PatternArg{false, static_cast<int>(t.value)});
          text << t.value;
        } else if (t.kind == Token::Kind::ident) {
          lx.next();
          int v = scope.lookup(t.text);
          if (v < 0) v = scope.add(t.text);
          pat.args.push_back(PatternArg{true, v});
          text << t.text;
        } else {
          lx.error("expected index variable or constant");
        }
        if (lx.accept_sym("]")) break;
        lx.expect_sym(",");
      }
      text << ']';
    }
    if (static_cast<int>(pat.args.size()) != P.family(pat.family).arity)
      fail(ErrorKind::parse, "parse error at line " + std::to_string(name.line) +
                                 ": family '" + name.text + "' expects " +
                                 std::to_string(P.family(pat.family).arity) + " indices");
    rule.lhs.push_back(std::move(pat));
    if (!lx.accept_sym("*")) break;
  }
  lx.expect_sym("->");
  text << " -> ...";

  // Right-hand side: 0, or signed terms, each a coefficient-word product or
  // a sum(...) comprehension over a fresh index variable.
  if (lx.peek().kind == Token::Kind::number && lx.peek().value == 0 &&
      !(lx.peek(1).kind == Token::Kind::sym && lx.peek(1).text == "*")) {
    lx.next();
  } else {
    int sign = 1;
    if (lx.accept_sym("-")) sign = -1;
    while (true) {
      RhsTerm term;
      long long coeff = sign;
      if (lx.peek().kind == Token::Kind::number) {
        coeff = sign * lx.next().value;
        lx.expect_sym("*");
      }
      if (lx.peek().kind == Token::Kind::ident && lx.peek().text == "sum" &&
          lx.peek(1).kind == Token::Kind::sym && lx.peek(1).text == "(") {
        lx.next();
        lx.expect_sym("(");
        Token var = lx.expect_ident();
        if (scope.lookup(var.text) >= 0)
          fail(ErrorKind::parse, "parse error at line " + std::to_string(var.line) +
                                     ": sum variable '" + var.text + "' shadows a rule variable");
        lx.expect_sym(",");
        term.sum_lo = parse_affine(lx, scope);
        lx.expect_sym(",");
        term.sum_hi = parse_affine(lx, scope);
        lx.expect_sym(",");
        term.is_sum = true;
        term.sum_var = scope.add(var.text);
        if (lx.peek().kind == Token::Kind::number) {
          coeff *= lx.next().value;
          lx.expect_sym("*");
        }
        term.word = parse_rhs_word(lx, P, scope);
        lx.expect_sym(")");
        // The sum variable is local to its term; retire the name so later
        // terms and guards cannot reference a slot that has no binding.
        rule.var_names[static_cast<std::size_t>(term.sum_var)] =
            "#" + rule.var_names[static_cast<std::size_t>(term.sum_var)];
      } else {
        term.word = parse_rhs_word(lx, P, scope);
      }
      term.coeff = P.field.reduce(coeff);
      rule.rhs.push_back(std::move(term));
      if (lx.accept_sym("+"))
        sign = 1;
      else if (lx.accept_sym("-"))
        sign = -1;
      else
        break;
    }
  }

  if (lx.accept_ident("when")) {
    while (true) {
      GuardCmp g;
      // Guards may only mention left-hand-side variables.
      g.lhs = parse_affine(lx, scope);
      g.op = parse_cmp_op(lx);
      g.rhs = parse_affine(lx, scope);
      rule.guards.push_back(std::move(g));
      if (!lx.accept_ident("and") && !lx.accept_sym(",")) break;
    }
  }
  lx.expect_sym(";");

  // Homogeneity keeps the algebra graded, which is what makes bounded-degree
  // slices exact under multiplication.
  for (const RhsTerm& t : rule.rhs)
    if (t.word.size() != rule.lhs.size())
      fail(ErrorKind::inhomogeneous_rule,
           "inhomogeneous rule (lhs grade " + std::to_string(rule.lhs.size()) +
               ", rhs grade " + std::to_string(t.word.size()) + "): " + text.str());

  rule.num_vars = static_cast<int>(rule.var_names.size());
  rule.text = text.str();
  P.rules.push_back(std::move(rule));
  P.max_lhs_len = std::max<int>(P.max_lhs_len, static_cast<int>(P.rules.back().lhs.size()));
}

}  // namespace

Presentation parse_presentation(std::string_view textsrc) {
  Lexer lx(textsrc);
  if (!lx.accept_ident("field")) lx.error("presentation must start with 'field <p>;'");
  Token p = lx.expect_number();
  lx.expect_sym(";");
  Presentation P;
  P.field = PrimeField(static_cast<int>(p.value));

  while (!lx.at_end()) {
    if (lx.accept_ident("family")) {
      Token name = lx.expect_ident();
      if (name.text == "x" || name.text == "sum")
        fail(ErrorKind::parse,
             "parse error at line " + std::to_string(name.line) + ": family name '" +
                 name.text + "' is reserved");
      if (P.family_id(name.text) >= 0)
        fail(ErrorKind::parse, "parse error at line " + std::to_string(name.line) +
                                   ": family '" + name.text + "' redeclared");
      lx.expect_sym("(");
      Token ar = lx.expect_number();
      lx.expect_sym(")");
      if (ar.value < 0 || ar.value > 4)
        fail(ErrorKind::parse, "family arity must be between 0 and 4");
      FamilyDecl fam;
      fam.name = name.text;
      fam.arity = static_cast<int>(ar.value);
      fam.ranges.assign(static_cast<std::size_t>(fam.arity), IndexRange{});
      while (lx.accept_ident("index")) {
        Token pos = lx.expect_number();
        if (pos.value < 0 || pos.value >= fam.arity)
          fail(ErrorKind::parse, "index position out of range in family '" + fam.name + "'");
        if (!lx.accept_ident("in")) lx.error("expected 'in'");
        Token lo = lx.expect_number();
        lx.expect_sym("..");
        Token hi = lx.expect_number();
        fam.ranges[static_cast<std::size_t>(pos.value)] =
            IndexRange{true, static_cast<int>(lo.value), static_cast<int>(hi.value)};
      }
      lx.expect_sym(";");
      P.families.push_back(std::move(fam));
    } else if (lx.accept_ident("rule")) {
      parse_rule(lx, P);
    } else {
      lx.error("expected 'family' or 'rule'");
    }
  }
  return P;
}

Endomorphism parse_endomorphism(std::string_view text, const Presentation& P,
                                int table_max_index) {
  Lexer lx(text);
  if (!lx.accept_ident("kind")) lx.error("endomorphism must start with 'kind ...;'");
  Token k = lx.expect_ident();
  Endomorphism::Kind kind;
  if (k.text == "identity")
    kind = Endomorphism::Kind::identity;
  else if (k.text == "endomorphism")
    kind = Endomorphism::Kind::endo;
  else if (k.text == "automorphism")
    kind = Endomorphism::Kind::autom;
  else
    lx.error("kind must be identity, endomorphism or automorphism");
  lx.expect_sym(";");
  if (kind == Endomorphism::Kind::identity) return Endomorphism::make_identity();

  struct MapLine {
    bool inverse = false;
    LetterPattern pat;
    std::vector<RhsTerm> terms;
    std::vector<std::string> var_names;
  };
  std::vector<MapLine> lines;

  while (!lx.at_end()) {
    bool inverse;
    if (lx.accept_ident("gen"))
      inverse = false;
    else if (lx.accept_ident("inv"))
      inverse = true;
    else
      lx.error("expected 'gen' or 'inv'");
    MapLine line;
    line.inverse = inverse;
    VarScope scope{&line.var_names};
    Token name = lx.expect_ident();
    line.pat.family = expect_family(P, name);
    if (lx.accept_sym("[")) {
      while (true) {
        const Token& t = lx.peek();
        if (t.kind == Token::Kind::number) {
          lx.next();
          line.pat.args.push_back(PatternArg{false, static_cast<int>(t.value)});
        } else {
          Token v = lx.expect_ident();
          int id = scope.lookup(v.text);
          if (id < 0) id = scope.add(v.text);
          line.pat.args.push_back(PatternArg{true, id});
        }
        if (lx.accept_sym("]")) break;
        lx.expect_sym(",");
      }
    }
    if (static_cast<int>(line.pat.args.size()) != P.family(line.pat.family).arity)
      fail(ErrorKind::parse, "family '" + name.text + "' expects " +
                                 std::to_string(P.family(line.pat.family).arity) + " indices");
    lx.expect_sym("->");
    if (lx.peek().kind == Token::Kind::number && lx.peek().value == 0 &&
        !(lx.peek(1).kind == Token::Kind::sym && lx.peek(1).text == "*")) {
      lx.next();  // image 0
    } else {
      int sign = 1;
      if (lx.accept_sym("-")) sign = -1;
      while (true) {
        RhsTerm term;
        long long coeff = sign;
        if (lx.peek().kind == Token::Kind::number) {
          coeff = sign * lx.next().value;
          lx.expect_sym("*");
        }
        term.word = parse_rhs_word(lx, P, scope);
        term.coeff = P.field.reduce(coeff);
        line.terms.push_back(std::move(term));
        if (lx.accept_sym("+"))
          sign = 1;
        else if (lx.accept_sym("-"))
          sign = -1;
        else
          break;
      }
    }
    lx.expect_sym(";");
    lines.push_back(std::move(line));
  }

  // Tabulate images for every generator admitted by the table capacity;
  // the first matching line wins.
  Bounds table_bounds{table_max_index, 1};
  std::map<GeneratorId, RingElem> images, inverses;
  NfCache cache;
  for (const GeneratorId& g : generators_in_bounds(P, table_bounds)) {
    for (bool want_inverse : {false, true}) {
      if (want_inverse && kind != Endomorphism::Kind::autom) continue;
      bool found = false;
      for (const MapLine& line : lines) {
        if (line.inverse != want_inverse || line.pat.family != g.family) continue;
        std::vector<std::int32_t> binding(line.var_names.size(), -1);
        bool match = true;
        for (std::size_t a = 0; a < line.pat.args.size() && match; ++a) {
          const PatternArg& arg = line.pat.args[a];
          if (arg.is_var)
            binding[static_cast<std::size_t>(arg.value)] = g.indices[a];
          else if (arg.value != g.indices[a])
            match = false;
        }
        if (!match) continue;
        RingElem raw;
        for (const RhsTerm& t : line.terms) {
          Word w;
          for (const RhsLetter& l : t.word) {
            GeneratorId img;
            img.family = l.family;
            for (const AffineExpr& e : l.indices) {
              long long v = e.eval(binding);
              if (v < 0) fail(ErrorKind::bad_index, "negative index in endomorphism image");
              img.indices.push_back(static_cast<std::int32_t>(v));
            }
            check_generator(img, P);
            w.letters.push_back(std::move(img));
          }
          accumulate(raw, P.field, w, t.coeff);
        }
        RingElem nf;
        for (const auto& [w, c] : raw.terms) {
          const RingElem& r = reduce_word(w, P, cache);
          for (const auto& [nw, nc] : r.terms) accumulate(nf, P.field, nw, P.field.mul(nc, c));
        }
        (want_inverse ? inverses : images)[g] = std::move(nf);
        found = true;
        break;
      }
      if (!found)
        fail(ErrorKind::endomorphism_invalid,
             std::string(want_inverse ? "inverse " : "") + "image missing for generator '" +
                 word_str(P, Word{{g}}) + "'");
    }
  }
  return Endomorphism::from_images(P, std::move(images), kind, std::move(inverses),
                                   Bounds{table_max_index, 4});
}

}  // namespace ncann
