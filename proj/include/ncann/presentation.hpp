#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncann/elem.hpp"
#include "ncann/errors.hpp"
#include "ncann/field.hpp"
#include "ncann/word.hpp"

namespace ncann {

/// Truncation parameters: generator indices up to maxIndex, word grades up
/// to maxDegree. Together they cut out a finite-dimensional slice.
struct Bounds {
  int max_index = 0;
  int max_degree = 0;
};

/// Affine integer expression c0 + sum(coeff_i * var_i) over rule variables.
struct AffineExpr {
  int c0 = 0;
  std::vector<std::pair<int, int>> terms;  // (coefficient, variable id)

  long long eval(std::span<const std::int32_t> binding) const {
    long long v = c0;
    for (auto [c, var] : terms) v += static_cast<long long>(c) * binding[var];
    return v;
  }

  static AffineExpr constant(int c) { return AffineExpr{c, {}}; }
  static AffineExpr variable(int var) { return AffineExpr{0, {{1, var}}}; }
};

/// One index slot of a left-hand-side letter pattern: a variable or a constant.
struct PatternArg {
  bool is_var = false;
  int value = 0;  // variable id or constant value
};

struct LetterPattern {
  int family = 0;
  std::vector<PatternArg> args;
};

struct RhsLetter {
  int family = 0;
  std::vector<AffineExpr> indices;
};

/// One additive term of a rule's right-hand side. When `is_sum` is set the
/// term expands to sum over sum_var in [sum_lo, sum_hi] of coeff * word.
struct RhsTerm {
  Coeff coeff = 1;
  std::vector<RhsLetter> word;
  bool is_sum = false;
  int sum_var = -1;
  AffineExpr sum_lo, sum_hi;
};

enum class CmpOp { lt, le, gt, ge, eq, ne };

struct GuardCmp {
  AffineExpr lhs;
  CmpOp op;
  AffineExpr rhs;

  bool holds(std::span<const std::int32_t> binding) const {
    long long a = lhs.eval(binding), b = rhs.eval(binding);
    switch (op) {
      case CmpOp::lt: return a < b;
      case CmpOp::le: return a <= b;
      case CmpOp::gt: return a > b;
      case CmpOp::ge: return a >= b;
      case CmpOp::eq: return a == b;
      case CmpOp::ne: return a != b;
    }
    return false;
  }
};

/// Oriented homogeneous rewrite rule: lhs pattern -> linear combination,
/// applicable when every guard comparison holds.
struct RewriteRule {
  std::vector<LetterPattern> lhs;
  std::vector<GuardCmp> guards;
  std::vector<RhsTerm> rhs;  // empty means 0
  int num_vars = 0;
  std::vector<std::string> var_names;
  std::string text;  // original source form, for diagnostics
};

/// Range of one index position. Fixed ranges (intrinsic labels such as the
/// 0/1 selector in a two-index family) are not additionally capped by
/// Bounds::max_index; open positions are.
struct IndexRange {
  bool fixed = false;
  int lo = 0;
  int hi = 0;  // meaningful when fixed
};

struct FamilyDecl {
  std::string name;
  int arity = 0;
  std::vector<IndexRange> ranges;
};

/// Per-ring classifier of normal words into direct-sum component classes.
struct ComponentScheme {
  std::vector<std::string> classes;              // class labels, index = class id
  std::function<int(const Word&)> classify;      // word -> class id
};

struct Presentation {
  std::string name = "custom";
  PrimeField field{2};
  std::vector<FamilyDecl> families;
  std::vector<RewriteRule> rules;

  /// Decidable predicate describing the ring's claimed normal-word basis,
  /// independent of the rewrite rules. Null when not supplied.
  std::function<bool(const Word&)> claimed_basis;

  std::optional<ComponentScheme> scheme;

  int max_lhs_len = 1;

  int family_id(std::string_view name) const {
    for (std::size_t i = 0; i < families.size(); ++i)
      if (families[i].name == name) return static_cast<int>(i);
    return -1;
  }

  const FamilyDecl& family(int id) const { return families[static_cast<std::size_t>(id)]; }
};

}  // namespace ncann
