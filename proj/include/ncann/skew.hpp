#pragma once

#include <map>
#include <span>
#include <vector>

#include "ncann/algebra.hpp"
#include "ncann/elem.hpp"
#include "ncann/presentation.hpp"
#include "ncann/report.hpp"

namespace ncann {

/// Element of R[x;a]: coeffs[i] is the coefficient of x^i.
struct SkewPoly {
  std::vector<RingElem> coeffs;

  void trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const RingElem& at(std::size_t i) const {
    static const RingElem zero{};
    return i < coeffs.size() ? coeffs[i] : zero;
  }

  bool operator==(const SkewPoly&) const = default;
};

/// Truncation of R[[x;a]] modulo x^{order+1}: exactly order+1 coefficients.
struct TruncSeries {
  int order = 0;
  std::vector<RingElem> coeffs;  // size order+1

  static TruncSeries zero(int order) {
    TruncSeries s;
    s.order = order;
    s.coeffs.assign(static_cast<std::size_t>(order) + 1, RingElem{});
    return s;
  }
  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }

  bool operator==(const TruncSeries&) const = default;
};

SkewPoly poly_from_coeffs(std::vector<RingElem> coeffs);
TruncSeries truncate(const SkewPoly& f, int order);

/// Ring endomorphism given by generator images; multiplicatively extended.
/// Images are tabulated up to a declared capacity, and the map is validated
/// against every rule instance before use (the factories run the check).
class Endomorphism {
 public:
  enum class Kind { identity, endo, autom };

  Kind kind = Kind::identity;
  std::map<GeneratorId, RingElem> images;
  std::map<GeneratorId, RingElem> inverse_images;  // automorphisms only

  static Endomorphism make_identity() { return Endomorphism{}; }

  /// Validates and returns; throws endomorphism_invalid with the violating
  /// rule instance otherwise.
  static Endomorphism from_images(const Presentation& P,
                                  std::map<GeneratorId, RingElem> images, Kind kind,
                                  std::map<GeneratorId, RingElem> inverse,
                                  const Bounds& validate_bounds);

  bool is_identity() const { return kind == Kind::identity; }

  /// Largest grade among the tabulated images (1 for the identity).
  int max_image_grade() const;

  const RingElem& image_of(const GeneratorId& g) const;
  const RingElem& inverse_image_of(const GeneratorId& g) const;
};

/// Index-shift map g[i] -> g[i+1] on every single-index family, tabulated
/// for indices up to table_max_index.
Endomorphism shift_endomorphism(const Presentation& P, int table_max_index);

/// Checks that generator images respect every rule instance within bounds
/// (and that the declared inverse composes to the identity).
CheckReport validate_endomorphism(const Endomorphism& alpha, const Presentation& P,
                                  const Bounds& b);

/// alpha^power applied to e; negative powers require an automorphism.
RingElem apply_endomorphism(const Endomorphism& alpha, const RingElem& e, int power,
                            const Presentation& P, const Bounds& b);

SkewPoly skew_mul_poly(const SkewPoly& f, const SkewPoly& g, const Endomorphism& alpha,
                       const Presentation& P, const Bounds& b);

TruncSeries skew_mul_series(const TruncSeries& f, const TruncSeries& g,
                            const Endomorphism& alpha, const Presentation& P,
                            const Bounds& b);

TruncSeries add_series(const PrimeField& F, const TruncSeries& a, const TruncSeries& b);
SkewPoly add_poly(const PrimeField& F, const SkewPoly& a, const SkewPoly& b);
SkewPoly scale_poly(const PrimeField& F, const SkewPoly& a, Coeff c);

/// Union of all coefficients of the inputs plus the zero element, sorted,
/// duplicates collapsed. The empty input yields {0}.
std::vector<RingElem> coefficient_set(std::span<const SkewPoly> V);
std::vector<RingElem> coefficient_set(std::span<const TruncSeries> V);

}  // namespace ncann
