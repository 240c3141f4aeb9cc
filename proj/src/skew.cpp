#include "ncann/skew.hpp"

#include <algorithm>

#include "ncann/io.hpp"

namespace ncann {

SkewPoly poly_from_coeffs(std::vector<RingElem> coeffs) {
  SkewPoly f;
  f.coeffs = std::move(coeffs);
  f.trim();
  return f;
}

TruncSeries truncate(const SkewPoly& f, int order) {
  TruncSeries s = TruncSeries::zero(order);
  for (int i = 0; i <= order && i < static_cast<int>(f.coeffs.size()); ++i)
    s.coeffs[static_cast<std::size_t>(i)] = f.coeffs[static_cast<std::size_t>(i)];
  return s;
}

int Endomorphism::max_image_grade() const {
  if (is_identity()) return 1;
  int g = 0;
  for (const auto& [gen, img] : images) g = std::max(g, img.max_grade());
  return std::max(g, 1);
}

const RingElem& Endomorphism::image_of(const GeneratorId& g) const {
  auto it = images.find(g);
  if (it == images.end())
    fail(ErrorKind::index_bounds, "endomorphism image table does not cover a generator");
  return it->second;
}

const RingElem& Endomorphism::inverse_image_of(const GeneratorId& g) const {
  auto it = inverse_images.find(g);
  if (it == inverse_images.end())
    fail(ErrorKind::index_bounds,
         "inverse image table does not cover a generator");
  return it->second;
}

namespace {

/// Multiplicative extension of a tabulated generator map to one element.
RingElem apply_once(const std::map<GeneratorId, RingElem>& table, const RingElem& e,
                    const Presentation& P, NfCache& cache) {
  RingElem out;
  // Degree budget large enough for any in-table product; reduction itself
  // never raises grades.
  Bounds wide{1 << 20, 1 << 20};
  for (const auto& [w, c] : e.terms) {
    RingElem prod = one_elem();
    for (const GeneratorId& g : w.letters) {
      auto it = table.find(g);
      if (it == table.end())
        fail(ErrorKind::index_bounds,
             "endomorphism image table does not cover generator in word");
      prod = multiply_cached(prod, it->second, P, wide, cache);
      if (prod.is_zero()) break;
    }
    for (const auto& [pw, pc] : prod.terms) accumulate(out, P.field, pw, P.field.mul(pc, c));
  }
  return out;
}

}  // namespace

RingElem apply_endomorphism(const Endomorphism& alpha, const RingElem& e, int power,
                            const Presentation& P, const Bounds& b) {
  for (const auto& [w, c] : e.terms) check_word_in_bounds(w, P, b);
  if (alpha.is_identity()) return e;
  if (power < 0 && alpha.kind != Endomorphism::Kind::autom)
    fail(ErrorKind::no_inverse,
         "negative powers require a declared automorphism with an inverse table");
  const auto& table = power < 0 ? alpha.inverse_images : alpha.images;
  RingElem out = e;
  NfCache cache;
  for (int k = 0; k < std::abs(power); ++k) out = apply_once(table, out, P, cache);
  return out;
}

CheckReport validate_endomorphism(const Endomorphism& alpha, const Presentation& P,
                                  const Bounds& b) {
  CheckReport rep;
  rep.claim = "endomorphism_respects_relations";
  rep.detail["bounds"] = {{"max_index", b.max_index}, {"max_degree", b.max_degree}};
  if (alpha.is_identity()) {
    rep.verdict = CheckReport::Verdict::pass;
    return rep;
  }
  NfCache cache;
  Bounds wide{1 << 20, 1 << 20};
  auto apply_raw = [&](const RingElem& e) {
    return apply_once(alpha.images, e, P, cache);
  };
  int checked = 0;
  for (const RuleInstance& inst : rule_instances(P, b)) {
    RingElem lhs_elem;
    accumulate(lhs_elem, P.field, inst.lhs, 1);
    RingElem lhs_img = normal_form_cached(apply_raw(lhs_elem), P, wide, cache);
    RingElem rhs_img = normal_form_cached(apply_raw(inst.rhs_raw), P, wide, cache);
    ++checked;
    if (!(lhs_img == rhs_img)) {
      rep.verdict = CheckReport::Verdict::fail;
      rep.detail["violated_rule"] = P.rules[static_cast<std::size_t>(inst.rule_index)].text;
      rep.detail["lhs_instance"] = word_str(P, inst.lhs);
      rep.detail["lhs_image"] = elem_str(P, lhs_img);
      rep.detail["rhs_image"] = elem_str(P, rhs_img);
      return rep;
    }
  }
  if (alpha.kind == Endomorphism::Kind::autom) {
    for (const auto& [g, inv] : alpha.inverse_images) {
      RingElem back = normal_form_cached(apply_once(alpha.images, inv, P, cache), P, wide, cache);
      RingElem expect = term_elem(Word{{g}});
      ++checked;
      if (!(back == expect)) {
        rep.verdict = CheckReport::Verdict::fail;
        rep.detail["inverse_failure"] = word_str(P, Word{{g}});
        return rep;
      }
    }
  }
  rep.detail["instances_checked"] = checked;
  rep.verdict = CheckReport::Verdict::pass;
  return rep;
}

Endomorphism Endomorphism::from_images(const Presentation& P,
                                       std::map<GeneratorId, RingElem> images, Kind kind,
                                       std::map<GeneratorId, RingElem> inverse,
                                       const Bounds& validate_bounds) {
  if (kind == Kind::identity) return make_identity();
  Endomorphism a;
  a.kind = kind;
  a.images = std::move(images);
  a.inverse_images = std::move(inverse);
  CheckReport rep = validate_endomorphism(a, P, validate_bounds);
  if (!rep.ok())
    fail(ErrorKind::endomorphism_invalid,
         "generator map violates a relation: " + rep.detail.dump());
  return a;
}

Endomorphism shift_endomorphism(const Presentation& P, int table_max_index) {
  std::map<GeneratorId, RingElem> images;
  for (const GeneratorId& g : generators_in_bounds(P, Bounds{table_max_index, 1})) {
    const FamilyDecl& fam = P.family(g.family);
    if (fam.arity != 1 || fam.ranges[0].fixed)
      fail(ErrorKind::unsupported_ring,
           "shift endomorphism needs single open-index families");
    GeneratorId img = g;
    img.indices[0] += 1;
    images[g] = term_elem(Word{{img}});
  }
  return Endomorphism::from_images(P, std::move(images), Endomorphism::Kind::endo, {},
                                   Bounds{table_max_index, 4});
}

SkewPoly skew_mul_poly(const SkewPoly& f, const SkewPoly& g, const Endomorphism& alpha,
                       const Presentation& P, const Bounds& b) {
  SkewPoly out;
  if (f.is_zero() || g.is_zero()) return out;
  out.coeffs.assign(static_cast<std::size_t>(f.degree() + g.degree()) + 1, RingElem{});
  NfCache cache;
  for (int i = 0; i <= f.degree(); ++i) {
    const RingElem& fi = f.coeffs[static_cast<std::size_t>(i)];
    if (fi.is_zero()) continue;
    for (int j = 0; j <= g.degree(); ++j) {
      const RingElem& gj = g.coeffs[static_cast<std::size_t>(j)];
      if (gj.is_zero()) continue;
      RingElem img = apply_endomorphism(alpha, gj, i, P, b);
      RingElem prod = multiply_cached(fi, img, P, b, cache);
      out.coeffs[static_cast<std::size_t>(i + j)] =
          add(P.field, out.coeffs[static_cast<std::size_t>(i + j)], prod);
    }
  }
  out.trim();
  return out;
}

TruncSeries skew_mul_series(const TruncSeries& f, const TruncSeries& g,
                            const Endomorphism& alpha, const Presentation& P,
                            const Bounds& b) {
  if (f.order != g.order)
    fail(ErrorKind::order_mismatch, "series orders differ: " + std::to_string(f.order) +
                                        " vs " + std::to_string(g.order));
  TruncSeries out = TruncSeries::zero(f.order);
  NfCache cache;
  for (int i = 0; i <= f.order; ++i) {
    const RingElem& fi = f.coeffs[static_cast<std::size_t>(i)];
    if (fi.is_zero()) continue;
    for (int j = 0; i + j <= f.order; ++j) {
      const RingElem& gj = g.coeffs[static_cast<std::size_t>(j)];
      if (gj.is_zero()) continue;
      RingElem img = apply_endomorphism(alpha, gj, i, P, b);
      RingElem prod = multiply_cached(fi, img, P, b, cache);
      out.coeffs[static_cast<std::size_t>(i + j)] =
          add(P.field, out.coeffs[static_cast<std::size_t>(i + j)], prod);
    }
  }
  return out;
}

SkewPoly add_poly(const PrimeField& F, const SkewPoly& a, const SkewPoly& b) {
  SkewPoly out;
  out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
  for (std::size_t i = 0; i < out.coeffs.size(); ++i)
    out.coeffs[i] = add(F, a.at(i), b.at(i));
  out.trim();
  return out;
}

SkewPoly scale_poly(const PrimeField& F, const SkewPoly& a, Coeff c) {
  SkewPoly out;
  for (const RingElem& e : a.coeffs) out.coeffs.push_back(scale(F, e, c));
  out.trim();
  return out;
}

TruncSeries add_series(const PrimeField& F, const TruncSeries& a, const TruncSeries& b) {
  if (a.order != b.order) fail(ErrorKind::order_mismatch, "series orders differ");
  TruncSeries out = TruncSeries::zero(a.order);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i)
    out.coeffs[i] = add(F, a.coeffs[i], b.coeffs[i]);
  return out;
}

namespace {

std::vector<RingElem> collect_coeffs(std::vector<RingElem> all) {
  all.push_back(RingElem{});  // every coefficient set contains 0
  std::sort(all.begin(), all.end(), elem_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

std::vector<RingElem> coefficient_set(std::span<const SkewPoly> V) {
  std::vector<RingElem> all;
  for (const SkewPoly& f : V)
    for (const RingElem& c : f.coeffs) all.push_back(c);
  return collect_coeffs(std::move(all));
}

std::vector<RingElem> coefficient_set(std::span<const TruncSeries> V) {
  std::vector<RingElem> all;
  for (const TruncSeries& f : V)
    for (const RingElem& c : f.coeffs) all.push_back(c);
  return collect_coeffs(std::move(all));
}

}  // namespace ncann
