#include "ncann/subspace.hpp"

#include "ncann/algebra.hpp"
#include "ncann/io.hpp"

namespace ncann {

namespace {

Slice make_slice(const Presentation& P, const Bounds& b, SliceKind kind, int x_bound) {
  Slice s;
  s.kind = kind;
  s.bounds = b;
  s.x_bound = x_bound;
  s.words = enumerate_basis(P, b);
  if (s.words.size() * static_cast<std::size_t>(x_bound + 1) > max_slice_dim())
    fail(ErrorKind::slice_limit, "slice dimension exceeds NCANN_MAX_SLICE");
  s.word_index.reserve(s.words.size());
  for (std::int32_t i = 0; i < s.word_count(); ++i) s.word_index.emplace(s.words[i], i);
  return s;
}

std::int32_t word_axis(const Slice& s, const Word& w, int xpow) {
  auto it = s.word_index.find(w);
  if (it == s.word_index.end())
    fail(ErrorKind::membership, "word outside the slice");
  if (xpow > s.x_bound)
    fail(ErrorKind::degree_overflow, "x-power outside the slice");
  return s.axis(xpow, it->second);
}

}  // namespace

Slice make_ring_slice(const Presentation& P, const Bounds& b) {
  return make_slice(P, b, SliceKind::ring, 0);
}

Slice make_poly_slice(const Presentation& P, const Bounds& b, int x_degree) {
  return make_slice(P, b, SliceKind::poly, x_degree);
}

Slice make_series_slice(const Presentation& P, const Bounds& b, int order) {
  return make_slice(P, b, SliceKind::series, order);
}

SparseVec to_vec(const Slice& s, const RingElem& e) {
  SparseVec v;
  for (const auto& [w, c] : e.terms) v.e.emplace_back(word_axis(s, w, 0), c);
  std::sort(v.e.begin(), v.e.end());
  return v;
}

SparseVec to_vec(const Slice& s, const SkewPoly& f) {
  SparseVec v;
  for (int k = 0; k < static_cast<int>(f.coeffs.size()); ++k)
    for (const auto& [w, c] : f.coeffs[static_cast<std::size_t>(k)].terms)
      v.e.emplace_back(word_axis(s, w, k), c);
  std::sort(v.e.begin(), v.e.end());
  return v;
}

SparseVec to_vec(const Slice& s, const TruncSeries& f) {
  SparseVec v;
  for (int k = 0; k <= f.order; ++k)
    for (const auto& [w, c] : f.coeffs[static_cast<std::size_t>(k)].terms)
      v.e.emplace_back(word_axis(s, w, k), c);
  std::sort(v.e.begin(), v.e.end());
  return v;
}

RingElem vec_to_elem(const Slice& s, const SparseVec& v) {
  RingElem e;
  for (const auto& [a, c] : v.e) {
    if (s.axis_xpow(a) != 0) fail(ErrorKind::internal, "vector has nonzero x-part");
    e.terms.emplace(s.words[static_cast<std::size_t>(s.axis_word(a))], c);
  }
  return e;
}

SkewPoly vec_to_poly(const Slice& s, const SparseVec& v) {
  SkewPoly f;
  f.coeffs.assign(static_cast<std::size_t>(s.x_bound) + 1, RingElem{});
  for (const auto& [a, c] : v.e)
    f.coeffs[static_cast<std::size_t>(s.axis_xpow(a))].terms.emplace(
        s.words[static_cast<std::size_t>(s.axis_word(a))], c);
  f.trim();
  return f;
}

TruncSeries vec_to_series(const Slice& s, const SparseVec& v) {
  TruncSeries f = TruncSeries::zero(s.x_bound);
  for (const auto& [a, c] : v.e)
    f.coeffs[static_cast<std::size_t>(s.axis_xpow(a))].terms.emplace(
        s.words[static_cast<std::size_t>(s.axis_word(a))], c);
  return f;
}

bool SubspaceBasis::contains(const SparseVec& v, const PrimeField& F) const {
  Rref r(F);
  for (const SparseVec& row : rows) r.add_row(row);
  SparseVec copy = v;
  return r.reduce(copy);
}

SubspaceBasis subspace_from_vectors(const Presentation& P, Slice slice,
                                    std::vector<SparseVec> vecs) {
  SubspaceBasis B;
  B.slice = std::move(slice);
  B.rows = reduced_span(P.field, std::move(vecs));
  return B;
}

SubspaceBasis intersect_with_axes(const SubspaceBasis& B, const Presentation& P,
                                  const std::function<bool(std::int32_t)>& keep) {
  // Combinations c of the basis rows whose coordinates vanish off `keep`:
  // kernel of the off-block coordinate map restricted to the row space.
  const auto r = static_cast<std::int32_t>(B.rows.size());
  std::unordered_map<std::int32_t, SparseVec> constraint;  // axis -> row over c
  for (std::int32_t i = 0; i < r; ++i)
    for (const auto& [axis, c] : B.rows[static_cast<std::size_t>(i)].e)
      if (!keep(axis)) constraint[axis].e.emplace_back(i, c);
  std::vector<SparseVec> crows;
  crows.reserve(constraint.size());
  for (auto& [axis, row] : constraint) crows.push_back(std::move(row));
  std::vector<SparseVec> combos = solve_kernel(P.field, crows, r);

  std::vector<SparseVec> vecs;
  for (const SparseVec& combo : combos) {
    SparseVec v;
    for (const auto& [i, c] : combo.e) axpy(P.field, v, c, B.rows[static_cast<std::size_t>(i)]);
    vecs.push_back(std::move(v));
  }
  SubspaceBasis out;
  out.slice = B.slice;
  out.rows = reduced_span(P.field, std::move(vecs));
  return out;
}

}  // namespace ncann
