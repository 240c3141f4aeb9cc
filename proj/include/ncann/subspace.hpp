#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncann/linalg.hpp"
#include "ncann/presentation.hpp"
#include "ncann/skew.hpp"

namespace ncann {

enum class SliceKind { ring, poly, series };

/// Finite-dimensional coordinate space: the normal words within bounds,
/// optionally tensored with x-powers 0..x_bound (poly slice: x-degree bound;
/// series slice: truncation order). Axis numbering is x-major so the x^0
/// block comes first.
struct Slice {
  SliceKind kind = SliceKind::ring;
  Bounds bounds;
  int x_bound = 0;
  std::vector<Word> words;  // canonical ascending order
  std::unordered_map<Word, std::int32_t, WordHash> word_index;

  std::int32_t word_count() const { return static_cast<std::int32_t>(words.size()); }
  std::int32_t dim() const { return word_count() * (x_bound + 1); }
  std::int32_t axis(int xpow, std::int32_t wi) const { return xpow * word_count() + wi; }
  int axis_xpow(std::int32_t a) const { return a / word_count(); }
  std::int32_t axis_word(std::int32_t a) const { return a % word_count(); }

  bool same_space(const Slice& o) const {
    return kind == o.kind && bounds.max_index == o.bounds.max_index &&
           bounds.max_degree == o.bounds.max_degree && x_bound == o.x_bound;
  }
};

Slice make_ring_slice(const Presentation& P, const Bounds& b);
Slice make_poly_slice(const Presentation& P, const Bounds& b, int x_degree);
Slice make_series_slice(const Presentation& P, const Bounds& b, int order);

/// Coordinate conversions. `to_vec` throws membership errors when an element
/// uses a word outside the slice.
SparseVec to_vec(const Slice& s, const RingElem& e);
SparseVec to_vec(const Slice& s, const SkewPoly& f);
SparseVec to_vec(const Slice& s, const TruncSeries& f);
RingElem vec_to_elem(const Slice& s, const SparseVec& v);
SkewPoly vec_to_poly(const Slice& s, const SparseVec& v);
TruncSeries vec_to_series(const Slice& s, const SparseVec& v);

/// Reduced echelon basis of a subspace of a slice; pivot axes strictly
/// increase and membership testing is exact.
struct SubspaceBasis {
  Slice slice;
  std::vector<SparseVec> rows;

  int dim() const { return static_cast<int>(rows.size()); }
  bool is_zero() const { return rows.empty(); }

  bool contains(const SparseVec& v, const PrimeField& F) const;
  bool contains(const RingElem& e, const PrimeField& F) const {
    return contains(to_vec(slice, e), F);
  }

  bool same_subspace(const SubspaceBasis& o) const {
    return slice.same_space(o.slice) && rows == o.rows;
  }
};

SubspaceBasis subspace_from_vectors(const Presentation& P, Slice slice,
                                    std::vector<SparseVec> vecs);

/// Members of B whose coordinates vanish outside `keep`; result lives in the
/// same slice.
SubspaceBasis intersect_with_axes(const SubspaceBasis& B, const Presentation& P,
                                  const std::function<bool(std::int32_t)>& keep);

}  // namespace ncann
