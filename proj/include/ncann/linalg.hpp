#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ncann/field.hpp"

namespace ncann {

/// Sparse vector over GF(p): (axis, coefficient) entries sorted by axis,
/// coefficients nonzero.
struct SparseVec {
  std::vector<std::pair<std::int32_t, Coeff>> e;

  bool is_zero() const { return e.empty(); }
  std::int32_t pivot() const { return e.empty() ? -1 : e.front().first; }
  Coeff at(std::int32_t axis) const {
    for (const auto& [a, c] : e)
      if (a == axis) return c;
      else if (a > axis) break;
    return 0;
  }

  bool operator==(const SparseVec&) const = default;
};

/// out += c * v
void axpy(const PrimeField& F, SparseVec& out, Coeff c, const SparseVec& v);
SparseVec scale_vec(const PrimeField& F, const SparseVec& v, Coeff c);

/// Incremental reduced row echelon form with deterministic pivoting by
/// ascending axis. Rows are kept fully reduced and sorted by pivot.
class Rref {
 public:
  explicit Rref(const PrimeField& F) : F_(F) {}

  /// Reduces and inserts; returns true when the row enlarged the span.
  bool add_row(SparseVec row);

  /// Reduces in place against the current rows; true iff it reduced to zero.
  bool reduce(SparseVec& v) const;

  bool contains(SparseVec v) const { return reduce(v); }

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  std::vector<std::int32_t> pivots() const;

 private:
  PrimeField F_;
  std::vector<SparseVec> rows_;  // sorted by pivot
};

/// Canonical reduced basis of {v : M v = 0} where the constraint matrix M is
/// given by rows over `ncols` unknowns.
std::vector<SparseVec> solve_kernel(const PrimeField& F,
                                    const std::vector<SparseVec>& constraint_rows,
                                    std::int32_t ncols);

/// Canonical reduced basis of the span of the given vectors.
std::vector<SparseVec> reduced_span(const PrimeField& F, std::vector<SparseVec> vecs);

}  // namespace ncann
