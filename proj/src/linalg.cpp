#include "ncann/linalg.hpp"

#include <algorithm>

namespace ncann {

void axpy(const PrimeField& F, SparseVec& out, Coeff c, const SparseVec& v) {
  if (c == 0 || v.is_zero()) return;
  SparseVec merged;
  merged.e.reserve(out.e.size() + v.e.size());
  std::size_t i = 0, j = 0;
  while (i < out.e.size() || j < v.e.size()) {
    if (j == v.e.size() || (i < out.e.size() && out.e[i].first < v.e[j].first)) {
      merged.e.push_back(out.e[i++]);
    } else if (i == out.e.size() || v.e[j].first < out.e[i].first) {
      Coeff nc = F.mul(c, v.e[j].second);
      if (nc != 0) merged.e.emplace_back(v.e[j].first, nc);
      ++j;
    } else {
      Coeff nc = F.add(out.e[i].second, F.mul(c, v.e[j].second));
      if (nc != 0) merged.e.emplace_back(out.e[i].first, nc);
      ++i, ++j;
    }
  }
  out = std::move(merged);
}

SparseVec scale_vec(const PrimeField& F, const SparseVec& v, Coeff c) {
  SparseVec out;
  if (c == 0) return out;
  out.e.reserve(v.e.size());
  for (const auto& [a, k] : v.e) out.e.emplace_back(a, F.mul(k, c));
  return out;
}

bool Rref::reduce(SparseVec& v) const {
  for (const SparseVec& row : rows_) {
    if (v.is_zero()) return true;
    if (row.pivot() > v.pivot() && v.at(row.pivot()) == 0) continue;
    Coeff c = v.at(row.pivot());
    if (c != 0) axpy(F_, v, F_.neg(c), row);
  }
  return v.is_zero();
}

bool Rref::add_row(SparseVec row) {
  if (reduce(row)) return false;
  // Normalize the leading coefficient and clear its column everywhere.
  Coeff lead = row.e.front().second;
  if (lead != 1) row = scale_vec(F_, row, F_.inv(lead));
  for (SparseVec& r : rows_) {
    Coeff c = r.at(row.pivot());
    if (c != 0) axpy(F_, r, F_.neg(c), row);
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), row.pivot(),
                             [](const SparseVec& r, std::int32_t p) { return r.pivot() < p; });
  rows_.insert(it, std::move(row));
  return true;
}

std::vector<std::int32_t> Rref::pivots() const {
  std::vector<std::int32_t> out;
  out.reserve(rows_.size());
  for (const SparseVec& r : rows_) out.push_back(r.pivot());
  return out;
}

std::vector<SparseVec> solve_kernel(const PrimeField& F,
                                    const std::vector<SparseVec>& constraint_rows,
                                    std::int32_t ncols) {
  Rref rref(F);
  for (const SparseVec& r : constraint_rows) rref.add_row(r);
  std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
  for (std::int32_t p : rref.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<SparseVec> kernel;
  for (std::int32_t free = 0; free < ncols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    SparseVec v;
    // x_free = 1 and, for each echelon row with pivot p, x_p = -row[free].
    std::vector<std::pair<std::int32_t, Coeff>> entries{{free, Coeff{1}}};
    for (const SparseVec& row : rref.rows()) {
      Coeff c = row.at(free);
      if (c != 0) entries.emplace_back(row.pivot(), F.neg(c));
    }
    std::sort(entries.begin(), entries.end());
    v.e = std::move(entries);
    kernel.push_back(std::move(v));
  }
  return reduced_span(F, std::move(kernel));
}

std::vector<SparseVec> reduced_span(const PrimeField& F, std::vector<SparseVec> vecs) {
  Rref rref(F);
  for (SparseVec& v : vecs) rref.add_row(std::move(v));
  return rref.rows();
}

}  // namespace ncann
