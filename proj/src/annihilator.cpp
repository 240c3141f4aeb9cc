#include "ncann/annihilator.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ncann/algebra.hpp"
#include "ncann/io.hpp"

namespace ncann {

namespace {

const Bounds kWide{1 << 20, 1 << 20};

void validate_coeff(const RingElem& e, const Presentation& P, const Bounds& b) {
  for (const auto& [w, c] : e.terms) check_word_in_bounds(w, P, b);
}

struct ConstraintSink {
  // (set index, x-power, target word) -> constraint row over candidate axes.
  std::map<std::tuple<int, int, Word>, SparseVec> rows;

  void add(int xi, int xpow, const Word& w, std::int32_t col, Coeff c) {
    rows[{xi, xpow, w}].e.emplace_back(col, c);
  }

  // Entries arrive in assembly order, which is not column-sorted for every
  // query shape; normalize before handing the rows to the solver.
  std::vector<SparseVec> take() {
    std::vector<SparseVec> out;
    out.reserve(rows.size());
    for (auto& [k, v] : rows) {
      std::sort(v.e.begin(), v.e.end());
      out.push_back(std::move(v));
    }
    return out;
  }
};

}  // namespace

SubspaceBasis annihilator(const AnnQuery& q, const Presentation& P) {
  const Endomorphism identity = Endomorphism::make_identity();
  const Endomorphism& alpha = q.alpha ? *q.alpha : identity;

  Slice slice;
  ConstraintSink sink;
  NfCache cache;

  if (const auto* ring = std::get_if<std::vector<RingElem>>(&q.elems)) {
    slice = make_ring_slice(P, q.bounds);
    for (const RingElem& x : *ring) validate_coeff(x, P, q.bounds);
    for (std::int32_t wi = 0; wi < slice.word_count(); ++wi) {
      RingElem cand = term_elem(slice.words[static_cast<std::size_t>(wi)]);
      for (int xi = 0; xi < static_cast<int>(ring->size()); ++xi) {
        const RingElem& x = (*ring)[static_cast<std::size_t>(xi)];
        RingElem prod = q.side == Side::left ? multiply_cached(cand, x, P, kWide, cache)
                                             : multiply_cached(x, cand, P, kWide, cache);
        for (const auto& [tw, tc] : prod.terms) sink.add(xi, 0, tw, wi, tc);
      }
    }
  } else {
    const bool is_series = std::holds_alternative<std::vector<TruncSeries>>(q.elems);
    std::vector<std::vector<RingElem>> coeffs;  // per set element
    if (is_series) {
      const auto& v = std::get<std::vector<TruncSeries>>(q.elems);
      slice = make_series_slice(P, q.bounds, q.order);
      for (const TruncSeries& f : v) {
        if (f.order != q.order)
          fail(ErrorKind::order_mismatch, "series order differs from the query order");
        for (const RingElem& c : f.coeffs) validate_coeff(c, P, q.bounds);
        coeffs.push_back(f.coeffs);
      }
    } else {
      const auto& v = std::get<std::vector<SkewPoly>>(q.elems);
      slice = make_poly_slice(P, q.bounds, q.x_degree);
      for (const SkewPoly& f : v) {
        for (const RingElem& c : f.coeffs) validate_coeff(c, P, q.bounds);
        coeffs.push_back(f.coeffs);
      }
    }
    const int truncate_at = is_series ? q.order : -1;

    if (q.side == Side::left) {
      // (w x^k) * f = sum_j w * alpha^k(f_j) x^{k+j}
      for (int k = 0; k <= slice.x_bound; ++k) {
        for (int xi = 0; xi < static_cast<int>(coeffs.size()); ++xi) {
          for (int j = 0; j < static_cast<int>(coeffs[static_cast<std::size_t>(xi)].size());
               ++j) {
            if (truncate_at >= 0 && k + j > truncate_at) continue;
            const RingElem& fj = coeffs[static_cast<std::size_t>(xi)][static_cast<std::size_t>(j)];
            if (fj.is_zero()) continue;
            RingElem imgd = apply_endomorphism(alpha, fj, k, P, kWide);
            for (std::int32_t wi = 0; wi < slice.word_count(); ++wi) {
              RingElem prod = multiply_cached(
                  term_elem(slice.words[static_cast<std::size_t>(wi)]), imgd, P, kWide, cache);
              for (const auto& [tw, tc] : prod.terms)
                sink.add(xi, k + j, tw, slice.axis(k, wi), tc);
            }
          }
        }
      }
    } else {
      // f * (w x^k) = sum_i f_i * alpha^i(w) x^{i+k}
      for (std::int32_t wi = 0; wi < slice.word_count(); ++wi) {
        const Word& w = slice.words[static_cast<std::size_t>(wi)];
        std::vector<RingElem> alpha_w;  // alpha^i(w)
        for (int k = 0; k <= slice.x_bound; ++k) {
          for (int xi = 0; xi < static_cast<int>(coeffs.size()); ++xi) {
            const auto& fc = coeffs[static_cast<std::size_t>(xi)];
            for (int i = 0; i < static_cast<int>(fc.size()); ++i) {
              if (truncate_at >= 0 && i + k > truncate_at) continue;
              const RingElem& fi = fc[static_cast<std::size_t>(i)];
              if (fi.is_zero()) continue;
              while (static_cast<int>(alpha_w.size()) <= i) {
                int p = static_cast<int>(alpha_w.size());
                alpha_w.push_back(apply_endomorphism(alpha, term_elem(w), p, P, kWide));
              }
              RingElem prod =
                  multiply_cached(fi, alpha_w[static_cast<std::size_t>(i)], P, kWide, cache);
              for (const auto& [tw, tc] : prod.terms)
                sink.add(xi, i + k, tw, slice.axis(k, wi), tc);
            }
          }
        }
      }
    }
  }

  SubspaceBasis out;
  out.slice = std::move(slice);
  out.rows = solve_kernel(P.field, sink.take(), out.slice.dim());
  return out;
}

FaithfulResult is_faithful_upto(const std::vector<RingElem>& X, Side side,
                                const Presentation& P, const Bounds& b) {
  AnnQuery q;
  q.side = side;
  q.elems = X;
  q.bounds = b;
  FaithfulResult r;
  r.ann = annihilator(q, P);
  r.faithful = r.ann.is_zero();
  return r;
}

namespace {

int query_size(const AnnQuery& q) {
  return std::visit([](const auto& v) { return static_cast<int>(v.size()); }, q.elems);
}

AnnQuery subset_query(const AnnQuery& q, const std::vector<std::size_t>& idx) {
  AnnQuery out = q;
  std::visit(
      [&](const auto& v) {
        std::decay_t<decltype(v)> sel;
        for (std::size_t i : idx) sel.push_back(v[i]);
        out.elems = std::move(sel);
      },
      q.elems);
  return out;
}

/// Canonical order on query elements, for deterministic greedy tie-breaks.
bool query_elem_less(const AnnQuery& q, std::size_t a, std::size_t b) {
  return std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v[a])>;
        const T& x = v[a];
        const T& y = v[b];
        if constexpr (std::is_same_v<T, RingElem>) {
          return elem_less(x, y);
        } else {
          std::size_t n = std::max(x.coeffs.size(), y.coeffs.size());
          static const RingElem zero{};
          for (std::size_t i = 0; i < n; ++i) {
            const RingElem& xc = i < x.coeffs.size() ? x.coeffs[i] : zero;
            const RingElem& yc = i < y.coeffs.size() ? y.coeffs[i] : zero;
            if (int c = compare(xc, yc); c != 0) return c < 0;
          }
          return false;
        }
      },
      q.elems);
}

}  // namespace

ZipSearchResult zip_witness_search(const AnnQuery& q, const Presentation& P, int budget) {
  ZipSearchResult result;
  result.ann_full = annihilator(q, P);
  if (!result.ann_full.is_zero()) return result;  // no finite subset can work

  const int n = query_size(q);
  std::vector<std::size_t> remaining(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
  std::sort(remaining.begin(), remaining.end(),
            [&](std::size_t a, std::size_t b) { return query_elem_less(q, a, b); });

  std::vector<std::size_t> chosen;
  int current_dim = result.ann_full.slice.dim();
  while (static_cast<int>(chosen.size()) < budget) {
    int best_dim = current_dim;
    std::size_t best_pos = remaining.size();
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      std::vector<std::size_t> trial = chosen;
      trial.push_back(remaining[pos]);
      SubspaceBasis ann = annihilator(subset_query(q, trial), P);
      if (ann.dim() < best_dim) {
        best_dim = ann.dim();
        best_pos = pos;
        if (best_dim == 0) break;
      }
    }
    if (best_pos == remaining.size()) break;  // no candidate cuts the annihilator
    chosen.push_back(remaining[best_pos]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
    current_dim = best_dim;
    if (current_dim == 0) {
      std::sort(chosen.begin(), chosen.end());
      result.chosen = chosen;
      return result;
    }
  }
  return result;
}

std::optional<std::pair<int, int>> armendariz_check(const SkewPoly& f, const SkewPoly& g,
                                                    const Endomorphism& alpha,
                                                    const Presentation& P, const Bounds& b) {
  SkewPoly prod = skew_mul_poly(f, g, alpha, P, b);
  if (!prod.is_zero())
    fail(ErrorKind::precondition, "f*g != 0; the coefficient condition is not applicable");
  NfCache cache;
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coeffs[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j <= g.degree(); ++j) {
      RingElem img = apply_endomorphism(alpha, g.coeffs[static_cast<std::size_t>(j)], i, P, b);
      RingElem prod_ij =
          multiply_cached(f.coeffs[static_cast<std::size_t>(i)], img, P, kWide, cache);
      if (!prod_ij.is_zero()) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> strong_armendariz_check(const TruncSeries& f,
                                                           const TruncSeries& g,
                                                           const Endomorphism& alpha,
                                                           const Presentation& P,
                                                           const Bounds& b) {
  TruncSeries prod = skew_mul_series(f, g, alpha, P, b);
  if (!prod.is_zero())
    fail(ErrorKind::precondition,
         "f*g != 0 at this truncation order; the coefficient condition is not applicable");
  NfCache cache;
  for (int j = 0; j <= g.order; ++j) {
    if (g.coeffs[static_cast<std::size_t>(j)].is_zero()) continue;
    for (int i = 0; i + j <= f.order; ++i) {
      if (f.coeffs[static_cast<std::size_t>(i)].is_zero()) continue;
      RingElem img = apply_endomorphism(alpha, g.coeffs[static_cast<std::size_t>(j)], i, P, b);
      RingElem prod_ij =
          multiply_cached(f.coeffs[static_cast<std::size_t>(i)], img, P, kWide, cache);
      if (!prod_ij.is_zero()) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

RingElem random_elem(const std::vector<Word>& words, const PrimeField& F,
                     std::mt19937_64& rng, int max_terms) {
  RingElem e;
  if (words.empty()) return e;
  int terms = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
  for (int t = 0; t < terms; ++t) {
    const Word& w = words[static_cast<std::size_t>(rng() % words.size())];
    Coeff c = static_cast<Coeff>(1 + rng() % static_cast<std::uint64_t>(F.p() - 1));
    accumulate(e, F, w, c);
  }
  return e;
}

CheckReport alpha_compatibility_check(const Endomorphism& alpha, const Presentation& P,
                                      const Bounds& b, const CompatOptions& opt) {
  CheckReport rep;
  rep.claim = "alpha_compatibility";
  rep.detail["bounds"] = {{"max_index", b.max_index}, {"max_degree", b.max_degree}};
  rep.detail["seed"] = opt.seed;

  std::vector<Word> words = enumerate_basis(P, b);
  NfCache cache;
  auto compatible_pair = [&](const RingElem& a, const RingElem& c) {
    bool plain = multiply_cached(a, c, P, kWide, cache).is_zero();
    RingElem img = apply_endomorphism(alpha, c, 1, P, kWide);
    bool twisted = multiply_cached(a, img, P, kWide, cache).is_zero();
    return plain == twisted;
  };

  long long checked = 0;
  for (const Word& w1 : words)
    for (const Word& w2 : words) {
      ++checked;
      if (!compatible_pair(term_elem(w1), term_elem(w2))) {
        rep.verdict = CheckReport::Verdict::fail;
        rep.detail["witness"] = {word_str(P, w1), word_str(P, w2)};
        return rep;
      }
    }
  std::mt19937_64 rng(opt.seed);
  for (int s = 0; s < opt.sample_count; ++s) {
    RingElem a = random_elem(words, P.field, rng, 3);
    RingElem c = random_elem(words, P.field, rng, 3);
    ++checked;
    if (!compatible_pair(a, c)) {
      rep.verdict = CheckReport::Verdict::fail;
      rep.detail["witness"] = {elem_str(P, a), elem_str(P, c)};
      return rep;
    }
  }
  rep.detail["pairs_checked"] = checked;
  rep.verdict = CheckReport::Verdict::evidence;
  return rep;
}

SubspaceBasis psi_restrict(const SubspaceBasis& B, const Presentation& P, const Bounds& b) {
  SubspaceBasis constant_part = intersect_with_axes(
      B, P, [&](std::int32_t axis) { return B.slice.axis_xpow(axis) == 0; });
  Slice ring = make_ring_slice(P, b);
  std::vector<SparseVec> vecs;
  vecs.reserve(constant_part.rows.size());
  for (const SparseVec& row : constant_part.rows)
    vecs.push_back(to_vec(ring, vec_to_elem(B.slice, row)));
  return subspace_from_vectors(P, std::move(ring), std::move(vecs));
}

SubspaceBasis phi_extend(const SubspaceBasis& L, const Presentation& P, const Bounds& b,
                         int x_degree, const Endomorphism& alpha) {
  Slice poly_slice = make_poly_slice(P, b, x_degree);
  auto in_slice = [&](const RingElem& e) {
    for (const auto& [w, c] : e.terms)
      if (!poly_slice.word_index.contains(w)) return false;
    return true;
  };
  NfCache cache;
  std::vector<SparseVec> vecs;
  for (const SparseVec& row : L.rows) {
    RingElem v = vec_to_elem(L.slice, row);
    for (int k = 0; k <= x_degree; ++k) {
      RingElem img = apply_endomorphism(alpha, v, k, P, kWide);
      if (!in_slice(img)) continue;
      for (const Word& w : poly_slice.words) {
        if (w.grade() + img.max_grade() > b.max_degree) continue;
        RingElem prod = multiply_cached(term_elem(w), img, P, kWide, cache);
        if (prod.is_zero() || !in_slice(prod)) continue;
        SparseVec vec;
        for (const auto& [pw, pc] : prod.terms)
          vec.e.emplace_back(poly_slice.axis(k, poly_slice.word_index.at(pw)), pc);
        std::sort(vec.e.begin(), vec.e.end());
        vecs.push_back(std::move(vec));
      }
    }
  }
  return subspace_from_vectors(P, std::move(poly_slice), std::move(vecs));
}

}  // namespace ncann
