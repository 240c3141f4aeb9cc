#pragma once

#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "ncann/report.hpp"
#include "ncann/subspace.hpp"

namespace ncann {

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

/// One-sided annihilator query over a bounded slice. Ring-element sets are
/// solved over the ring slice; polynomial and truncated-series sets over the
/// corresponding x-extended slices. `alpha` defaults to the identity.
struct AnnQuery {
  Side side = Side::left;
  std::variant<std::vector<RingElem>, std::vector<SkewPoly>, std::vector<TruncSeries>> elems;
  Bounds bounds;
  int x_degree = 0;  // candidate x-degree bound for polynomial queries
  int order = 0;     // truncation order for series queries
  const Endomorphism* alpha = nullptr;
};

/// Echelon basis of {r in slice : r*x = 0 for all x} (left; mirrored for
/// right). The rings are graded and products exact, so over ring and
/// polynomial slices the result is the true annihilator intersected with the
/// slice; series results are evidence at the truncation order.
SubspaceBasis annihilator(const AnnQuery& q, const Presentation& P);

struct FaithfulResult {
  bool faithful = false;  // annihilator meets the slice only in 0
  SubspaceBasis ann;
};

FaithfulResult is_faithful_upto(const std::vector<RingElem>& X, Side side,
                                const Presentation& P, const Bounds& b);

/// Greedy search for a finite subset with zero slice annihilator. No subset
/// can exist when the full set's annihilator is nonzero; that obstruction is
/// returned instead of a witness.
struct ZipSearchResult {
  std::optional<std::vector<std::size_t>> chosen;  // indices into the query set
  SubspaceBasis ann_full;
};

ZipSearchResult zip_witness_search(const AnnQuery& q, const Presentation& P, int budget);

/// Requires f*g = 0 exactly; returns the lexicographically first (i,j) with
/// f_i * alpha^i(g_j) != 0, or nothing.
std::optional<std::pair<int, int>> armendariz_check(const SkewPoly& f, const SkewPoly& g,
                                                    const Endomorphism& alpha,
                                                    const Presentation& P, const Bounds& b);

/// Truncated-series variant; requires f*g = 0 at the common order. Pairs are
/// scanned by ascending g-coefficient index first, so witnesses with low j
/// are preferred. Evidence-level by construction.
std::optional<std::pair<int, int>> strong_armendariz_check(const TruncSeries& f,
                                                           const TruncSeries& g,
                                                           const Endomorphism& alpha,
                                                           const Presentation& P,
                                                           const Bounds& b);

struct CompatOptions {
  int sample_count = 200;
  std::uint64_t seed = 12345;
};

/// Checks ab = 0 <=> a*alpha(b) = 0, exhaustively over word pairs within
/// bounds plus sampled element pairs.
CheckReport alpha_compatibility_check(const Endomorphism& alpha, const Presentation& P,
                                      const Bounds& b, const CompatOptions& opt = {});

/// Restriction of an annihilator subspace over an x-extended slice to its
/// x-degree-0 members, as a ring-slice subspace.
SubspaceBasis psi_restrict(const SubspaceBasis& B, const Presentation& P, const Bounds& b);

/// Extension of a ring-slice left-annihilator subspace to the polynomial
/// slice: the span of all in-slice products (w x^k) * v with v in L.
SubspaceBasis phi_extend(const SubspaceBasis& L, const Presentation& P, const Bounds& b,
                         int x_degree, const Endomorphism& alpha);

/// Deterministic random element supported on at most max_terms slice words.
RingElem random_elem(const std::vector<Word>& words, const PrimeField& F,
                     std::mt19937_64& rng, int max_terms);

}  // namespace ncann
