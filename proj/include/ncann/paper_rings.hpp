#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncann/annihilator.hpp"
#include "ncann/report.hpp"

namespace ncann {

/// Built-in presentations. `cedo_3_1` instantiates one `alam` generator per
/// field element and accepts any supported characteristic; `armendariz_3_3`
/// is defined over GF(2) only; `section4` accepts any supported
/// characteristic. Each carries its claimed-basis predicate, and the two
/// rings with a direct-sum decomposition carry a component scheme.
Presentation builtin_ring(const std::string& name, int p);

bool is_builtin_name(const std::string& name);

/// Convenience constructors for generators of a built-in ring.
GeneratorId make_gen(const Presentation& P, const std::string& family,
                     std::vector<std::int32_t> indices);
RingElem gen_elem(const Presentation& P, const std::string& family,
                  std::vector<std::int32_t> indices);

/// The expanded generator family {a_0..a_N} of the section4 ring.
std::vector<RingElem> section4_a_generators(const Presentation& P, int max_index);

/// Verifies the annihilating series witness of the cedo_3_1 ring: for every
/// i <= n, (a[0,i] - a[1,i]x) * (b[1,n] - b[2,n] + b[1,n]x + b[2,n]x^2) = 0.
/// An override series replaces the canonical witness (used to demonstrate
/// how perturbed witnesses fail); the report then lists the first nonzero
/// coefficient.
CheckReport cedo_series_witness(int n, const Presentation& P, int t,
                                const std::optional<TruncSeries>& witness_override =
                                    std::nullopt);

/// For a finite subset of the left ideal generated by the a-family in the
/// section4 ring (supports in the a-semigroup or the b*a... class), returns
/// the b_k that left-annihilates all of it: k is the largest leading a-index
/// over all support words, or 0 when no support word starts with an
/// a-generator. The result is re-verified before being returned.
RingElem bb_failure_witness(const std::vector<RingElem>& F, const Presentation& P,
                            const Bounds& b);

/// Right-zip certificate for the section4 ring: picks a member with nonzero
/// scalar component and verifies that its slice annihilators on both sides
/// vanish. When every member has zero scalar part, b_0 right-annihilates the
/// whole set; the report flags the query as inconsistent at these bounds.
CheckReport right_zip_certificate(const std::vector<RingElem>& X, const Presentation& P,
                                  const Bounds& b);

/// Truncated evidence for the series-level cofaithfulness argument in the
/// section4 ring: builds g = sum a_i x^i, multiplies into the first ideal
/// generator it does not annihilate, and checks that no constant member of
/// the product's left annihilator lives on words indexed below the
/// truncation order (surviving members must escape the index window).
CheckReport series_bb_evidence(const std::vector<TruncSeries>& J, const Presentation& P,
                               const Bounds& b, int t);

enum class LemmaName { lemma_3_4, lemma_4_1, lemma_4_2, lemma_4_3 };

LemmaName lemma_from_string(const std::string& s);

/// Parameters of the exhaustive zero-product pair scans.
struct PairScanParams {
  int max_x_degree = 2;
  int max_support = 2;  // terms per polynomial (one term = coeff * word * x^k)
  Bounds bounds{3, 2};  // coefficient-word slice
};

struct PairScanOutcome {
  long long pairs_checked = 0;
  long long zero_product_pairs = 0;
  std::optional<std::pair<std::string, std::string>> armendariz_violation;
  std::optional<std::pair<std::string, std::string>> scalar_violation;
};

/// Enumerates all polynomial pairs within the parameters, finds those with
/// exactly zero product, and checks on each both the pairwise coefficient
/// condition and the scalar-component conclusion.
PairScanOutcome zero_pair_scan(const Presentation& P, const PairScanParams& prm);

struct LemmaOptions {
  int sample_count = 25;
  std::uint64_t seed = 12345;
  std::optional<PairScanParams> scan;  // lemma_3_4 / lemma_4_3 override
};

CheckReport verify_lemma(LemmaName name, const Presentation& P, const Bounds& b,
                         const LemmaOptions& opt = {});

struct CheckRunOptions {
  std::optional<int> max_index;
  std::optional<int> max_degree;
  std::optional<int> order;
  std::uint64_t seed = 12345;
  int batch = 25;  // size of the seeded witness batches
};

/// The full claim ledger of one built-in ring.
std::vector<CheckReport> run_ring_checks(const Presentation& P, const CheckRunOptions& opt);

}  // namespace ncann
