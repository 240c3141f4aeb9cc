#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncann/elem.hpp"
#include "ncann/presentation.hpp"
#include "ncann/report.hpp"

namespace ncann {

/// All generators admitted by the bounds, in canonical order. Fixed-range
/// index positions enumerate their declared range; open positions run over
/// 0..max_index.
std::vector<GeneratorId> generators_in_bounds(const Presentation& P, const Bounds& b);

/// Validates grade and index bounds of a word; throws on violation.
void check_word_in_bounds(const Word& w, const Presentation& P, const Bounds& b);

/// Structural validity of a single generator id (known family, arity,
/// fixed ranges); throws on violation. Ignores max_index.
void check_generator(const GeneratorId& g, const Presentation& P);

bool word_irreducible(const Word& w, const Presentation& P);

/// Memo table shared by one logical operation; reduction results are pure,
/// so a cache is only an optimization and is never shared across calls.
using NfCache = std::unordered_map<Word, RingElem, WordHash>;

/// Normal form of a single (possibly reducible) word as a combination of
/// irreducible words. Reference is owned by the cache.
const RingElem& reduce_word(const Word& w, const Presentation& P, NfCache& cache);

RingElem normal_form(const RingElem& raw, const Presentation& P, const Bounds& b);
RingElem normal_form_cached(const RingElem& raw, const Presentation& P, const Bounds& b,
                            NfCache& cache);

/// Exact ring product; throws degree_overflow when the grade budget cannot
/// hold the product (ring products are never truncated).
RingElem multiply(const RingElem& a, const RingElem& b, const Presentation& P,
                  const Bounds& bounds);
RingElem multiply_cached(const RingElem& a, const RingElem& b, const Presentation& P,
                         const Bounds& bounds, NfCache& cache);

/// All irreducible words within bounds, canonical order.
std::vector<Word> enumerate_basis(const Presentation& P, const Bounds& b);

/// All words within bounds (reducible included), canonical order.
std::vector<Word> enumerate_all_words(const Presentation& P, const Bounds& b);

/// Reduce with randomized rule/position choices; used as independent
/// evidence that the outcome does not depend on reduction order.
RingElem reduce_random_order(const Word& w, const Presentation& P, std::mt19937_64& rng);

struct BasisClaimOptions {
  int confluence_samples = 200;
  std::uint64_t seed = 12345;
};

/// Compares the enumerated normal words against the claimed-basis predicate
/// and re-reduces sampled words under randomized orders.
CheckReport check_basis_claim(const Presentation& P, const Bounds& b,
                              const BasisClaimOptions& opt = {});

/// Splits an element along the ring's component scheme; components sum to
/// the input and have pairwise disjoint supports.
std::map<std::string, RingElem> decompose_components(const RingElem& e,
                                                     const Presentation& P);

struct LengthDelta {
  bool zero = false;  // distinguished value for the zero element (length -inf)
  int length = 0;
  Word delta;
};

LengthDelta length_and_delta(const RingElem& e, const Presentation& P);

/// One concrete instantiation of a rewrite rule within bounds.
struct RuleInstance {
  int rule_index = 0;
  std::vector<std::int32_t> binding;
  Word lhs;
  RingElem rhs_raw;  // formal rhs, not normal-formed
};

std::vector<RuleInstance> rule_instances(const Presentation& P, const Bounds& b);

/// Slice-size guard (env NCANN_MAX_SLICE, default 20000).
std::size_t max_slice_dim();

}  // namespace ncann
