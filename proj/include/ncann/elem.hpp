#pragma once

#include <map>

#include "ncann/field.hpp"
#include "ncann/word.hpp"

namespace ncann {

/// Sparse K-linear combination of words with nonzero coefficients only.
/// Elements produced by the algebra operations are supported on normal words.
struct RingElem {
  std::map<Word, Coeff> terms;

  bool is_zero() const { return terms.empty(); }

  /// Largest grade of a support word, or -1 for the zero element.
  int max_grade() const {
    return terms.empty() ? -1 : terms.rbegin()->first.grade();
  }

  bool operator==(const RingElem&) const = default;
};

inline RingElem term_elem(Word w, Coeff c = 1) {
  RingElem e;
  if (c != 0) e.terms.emplace(std::move(w), c);
  return e;
}

inline RingElem one_elem() { return term_elem(Word{}); }

inline void accumulate(RingElem& e, const PrimeField& F, const Word& w, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = e.terms.emplace(w, c);
  if (!inserted) {
    it->second = F.add(it->second, c);
    if (it->second == 0) e.terms.erase(it);
  }
}

inline RingElem add(const PrimeField& F, const RingElem& a, const RingElem& b) {
  RingElem out = a;
  for (const auto& [w, c] : b.terms) accumulate(out, F, w, c);
  return out;
}

inline RingElem sub(const PrimeField& F, const RingElem& a, const RingElem& b) {
  RingElem out = a;
  for (const auto& [w, c] : b.terms) accumulate(out, F, w, F.neg(c));
  return out;
}

inline RingElem scale(const PrimeField& F, const RingElem& a, Coeff c) {
  RingElem out;
  if (c == 0) return out;
  for (const auto& [w, k] : a.terms) out.terms.emplace(w, F.mul(k, c));
  return out;
}

inline RingElem negate(const PrimeField& F, const RingElem& a) {
  return scale(F, a, F.neg(1));
}

/// Total order on elements (term lists compared lexicographically);
/// used for deterministic tie-breaking and set semantics.
inline int compare(const RingElem& a, const RingElem& b) {
  auto ia = a.terms.begin(), ib = b.terms.begin();
  for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
    if (int c = compare(ia->first, ib->first); c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms.end()) return 1;
  if (ib != b.terms.end()) return -1;
  return 0;
}

inline bool elem_less(const RingElem& a, const RingElem& b) { return compare(a, b) < 0; }

}  // namespace ncann
