#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ncann {

/// One generator occurrence: the family's declaration rank plus its index tuple.
struct GeneratorId {
  std::int32_t family = 0;
  std::vector<std::int32_t> indices;

  bool operator==(const GeneratorId&) const = default;
};

int compare(const GeneratorId& a, const GeneratorId& b);
inline bool operator<(const GeneratorId& a, const GeneratorId& b) { return compare(a, b) < 0; }

/// A product of generators. The empty word is the multiplicative identity.
struct Word {
  std::vector<GeneratorId> letters;

  int grade() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }

  bool operator==(const Word&) const = default;
};

/// Canonical order: graded, then letterwise by (family rank, index tuple).
int compare(const Word& a, const Word& b);
inline bool operator<(const Word& a, const Word& b) { return compare(a, b) < 0; }

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

Word concat(const Word& a, const Word& b);

}  // namespace ncann
