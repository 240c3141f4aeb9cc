#include "ncann/word.hpp"

namespace ncann {

int compare(const GeneratorId& a, const GeneratorId& b) {
  if (a.family != b.family) return a.family < b.family ? -1 : 1;
  if (a.indices.size() != b.indices.size())
    return a.indices.size() < b.indices.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.indices.size(); ++i)
    if (a.indices[i] != b.indices[i]) return a.indices[i] < b.indices[i] ? -1 : 1;
  return 0;
}

int compare(const Word& a, const Word& b) {
  if (a.letters.size() != b.letters.size())
    return a.letters.size() < b.letters.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.letters.size(); ++i)
    if (int c = compare(a.letters[i], b.letters[i]); c != 0) return c;
  return 0;
}

std::size_t WordHash::operator()(const Word& w) const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(w.letters.size());
  for (const auto& l : w.letters) {
    mix(static_cast<std::size_t>(l.family) + 1);
    for (auto i : l.indices) mix(static_cast<std::size_t>(i) + 0x51ed);
  }
  return h;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

}  // namespace ncann
