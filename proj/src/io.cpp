#include "ncann/io.hpp"

#include <sstream>

#include "ncann/skew.hpp"

namespace ncann {

std::string word_str(const Presentation& P, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const GeneratorId& g : w.letters) {
    if (!first) os << '*';
    first = false;
    os << P.family(g.family).name;
    if (!g.indices.empty()) {
      os << '[';
      for (std::size_t i = 0; i < g.indices.size(); ++i) {
        if (i) os << ',';
        os << g.indices[i];
      }
      os << ']';
    }
  }
  return os.str();
}

namespace {

std::string term_str(const Presentation& P, const Word& w, Coeff c) {
  if (w.empty()) return std::to_string(int(c));
  if (c == 1) return word_str(P, w);
  return std::to_string(int(c)) + "*" + word_str(P, w);
}

}  // namespace

std::string elem_str(const Presentation& P, const RingElem& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << term_str(P, it->first, it->second);
  }
  return os.str();
}

namespace {

std::string coeffs_str(const Presentation& P, const std::vector<RingElem>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const RingElem& c = coeffs[k];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << elem_str(P, c);
      continue;
    }
    std::string xs = k == 1 ? "x" : "x^" + std::to_string(k);
    if (c.terms.size() == 1) {
      const auto& [w, cf] = *c.terms.begin();
      if (w.empty() && cf == 1)
        os << xs;
      else
        os << term_str(P, w, cf) << '*' << xs;
    } else {
      os << '(' << elem_str(P, c) << ")*" << xs;
    }
  }
  if (first) return "0";
  return os.str();
}

}  // namespace

std::string poly_str(const Presentation& P, const SkewPoly& f) {
  return coeffs_str(P, f.coeffs);
}

std::string series_str(const Presentation& P, const TruncSeries& f) {
  return coeffs_str(P, f.coeffs);
}

}  // namespace ncann
