#pragma once

#include <string>

#include "ncann/elem.hpp"
#include "ncann/presentation.hpp"

namespace ncann {

struct SkewPoly;
struct TruncSeries;

std::string word_str(const Presentation& P, const Word& w);

/// Serializes terms in descending canonical word order (leading term first).
std::string elem_str(const Presentation& P, const RingElem& e);

/// Coefficients listed by ascending x-power.
std::string poly_str(const Presentation& P, const SkewPoly& f);
std::string series_str(const Presentation& P, const TruncSeries& f);

}  // namespace ncann
