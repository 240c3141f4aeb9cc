#pragma once

#include <string_view>

#include "ncann/skew.hpp"

namespace ncann {

/// Parses `2*b[0]*a[1] + a[0]`-style expressions; `x` and `x^k` are the skew
/// indeterminate, products are evaluated with the supplied endomorphism
/// (x*b = alpha(b)*x), and parentheses group subexpressions.
SkewPoly parse_poly(std::string_view text, const Presentation& P, const Bounds& b,
                    const Endomorphism& alpha);

/// Same grammar restricted to x-degree 0.
RingElem parse_elem(std::string_view text, const Presentation& P, const Bounds& b);

}  // namespace ncann
