#pragma once

#include <string_view>

#include "ncann/presentation.hpp"
#include "ncann/skew.hpp"

namespace ncann {

/// Parses a presentation from DSL source:
///
///   field 2;
///   family a(1); family b(2) index 0 in 1..2;
///   rule b[j]*a[i] -> 0 when j >= i;
///   rule a[i]*b[0] -> sum(k, 1, i, a[i-k]*b[k]) when i >= 1;
///
/// Rules must be homogeneous (lhs and every rhs word have equal grade).
Presentation parse_presentation(std::string_view text);

/// Parses an endomorphism description and builds its image tables for
/// generator indices up to `table_max_index`:
///
///   kind endomorphism;
///   gen a[i] -> a[i+1];
///   gen b[j] -> b[j+1];
///
/// Automorphisms additionally list `inv` lines. The result is validated
/// against every rule instance before being returned.
Endomorphism parse_endomorphism(std::string_view text, const Presentation& P,
                                int table_max_index);

}  // namespace ncann
