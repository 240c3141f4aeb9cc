#pragma once

#include <stdexcept>
#include <string>

namespace ncann {

enum class ErrorKind {
  parse,
  bad_characteristic,
  inhomogeneous_rule,
  unknown_family,
  bad_index,
  index_bounds,
  degree_overflow,
  slice_limit,
  order_mismatch,
  ring_mismatch,
  unsupported_ring,
  precondition,
  vacuous_query,
  no_inverse,
  endomorphism_invalid,
  membership,
  no_generator,
  mixed_component,
  internal,
};

class NcannError : public std::runtime_error {
 public:
  NcannError(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw NcannError(kind, msg);
}

}  // namespace ncann
