#pragma once

#include <cstdint>
#include <string>

#include "ncann/errors.hpp"

namespace ncann {

using Coeff = std::uint8_t;

/// Exact arithmetic in GF(p) for a small prime p in {2,3,5,7}.
/// Values are canonical residues 0..p-1.
class PrimeField {
 public:
  explicit PrimeField(int p) : p_(p) {
    if (p != 2 && p != 3 && p != 5 && p != 7)
      fail(ErrorKind::bad_characteristic,
           "characteristic must be one of {2,3,5,7}, got " + std::to_string(p));
  }

  int p() const { return p_; }

  Coeff reduce(long long n) const {
    long long r = n % p_;
    if (r < 0) r += p_;
    return static_cast<Coeff>(r);
  }

  Coeff add(Coeff a, Coeff b) const {
    int s = int(a) + int(b);
    return static_cast<Coeff>(s >= p_ ? s - p_ : s);
  }

  Coeff sub(Coeff a, Coeff b) const {
    int s = int(a) - int(b);
    return static_cast<Coeff>(s < 0 ? s + p_ : s);
  }

  Coeff neg(Coeff a) const { return a == 0 ? Coeff{0} : static_cast<Coeff>(p_ - a); }

  Coeff mul(Coeff a, Coeff b) const { return static_cast<Coeff>((int(a) * int(b)) % p_); }

  /// Multiplicative inverse of a nonzero residue.
  Coeff inv(Coeff a) const {
    for (int x = 1; x < p_; ++x)
      if ((int(a) * x) % p_ == 1) return static_cast<Coeff>(x);
    fail(ErrorKind::internal, "inverse of zero requested");
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  int p_;
};

}  // namespace ncann
