#pragma once

#include <cstdint>
#include <string>

#include "torsionlab/scalar.hpp"

namespace torsionlab {

/// Exact root of unity exp(i*pi*numer/denom), stored in reduced canonical
/// form: denom >= 1, gcd(numer, denom) = 1 (or numer = 0, denom = 1), and
/// numer taken mod 2*denom into [0, 2*denom). Products and powers are exact
/// integer arithmetic; equality is decidable exactly.
class RootOfUnity {
 public:
  RootOfUnity() = default;  // value 1
  RootOfUnity(std::int64_t numer, std::int64_t denom);

  static RootOfUnity one() { return RootOfUnity(0, 1); }
  static RootOfUnity minus_one() { return RootOfUnity(1, 1); }

  std::int64_t numer() const { return numer_; }
  std::int64_t denom() const { return denom_; }

  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity inverse() const;
  RootOfUnity conj() const { return inverse(); }
  RootOfUnity pow(std::int64_t k) const;

  bool operator==(const RootOfUnity& o) const {
    return numer_ == o.numer_ && denom_ == o.denom_;
  }
  bool operator!=(const RootOfUnity& o) const { return !(*this == o); }

  bool is_one() const { return numer_ == 0; }
  bool is_minus_one() const { return numer_ == 1 && denom_ == 1; }
  bool is_real() const { return denom_ == 1; }

  /// Multiplicative order: smallest m >= 1 with (this)^m = 1.
  std::int64_t order() const;

  std::string to_string() const;  // "exp(i*pi*numer/denom)"

  /// Embed at the precision of C.
  template <class C>
  C embed() const {
    using T = scalar_traits<C>;
    using R = typename T::real_type;
    using std::cos;
    using std::sin;
    R theta = T::pi() * R(numer_) / R(denom_);
    return C(cos(theta), sin(theta));
  }

 private:
  std::int64_t numer_ = 0;
  std::int64_t denom_ = 1;
};

}  // namespace torsionlab
