#pragma once

// Wider scalar tiers backed by Boost.Multiprecision (header-only).
// Kept out of scalar.hpp so the default double tier compiles fast.

#include <boost/multiprecision/cpp_complex.hpp>

#include "torsionlab/scalar.hpp"

namespace torsionlab {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using mp_real =
    mp::number<mp::cpp_bin_float<Bits, mp::backends::digit_base_2>, mp::et_off>;
template <unsigned Bits>
using mp_complex =
    mp::number<mp::complex_adaptor<mp::cpp_bin_float<Bits, mp::backends::digit_base_2>>,
               mp::et_off>;

using Cplx128 = mp_complex<128>;
using Cplx256 = mp_complex<256>;

template <unsigned Bits>
struct scalar_traits<mp_complex<Bits>> {
  using complex_type = mp_complex<Bits>;
  using real_type = mp_real<Bits>;
  static constexpr int mantissa_bits = static_cast<int>(Bits);
  static complex_type make(double re, double im) {
    return complex_type(real_type(re), real_type(im));
  }
  static real_type make_real(double x) { return real_type(x); }
  static double to_double(const real_type& x) {
    return x.template convert_to<double>();
  }
  static real_type pi() {
    static const real_type value = acos(real_type(-1));
    return value;
  }
};

/// Supported mantissa widths, smallest first.
inline constexpr int kPrecisionTiers[] = {53, 64, 128, 256};

/// Smallest supported tier with at least the requested number of bits.
/// Throws std::invalid_argument for requests below 53 or above 256.
inline int precision_tier(int requested_bits) {
  if (requested_bits < 53)
    throw std::invalid_argument("precision-bits must be at least 53");
  for (int t : kPrecisionTiers)
    if (requested_bits <= t) return t;
  throw std::invalid_argument("precision-bits above 256 is not supported");
}

}  // namespace torsionlab
