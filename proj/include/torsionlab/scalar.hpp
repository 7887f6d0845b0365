#pragma once

#include <cfloat>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace torsionlab {

/// Numeric traits for the complex scalar types the kernels are instantiated
/// with. The default instantiation is std::complex<double> (53 mantissa bits);
/// wider tiers live in precision_tiers.hpp.
template <class C>
struct scalar_traits;

template <>
struct scalar_traits<std::complex<double>> {
  using complex_type = std::complex<double>;
  using real_type = double;
  static constexpr int mantissa_bits = 53;
  static complex_type make(double re, double im) { return {re, im}; }
  static real_type make_real(double x) { return x; }
  static double to_double(real_type x) { return x; }
  static real_type pi() { return 3.14159265358979323846264338327950288; }
};

template <>
struct scalar_traits<std::complex<long double>> {
  using complex_type = std::complex<long double>;
  using real_type = long double;
  static constexpr int mantissa_bits = LDBL_MANT_DIG;
  static complex_type make(double re, double im) { return {re, im}; }
  static real_type make_real(double x) { return x; }
  static double to_double(real_type x) { return static_cast<double>(x); }
  static real_type pi() { return 3.14159265358979323846264338327950288L; }
};

using Cplx = std::complex<double>;

/// Relative tolerance for matrix identities: 1e-10 at binary64 for dim <= 64,
/// scaled linearly in the dimension above that, and scaled by the epsilon
/// ratio for wider scalar types.
template <class C>
typename scalar_traits<C>::real_type rel_tol(int dim = 2) {
  using R = typename scalar_traits<C>::real_type;
  R base = std::numeric_limits<R>::epsilon() /
           std::numeric_limits<double>::epsilon() * 1e-10;
  if (dim > 64) base *= R(dim) / 64;
  return base;
}

/// Threshold factor for rank decisions: a residual pivot below
/// rank_tol<C>() * (largest pivot) is treated as zero.
template <class C>
typename scalar_traits<C>::real_type rank_tol() {
  using R = typename scalar_traits<C>::real_type;
  return std::numeric_limits<R>::epsilon() /
         std::numeric_limits<double>::epsilon() * 1e-9;
}

/// Natural log of |z|. Domain error on z = 0.
template <class C>
typename scalar_traits<C>::real_type log_magnitude(const C& z) {
  using std::abs;
  using std::log;
  auto a = abs(z);
  if (a == 0) throw std::domain_error("log_magnitude: zero has no finite log-magnitude");
  return log(a);
}

}  // namespace torsionlab
