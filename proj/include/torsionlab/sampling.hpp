#pragma once

#include <cstdint>
#include <random>

#include "torsionlab/matrix.hpp"
#include "torsionlab/word.hpp"

namespace torsionlab {

/// Deterministic sampling helpers for property checks. Everything is driven
/// by an explicit seed so runs are reproducible.

inline double uniform_pm1(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

template <class C>
C random_complex(std::mt19937_64& rng, double scale = 1.0) {
  return scalar_traits<C>::make(scale * uniform_pm1(rng), scale * uniform_pm1(rng));
}

/// Random element of SL(2,C): sample a, b, c with |a| bounded away from 0 and
/// solve d = (1 + b c)/a, so the determinant is 1 to rounding.
template <class C>
Matrix<C> random_sl2(std::mt19937_64& rng) {
  using std::abs;
  C a(0), b(0), c(0);
  do {
    a = random_complex<C>(rng);
  } while (scalar_traits<C>::to_double(abs(a)) < 0.3);
  b = random_complex<C>(rng);
  c = random_complex<C>(rng);
  Matrix<C> m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = (C(1) + b * c) / a;
  return m;
}

/// Random element of SL(2,C) with squared Frobenius norm at most 4, so the
/// condition number stays below ~4 (unimodular, hence cond = sigma_max^2).
template <class C>
Matrix<C> random_bounded_sl2(std::mt19937_64& rng) {
  using std::abs;
  for (;;) {
    Matrix<C> m = random_sl2<C>(rng);
    auto frob2 = abs(m(0, 0)) * abs(m(0, 0)) + abs(m(0, 1)) * abs(m(0, 1)) +
                 abs(m(1, 0)) * abs(m(1, 0)) + abs(m(1, 1)) * abs(m(1, 1));
    if (scalar_traits<C>::to_double(frob2) <= 4.0) return m;
  }
}

/// Random point on the unit circle.
template <class C>
C random_unit(std::mt19937_64& rng) {
  using T = scalar_traits<C>;
  using R = typename T::real_type;
  using std::cos;
  using std::sin;
  R theta = T::pi() * T::make_real(uniform_pm1(rng));
  return C(cos(theta), sin(theta));
}

/// Random freely reduced word over `gens` generators with at most `max_len`
/// letters.
inline Word random_word(std::mt19937_64& rng, int gens, int max_len) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<int> gen_dist(0, gens - 1);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  const int len = len_dist(rng);
  std::vector<Letter> letters;
  letters.reserve(size_t(len));
  for (int i = 0; i < len; ++i)
    letters.push_back(Letter{gen_dist(rng), sign_dist(rng) ? 1 : -1});
  return Word(letters);
}

}  // namespace torsionlab
