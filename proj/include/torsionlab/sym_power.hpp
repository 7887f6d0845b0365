#pragma once

#include <stdexcept>
#include <vector>

#include "torsionlab/matrix.hpp"
#include "torsionlab/scalar.hpp"

namespace torsionlab {

/// Action of a in SL(2,C) on homogeneous polynomials p(x, y) of degree n-1:
/// p is sent to p(x', y') with (x', y') = a^-1 (x, y). On the monomial basis
/// {x^(n-1), x^(n-2) y, ..., y^(n-1)} this yields the n-dimensional
/// irreducible representation; for a = diag(xi, 1/xi) the basis vector
/// x^(n-1-i) y^i is scaled by xi^(-n+1+2i).
template <class C>
Matrix<C> sym_power(const Matrix<C>& a, int n) {
  using std::abs;
  if (a.rows() != 2 || a.cols() != 2)
    throw std::invalid_argument("sym_power: input must be 2x2");
  if (n < 1) throw std::invalid_argument("sym_power: dimension must be >= 1");
  const C deta = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (abs(deta - C(1)) > rel_tol<C>(2) * 64)
    throw std::domain_error("sym_power: input is not unimodular");
  // a^-1 = [[d, -b], [-c, a]]: substitute x' = d x - b y, y' = -c x + a y
  const C pa = a(0, 0), pb = a(0, 1), pc = a(1, 0), pd = a(1, 1);

  // binomials as exact small integers embedded into C
  std::vector<std::vector<double>> binom(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    binom[i][0] = 1.0;
    for (int j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0.0);
  }

  auto pow_table = [n](const C& base) {
    std::vector<C> t(size_t(n), C(1));
    for (int k = 1; k < n; ++k) t[k] = t[k - 1] * base;
    return t;
  };
  const auto dpow = pow_table(pd), nbpow = pow_table(-pb);
  const auto ncpow = pow_table(-pc), apow = pow_table(pa);

  Matrix<C> m(n, n);
  for (int j = 0; j < n; ++j) {
    const int p = n - 1 - j, q = j;
    // (d x - b y)^p (-c x + a y)^q, coefficient of x^(n-1-i) y^i
    for (int s = 0; s <= p; ++s) {
      const C left = C(binom[p][s]) * dpow[p - s] * nbpow[s];
      if (left == C(0)) continue;
      for (int t = 0; t <= q; ++t) {
        const int i = s + t;
        const C right = C(binom[q][t]) * ncpow[q - t] * apow[t];
        if (right == C(0)) continue;
        m(i, j) += left * right;
      }
    }
  }
  return m;
}

}  // namespace torsionlab
