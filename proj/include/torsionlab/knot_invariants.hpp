#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torsionlab/laurent.hpp"
#include "torsionlab/root_of_unity.hpp"

namespace torsionlab {

/// Twist parameter domain: n nonzero, n != -1 (those two parameters do not
/// give a hyperbolic knot). p = |4n+1| is the knot determinant.
int twist_knot_determinant(int n);
int metabelian_class_count(int n);  // (|4n+1|-1)/2

/// Alexander polynomial of the n-twist knot: -n t^2 + (2n+1) t - n.
LaurentPolynomial alexander_twist(int n);

/// Alexander polynomial of the (2, 2n+1) torus knot: the exact quotient
/// (t^q + 1)/(t + 1) with q = |2n+1| (mirror for n < 0).
LaurentPolynomial alexander_torus(int n);

/// The A-polynomial of the n-twist knot specialized to L = M^-4, expanded:
/// M^-8n (M + M^-1)^2n for n > 0, M^(-8|n|+3) (M + M^-1)^(2|n|-1) for n < 0.
LaurentPolynomial a_poly_specialized(int n);

/// Eigenvalue data attached to index j = 1..(p-1)/2: xi = exp(i pi (2j-1)/p),
/// and p_k = p / gcd(2j-1, p) (so the multiplicative order of xi is 2 p_k).
struct EigenvalueIndex {
  int n;
  int j;
  RootOfUnity xi;
  int p_k;
};

EigenvalueIndex eigenvalue_index(int n, int j);

/// p_k alone; always > 1, always a divisor of p.
int order_pk(int n, int j);

/// All (p-1)/2 conjugate eigenvalue pairs {xi_j, 1/xi_j}, exact.
std::vector<std::pair<RootOfUnity, RootOfUnity>> eigenvalue_set(int n);

/// One limit of the torsion growth rate in exact closed form:
/// (log(det_arg) - log 2) / p_k, with det_arg = |2n+1|.
struct LimitValue {
  int det_arg;  // |2n+1|
  int p_k;      // divisor of p, > 1
  double value() const;
  std::string to_string() const;  // "(log q - log 2)/p_k"
  bool operator==(const LimitValue& o) const {
    return det_arg == o.det_arg && p_k == o.p_k;
  }
};

/// The set of limits {(log|2n+1| - log 2)/d : d | p, d > 1}, sorted by
/// descending p_k (ascending value); the minimum is the d = p entry. Also
/// checks that every divisor is realized by some j and throws otherwise.
struct LimitSet {
  std::vector<LimitValue> limits;
  LimitValue minimum;
};

LimitSet limit_set(int n);

}  // namespace torsionlab
