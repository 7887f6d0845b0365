#include "torsionlab/knot_invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace torsionlab {

int twist_knot_determinant(int n) {
  if (n == 0 || n == -1)
    throw std::invalid_argument("twist parameter must satisfy n not in {0, -1}");
  int p = 4 * n + 1;
  return p < 0 ? -p : p;
}

int metabelian_class_count(int n) { return (twist_knot_determinant(n) - 1) / 2; }

LaurentPolynomial alexander_twist(int n) {
  if (n == 0) throw std::invalid_argument("alexander_twist: n = 0 is excluded");
  LaurentPolynomial p;
  p.set_coefficient(2, -n);
  p.set_coefficient(1, 2 * std::int64_t(n) + 1);
  p.set_coefficient(0, -n);
  return p;
}

LaurentPolynomial alexander_torus(int n) {
  std::int64_t q = 2 * std::int64_t(n) + 1;
  if (q < 0) q = -q;  // mirror image has the same Alexander polynomial
  if (q == 1) throw std::invalid_argument("alexander_torus: |2n+1| must exceed 1");
  LaurentPolynomial num;  // t^q + 1
  num.set_coefficient(int(q), 1);
  num.set_coefficient(0, 1);
  LaurentPolynomial den;  // t + 1
  den.set_coefficient(1, 1);
  den.set_coefficient(0, 1);
  return num.divide_exact(den);
}

LaurentPolynomial a_poly_specialized(int n) {
  if (n == 0 || n == -1)
    throw std::invalid_argument("a_poly_specialized: n in {0, -1} is excluded");
  int shift, power;
  if (n > 0) {
    shift = -8 * n;
    power = 2 * n;
  } else {
    int m = -n;
    shift = -8 * m + 3;
    power = 2 * m - 1;
  }
  // expand M^shift (M + M^-1)^power with explicit binomial coefficients
  // (overflow-checked; exact for |n| <= 33, loud error beyond)
  LaurentPolynomial out;
  std::int64_t coeff = 1;
  for (int k = 0; k <= power; ++k) {
    out.set_coefficient(shift + power - 2 * k, coeff);
    if (k < power) {
      std::int64_t num;
      if (__builtin_mul_overflow(coeff, std::int64_t(power - k), &num))
        throw std::overflow_error("a_poly_specialized: binomial coefficient overflow");
      coeff = num / (k + 1);
    }
  }
  return out;
}

EigenvalueIndex eigenvalue_index(int n, int j) {
  const int p = twist_knot_determinant(n);
  if (j < 1 || j > (p - 1) / 2)
    throw std::invalid_argument("eigenvalue index j out of range 1..(|4n+1|-1)/2");
  const int odd = 2 * j - 1;
  EigenvalueIndex ev{n, j, RootOfUnity(odd, p), p / std::gcd(odd, p)};
  // the reduced representation already encodes the order: 2 * p_k
  if (ev.xi.order() != 2 * std::int64_t(ev.p_k))
    throw std::logic_error("eigenvalue_index: order bookkeeping mismatch");
  return ev;
}

int order_pk(int n, int j) { return eigenvalue_index(n, j).p_k; }

std::vector<std::pair<RootOfUnity, RootOfUnity>> eigenvalue_set(int n) {
  const int p = twist_knot_determinant(n);
  std::vector<std::pair<RootOfUnity, RootOfUnity>> out;
  for (int j = 1; j <= (p - 1) / 2; ++j) {
    RootOfUnity xi(2 * j - 1, p);
    out.emplace_back(xi, xi.inverse());
  }
  return out;
}

double LimitValue::value() const {
  return (std::log(double(det_arg)) - std::log(2.0)) / double(p_k);
}

std::string LimitValue::to_string() const {
  return "(log " + std::to_string(det_arg) + " - log 2)/" + std::to_string(p_k);
}

LimitSet limit_set(int n) {
  const int p = twist_knot_determinant(n);
  std::int64_t q = 2 * std::int64_t(n) + 1;
  const int det_arg = int(q < 0 ? -q : q);

  std::set<int> divisors;
  for (int d = 2; d <= p; ++d)
    if (p % d == 0) divisors.insert(d);

  // every divisor > 1 must be realized by some eigenvalue index
  std::set<int> realized;
  for (int j = 1; j <= (p - 1) / 2; ++j) realized.insert(order_pk(n, j));
  if (realized != divisors)
    throw std::logic_error("limit_set: realized p_k values differ from the divisors of p");

  LimitSet out{{}, LimitValue{det_arg, p}};
  for (auto it = divisors.rbegin(); it != divisors.rend(); ++it)
    out.limits.push_back(LimitValue{det_arg, *it});
  return out;
}

}  // namespace torsionlab
