#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "torsionlab/root_of_unity.hpp"
#include "torsionlab/scalar.hpp"

namespace torsionlab {

/// Laurent polynomial with integer coefficients (the only kind this library
/// needs; rational coefficients are rejected by construction since the API
/// only accepts integers). Addition and multiplication are exact; coefficient
/// arithmetic is overflow-checked and throws instead of wrapping.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::int64_t constant);

  static LaurentPolynomial monomial(std::int64_t coeff, int exponent);

  const std::map<int, std::int64_t>& coefficients() const { return coeffs_; }
  std::int64_t coefficient(int exponent) const;
  bool is_zero() const { return coeffs_.empty(); }
  int min_exponent() const;  // throws on zero polynomial
  int max_exponent() const;

  LaurentPolynomial operator+(const LaurentPolynomial& o) const;
  LaurentPolynomial operator-(const LaurentPolynomial& o) const;
  LaurentPolynomial operator*(const LaurentPolynomial& o) const;
  LaurentPolynomial operator-() const;
  bool operator==(const LaurentPolynomial& o) const { return coeffs_ == o.coeffs_; }

  LaurentPolynomial pow(int k) const;  // k >= 0

  /// Exact division; throws std::domain_error when the remainder is nonzero.
  LaurentPolynomial divide_exact(const LaurentPolynomial& divisor) const;

  std::string to_string(const std::string& var = "t") const;

  void set_coefficient(int exponent, std::int64_t coeff);

 private:
  std::map<int, std::int64_t> coeffs_;  // exponent -> nonzero coefficient
};

/// Horner-style evaluation at a complex point; the Laurent part is handled by
/// factoring out the minimal exponent.
template <class C>
C eval_laurent(const LaurentPolynomial& p, const C& z) {
  if (p.is_zero()) return C(0);
  const int lo = p.min_exponent(), hi = p.max_exponent();
  // Horner over the shifted (ordinary) polynomial of degree hi-lo
  C acc(0);
  for (int e = hi; e >= lo; --e) {
    acc = acc * z;
    auto c = p.coefficient(e);
    if (c != 0) acc += C(double(c));
  }
  // multiply by z^lo
  if (lo != 0) {
    C zp(1);
    C base = lo > 0 ? z : C(1) / z;
    for (int k = 0; k < (lo > 0 ? lo : -lo); ++k) zp = zp * base;
    acc = acc * zp;
  }
  return acc;
}

/// Evaluation at an exact root of unity: powers of the point are formed by
/// exact exponent arithmetic and embedded only at the end, so the result is
/// exact up to the scalar precision of the final embedding. Long polynomials
/// switch to Horner at the exactly embedded point (the Laurent part still
/// goes through an exact power).
template <class C>
C eval_laurent(const LaurentPolynomial& p, const RootOfUnity& z) {
  if (p.is_zero()) return C(0);
  if (p.coefficients().size() <= 32) {
    C acc(0);
    for (const auto& [e, c] : p.coefficients())
      acc += C(double(c)) * z.pow(e).template embed<C>();
    return acc;
  }
  const int lo = p.min_exponent(), hi = p.max_exponent();
  const C zc = z.template embed<C>();
  C acc(0);
  for (int e = hi; e >= lo; --e) {
    acc = acc * zc;
    auto c = p.coefficient(e);
    if (c != 0) acc += C(double(c));
  }
  return acc * z.pow(lo).template embed<C>();
}

}  // namespace torsionlab
