#include "torsionlab/laurent.hpp"

#include <stdexcept>

namespace torsionlab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("LaurentPolynomial: coefficient overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("LaurentPolynomial: coefficient overflow in multiplication");
  return r;
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(std::int64_t constant) {
  if (constant != 0) coeffs_[0] = constant;
}

LaurentPolynomial LaurentPolynomial::monomial(std::int64_t coeff, int exponent) {
  LaurentPolynomial p;
  if (coeff != 0) p.coeffs_[exponent] = coeff;
  return p;
}

std::int64_t LaurentPolynomial::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? 0 : it->second;
}

void LaurentPolynomial::set_coefficient(int exponent, std::int64_t coeff) {
  if (coeff == 0)
    coeffs_.erase(exponent);
  else
    coeffs_[exponent] = coeff;
}

int LaurentPolynomial::min_exponent() const {
  if (coeffs_.empty()) throw std::domain_error("min_exponent of zero polynomial");
  return coeffs_.begin()->first;
}

int LaurentPolynomial::max_exponent() const {
  if (coeffs_.empty()) throw std::domain_error("max_exponent of zero polynomial");
  return coeffs_.rbegin()->first;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
  LaurentPolynomial r = *this;
  for (const auto& [e, c] : o.coeffs_) r.set_coefficient(e, checked_add(r.coefficient(e), c));
  return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
  return *this + (-o);
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r;
  for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
  return r;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
  LaurentPolynomial r;
  for (const auto& [e1, c1] : coeffs_)
    for (const auto& [e2, c2] : o.coeffs_)
      r.set_coefficient(e1 + e2, checked_add(r.coefficient(e1 + e2), checked_mul(c1, c2)));
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("LaurentPolynomial::pow: negative exponent");
  LaurentPolynomial r(1);
  for (int i = 0; i < k; ++i) r = r * (*this);
  return r;
}

LaurentPolynomial LaurentPolynomial::divide_exact(const LaurentPolynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("divide_exact: division by zero");
  if (is_zero()) return LaurentPolynomial();
  std::map<int, std::int64_t> rem = coeffs_;
  LaurentPolynomial quot;
  const int dlead = divisor.max_exponent();
  const std::int64_t dc = divisor.coefficients().rbegin()->second;
  const int dspan = divisor.max_exponent() - divisor.min_exponent();
  while (!rem.empty() && rem.rbegin()->first - rem.begin()->first >= dspan) {
    const auto [e, c] = *rem.rbegin();
    if (c % dc != 0) throw std::domain_error("divide_exact: inexact division");
    const std::int64_t q = c / dc;
    const int shift = e - dlead;
    quot.coeffs_[shift] = q;  // leading exponents strictly decrease
    for (const auto& [de, dcoef] : divisor.coeffs_) {
      const int te = de + shift;
      auto it = rem.find(te);
      std::int64_t nv;
      if (__builtin_sub_overflow(it == rem.end() ? 0 : it->second, checked_mul(q, dcoef),
                                 &nv))
        throw std::overflow_error("divide_exact: coefficient overflow");
      if (nv == 0) {
        if (it != rem.end()) rem.erase(it);
      } else if (it != rem.end()) {
        it->second = nv;
      } else {
        rem.emplace(te, nv);
      }
    }
  }
  if (!rem.empty()) throw std::domain_error("divide_exact: nonzero remainder");
  return quot;
}

std::string LaurentPolynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto [e, c] = *it;
    if (!s.empty()) s += c >= 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || e == 0) s += std::to_string(a);
    if (e != 0) {
      if (a != 1) s += "*";
      s += var;
      if (e != 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace torsionlab
