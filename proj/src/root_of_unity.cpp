#include "torsionlab/root_of_unity.hpp"

#include <numeric>
#include <stdexcept>

namespace torsionlab {

namespace {

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

RootOfUnity::RootOfUnity(std::int64_t numer, std::int64_t denom) {
  if (denom <= 0) throw std::invalid_argument("RootOfUnity: denom must be positive");
  const std::int64_t g = std::gcd(numer < 0 ? -numer : numer, denom);
  if (g > 1) {
    numer /= g;
    denom /= g;
  }
  // adding multiples of 2*denom cannot introduce a new common factor
  numer = positive_mod(numer, 2 * denom);
  if (numer == 0) denom = 1;
  numer_ = numer;
  denom_ = denom;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  std::int64_t l = std::lcm(denom_, o.denom_);
  return RootOfUnity(numer_ * (l / denom_) + o.numer_ * (l / o.denom_), l);
}

RootOfUnity RootOfUnity::inverse() const { return RootOfUnity(-numer_, denom_); }

RootOfUnity RootOfUnity::pow(std::int64_t k) const {
  // numer_ < 2*denom_, so numer_*k fits i64 for |k| well past 1e12 at the
  // denominators this library produces
  return RootOfUnity(numer_ * k, denom_);
}

std::int64_t RootOfUnity::order() const {
  if (numer_ == 0) return 1;
  // exp(i*pi*a/b) with gcd(a,b)=1 has order 2b/gcd(a,2): 2b for odd a, b for even a
  return numer_ % 2 == 0 ? denom_ : 2 * denom_;
}

std::string RootOfUnity::to_string() const {
  if (is_one()) return "1";
  if (is_minus_one()) return "-1";
  return "exp(i*pi*" + std::to_string(numer_) + "/" + std::to_string(denom_) + ")";
}

}  // namespace torsionlab
