#pragma once

#include <cstdint>
#include <map>

#include "torsionlab/word.hpp"

namespace torsionlab {

/// Integer group-ring element: finite formal sum of reduced words. Carrier
/// for Fox derivatives feeding twisted boundary maps.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(const Word& w, std::int64_t coeff = 1);

  static GroupRingElement zero() { return GroupRingElement(); }
  static GroupRingElement one() { return GroupRingElement(Word::identity()); }

  const std::map<Word, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  GroupRingElement operator*(const GroupRingElement& o) const;  // convolution
  bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }

  void add_term(const Word& w, std::int64_t coeff);

 private:
  std::map<Word, std::int64_t> terms_;
};

/// Left multiplication by a single word.
GroupRingElement word_times(const Word& w, const GroupRingElement& e);

/// Fox free derivative d(w)/d(gen). Satisfies d(g)/d(g) = 1,
/// d(g^-1)/d(g) = -g^-1, and the product rule d(uv) = d(u) + u d(v).
GroupRingElement fox_derivative(const Word& w, int gen);

}  // namespace torsionlab
