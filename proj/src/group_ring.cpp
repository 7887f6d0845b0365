#include "torsionlab/group_ring.hpp"

namespace torsionlab {

GroupRingElement::GroupRingElement(const Word& w, std::int64_t coeff) {
  add_term(w, coeff);
}

void GroupRingElement::add_term(const Word& w, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r;
  for (const auto& [w, c] : terms_) r.terms_[w] = -c;
  return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  GroupRingElement r;
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) r.add_term(w1 * w2, c1 * c2);
  return r;
}

GroupRingElement word_times(const Word& w, const GroupRingElement& e) {
  GroupRingElement r;
  for (const auto& [u, c] : e.terms()) r.add_term(w * u, c);
  return r;
}

GroupRingElement fox_derivative(const Word& w, int gen) {
  GroupRingElement acc;
  Word prefix;
  for (const Letter& l : w.letters()) {
    if (l.gen == gen) {
      if (l.exp == 1)
        acc.add_term(prefix, 1);
      else
        acc.add_term(prefix * Word::generator(l.gen, -1), -1);
    }
    prefix = prefix * Word::generator(l.gen, l.exp);
  }
  return acc;
}

}  // namespace torsionlab
