#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "torsionlab/word.hpp"

namespace torsionlab {

/// Finitely presented group: named generators plus relators. Relators are
/// normalized to the form (lhs)(rhs)^-1 so every relation reads "word = 1"
/// and relation checks share one residual metric.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  const std::vector<std::string>& generators() const { return gens_; }
  const std::vector<Word>& relators() const { return relators_; }
  int generator_index(const std::string& name) const;  // -1 if absent

  void add_relator(const Word& w);

  /// Plain-text format:
  ///   gens: a,b,x,y
  ///   rel: x^-1 y x = y^-1
  /// one relator per line; either side may be empty (the identity).
  static Presentation parse(std::istream& in);
  static Presentation parse_string(const std::string& text);
  std::string serialize() const;

 private:
  std::vector<std::string> gens_;
  std::vector<Word> relators_;
};

// Presentations this library constructs for itself.

/// Twist-knot exterior group < a, b | w^n a = b w^n >, w = b a^-1 b^-1 a,
/// with both generators meridians (a is the preferred meridian).
Presentation twist_knot_presentation(int n);

/// (2, 2n+1) torus-knot exterior group < a, b | a^2 = b^(2n+1) >.
Presentation torus_knot_presentation(int n);

/// Klein bottle group < x, y | y x = x y^-1 >.
Presentation klein_bottle_presentation();

/// One-relator torus group < u, v | u v = v u >.
Presentation torus_presentation();

/// Fundamental group of the manifold obtained by 4-surgery along the n-twist
/// knot: < a, b, x, y | a^2 = b^(2n+1), x^-1 y x = y^-1, b^-n a = y^-1,
/// a^2 = y^-1 x^2 >. The words mu = b^-n a and h = a^2 are a meridian and a
/// regular fiber of the torus-knot piece; the last two relators glue them to
/// y^-1 and y^-1 x^2 on the Klein-bottle side.
Presentation surgery_presentation(int n);

/// The words mu and h above, in the generators of surgery_presentation.
Word surgery_meridian_word(int n);
Word surgery_fiber_word();

}  // namespace torsionlab
