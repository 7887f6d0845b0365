#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace torsionlab {

/// A letter is a signed generator occurrence: generator index + exponent +-1.
struct Letter {
  int gen;
  int exp;  // +1 or -1
  bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
  auto operator<=>(const Letter& o) const = default;
};

/// Freely reduced word in a free group; reduction happens at construction so
/// words are canonical keys for group-ring maps.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word identity() { return Word(); }
  static Word generator(int gen, int exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  int length() const { return int(letters_.size()); }

  Word operator*(const Word& o) const;
  Word inverse() const;
  Word pow(int k) const;  // negative k allowed

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  auto operator<=>(const Word& o) const { return letters_ <=> o.letters_; }

  /// Largest generator index mentioned, or -1 for the identity.
  int max_generator() const;

  std::string to_string(const std::vector<std::string>& gen_names) const;

 private:
  std::vector<Letter> letters_;
};

}  // namespace torsionlab
