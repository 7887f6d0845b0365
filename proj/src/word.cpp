#include "torsionlab/word.hpp"

#include <stdexcept>

namespace torsionlab {

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
    out.pop_back();
  else
    out.push_back(l);
}

}  // namespace

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.exp != 1 && l.exp != -1)
      throw std::invalid_argument("Word: letter exponent must be +-1");
    if (l.gen < 0) throw std::invalid_argument("Word: negative generator index");
    push_reduced(letters_, l);
  }
}

Word Word::generator(int gen, int exp) { return Word({Letter{gen, exp}}); }

Word Word::operator*(const Word& o) const {
  std::vector<Letter> out = letters_;
  for (const Letter& l : o.letters_) push_reduced(out, l);
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(Letter{it->gen, -it->exp});
  return w;
}

Word Word::pow(int k) const {
  Word base = k >= 0 ? *this : inverse();
  int reps = k >= 0 ? k : -k;
  Word r;
  for (int i = 0; i < reps; ++i) r = r * base;
  return r;
}

int Word::max_generator() const {
  int m = -1;
  for (const Letter& l : letters_)
    if (l.gen > m) m = l.gen;
  return m;
}

std::string Word::to_string(const std::vector<std::string>& gen_names) const {
  if (letters_.empty()) return "1";
  std::string s;
  for (const Letter& l : letters_) {
    if (!s.empty()) s += " ";
    s += l.gen < int(gen_names.size()) ? gen_names[l.gen] : "g" + std::to_string(l.gen);
    if (l.exp < 0) s += "^-1";
  }
  return s;
}

}  // namespace torsionlab
