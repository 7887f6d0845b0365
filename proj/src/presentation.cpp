#include "torsionlab/presentation.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : gens_(std::move(generators)) {
  for (const Word& w : relators) add_relator(w);
}

int Presentation::generator_index(const std::string& name) const {
  for (int i = 0; i < int(gens_.size()); ++i)
    if (gens_[i] == name) return i;
  return -1;
}

void Presentation::add_relator(const Word& w) {
  if (w.max_generator() >= int(gens_.size()))
    throw std::invalid_argument("Presentation: relator references an undeclared generator");
  relators_.push_back(w);
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Word parse_side(const std::string& text, const Presentation& p) {
  std::istringstream in(text);
  std::string tok;
  std::vector<Letter> letters;
  while (in >> tok) {
    int exp = 1;
    if (auto pos = tok.find('^'); pos != std::string::npos) {
      std::string e = tok.substr(pos + 1);
      if (e != "-1" && e != "1")
        throw std::invalid_argument("presentation: unsupported exponent '" + e + "'");
      if (e == "-1") exp = -1;
      tok = tok.substr(0, pos);
    }
    int g = p.generator_index(tok);
    if (g < 0) throw std::invalid_argument("presentation: unknown generator '" + tok + "'");
    letters.push_back(Letter{g, exp});
  }
  return Word(letters);
}

}  // namespace

Presentation Presentation::parse(std::istream& in) {
  Presentation p;
  std::string line;
  bool have_gens = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("presentation line " + std::to_string(lineno) + ": " + msg);
    };
    if (line.rfind("gens:", 0) == 0) {
      if (have_gens) fail("duplicate gens line");
      std::istringstream gs(line.substr(5));
      std::string name;
      std::vector<std::string> names;
      while (std::getline(gs, name, ',')) {
        name = trim(name);
        if (name.empty()) fail("empty generator name");
        names.push_back(name);
      }
      if (names.empty()) fail("no generators declared");
      p.gens_ = names;
      have_gens = true;
    } else if (line.rfind("rel:", 0) == 0) {
      if (!have_gens) fail("rel before gens");
      std::string body = line.substr(4);
      auto eq = body.find('=');
      Word lhs, rhs;
      if (eq == std::string::npos) {
        lhs = parse_side(body, p);
      } else {
        lhs = parse_side(body.substr(0, eq), p);
        rhs = parse_side(body.substr(eq + 1), p);
      }
      p.add_relator(lhs * rhs.inverse());
    } else {
      fail("expected 'gens:' or 'rel:'");
    }
  }
  if (!have_gens) throw std::invalid_argument("presentation: missing gens line");
  return p;
}

Presentation Presentation::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

std::string Presentation::serialize() const {
  std::string out = "gens: ";
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ",";
    out += gens_[i];
  }
  out += "\n";
  for (const Word& r : relators_) out += "rel: " + r.to_string(gens_) + " =\n";
  return out;
}

Presentation twist_knot_presentation(int n) {
  if (n == 0) throw std::invalid_argument("twist_knot_presentation: n = 0 is excluded");
  Word a = Word::generator(0), b = Word::generator(1);
  Word w = b * a.inverse() * b.inverse() * a;
  Word wn = w.pow(n);
  // a w^n = w^n b, both generators meridians
  return Presentation({"a", "b"}, {a * wn * (wn * b).inverse()});
}

Presentation torus_knot_presentation(int n) {
  int q = 2 * n + 1;
  if (q == 1 || q == -1)
    throw std::invalid_argument("torus_knot_presentation: |2n+1| must exceed 1");
  Word a = Word::generator(0), b = Word::generator(1);
  return Presentation({"a", "b"}, {a.pow(2) * b.pow(q).inverse()});
}

Presentation klein_bottle_presentation() {
  Word x = Word::generator(0), y = Word::generator(1);
  // y x = x y^-1
  return Presentation({"x", "y"}, {y * x * (x * y.inverse()).inverse()});
}

Presentation torus_presentation() {
  Word u = Word::generator(0), v = Word::generator(1);
  return Presentation({"u", "v"}, {u * v * (v * u).inverse()});
}

Presentation surgery_presentation(int n) {
  if (n == 0 || n == -1)
    throw std::invalid_argument("surgery_presentation: n in {0, -1} is excluded");
  Word a = Word::generator(0), b = Word::generator(1);
  Word x = Word::generator(2), y = Word::generator(3);
  Word mu = b.pow(-n) * a;
  std::vector<Word> rels;
  rels.push_back(a.pow(2) * b.pow(2 * n + 1).inverse());          // a^2 = b^(2n+1)
  rels.push_back(x.inverse() * y * x * y);                        // x^-1 y x = y^-1
  rels.push_back(mu * y);                                         // mu = y^-1
  rels.push_back(a.pow(2) * (y.inverse() * x.pow(2)).inverse());  // a^2 = y^-1 x^2
  return Presentation({"a", "b", "x", "y"}, rels);
}

Word surgery_meridian_word(int n) {
  Word a = Word::generator(0), b = Word::generator(1);
  return b.pow(-n) * a;
}

Word surgery_fiber_word() { return Word::generator(0).pow(2); }

}  // namespace torsionlab
