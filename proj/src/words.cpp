#include "chinu/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace chinu {

Word Word::reduced(size_t ngens, const std::vector<Letter>& letters) {
  Word w(ngens);
  w.letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0 || static_cast<size_t>(letter_gen(l)) >= ngens)
      throw DomainError("letter references unknown generator index " + std::to_string(l));
    if (!w.letters_.empty() && w.letters_.back() == -l)
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

Word Word::letter(size_t ngens, int32_t gen, bool inverted) {
  if (gen < 0 || static_cast<size_t>(gen) >= ngens)
    throw DomainError("generator index out of range");
  Word w(ngens);
  w.letters_.push_back(inverted ? -(gen + 1) : gen + 1);
  return w;
}

Word Word::operator*(const Word& rhs) const {
  if (ngens_ != rhs.ngens_)
    throw DomainError("alphabet mismatch in word product");
  Word w(ngens_);
  w.letters_ = letters_;
  for (Letter l : rhs.letters_) {
    if (!w.letters_.empty() && w.letters_.back() == -l)
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

Word Word::inverse() const {
  Word w(ngens_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

Word Word::pow(int64_t k) const {
  Word base = k < 0 ? inverse() : *this;
  int64_t reps = k < 0 ? -k : k;
  Word out(ngens_);
  for (int64_t i = 0; i < reps; ++i) out = out * base;
  return out;
}

bool Word::shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int32_t ca = letter_col(a.letters_[i]);
    int32_t cb = letter_col(b.letters_[i]);
    if (ca != cb) return ca < cb;
  }
  return false;
}

std::string Word::str(const std::vector<std::string>& names) const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  size_t i = 0;
  while (i < letters_.size()) {
    Letter l = letters_[i];
    size_t j = i;
    while (j < letters_.size() && letters_[j] == l) ++j;
    int64_t e = static_cast<int64_t>(j - i) * (l < 0 ? -1 : 1);
    os << names.at(letter_gen(l));
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

Word conjugate(const Word& u, const Word& t) {
  if (u.ngens() != t.ngens())
    throw DomainError("alphabet mismatch in conjugation");
  return t.inverse() * u * t;
}

Word commutator(const Word& u, const Word& v) {
  if (u.ngens() != v.ngens())
    throw DomainError("alphabet mismatch in commutator");
  return u.inverse() * v.inverse() * u * v;
}

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Character scanner with 1-based line/column tracking; '#' comments out the
// rest of a line.
class Scanner {
 public:
  explicit Scanner(const std::string& text) : s_(text) {}

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  int line() const { return line_; }
  int col() const { return col_; }

  char get() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  struct Mark {
    size_t pos;
    int line, col;
  };
  Mark save() const { return {pos_, line_, col_}; }
  void restore(const Mark& m) {
    pos_ = m.pos;
    line_ = m.line;
    col_ = m.col;
  }

  void skip_space_and_comments(bool stop_at_newline = false) {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (c == '\n') {
        if (stop_at_newline) return;
        get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

 private:
  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class WordParser {
 public:
  WordParser(Scanner& sc, const std::vector<std::string>& names) : sc_(sc), names_(names) {}

  // Parses atoms until whitespace / a stop character at nesting depth zero.
  Word parse(size_t ngens) {
    Word w(ngens);
    bool any = false;
    while (!sc_.eof()) {
      char c = sc_.peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == ',' || c == ']' || c == ')')
        break;
      w = w * parse_atom(ngens);
      any = true;
    }
    if (!any) sc_.fail("expected a word");
    return w;
  }

 private:
  Word parse_atom(size_t ngens) {
    char c = sc_.peek();
    Word base(ngens);
    if (c == '[') {
      sc_.get();
      sc_.skip_space_and_comments();
      Word u = parse(ngens);
      sc_.skip_space_and_comments();
      if (sc_.peek() != ',') sc_.fail("expected ',' in commutator");
      sc_.get();
      sc_.skip_space_and_comments();
      Word v = parse(ngens);
      sc_.skip_space_and_comments();
      if (sc_.peek() != ']') sc_.fail("expected ']' closing commutator");
      sc_.get();
      base = commutator(u, v);
    } else if (c == '(') {
      sc_.get();
      sc_.skip_space_and_comments();
      base = parse(ngens);
      sc_.skip_space_and_comments();
      if (sc_.peek() != ')') sc_.fail("expected ')'");
      sc_.get();
    } else {
      base = parse_name(ngens);
    }
    if (!sc_.eof() && sc_.peek() == '^') {
      sc_.get();
      base = base.pow(parse_int());
    }
    return base;
  }

  // Longest declared-name match at the current position.
  Word parse_name(size_t ngens) {
    auto mark = sc_.save();
    std::string run;
    while (!sc_.eof()) {
      char c = sc_.peek();
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
      run.push_back(sc_.get());
    }
    int best = -1;
    size_t best_len = 0;
    for (size_t i = 0; i < names_.size(); ++i) {
      const std::string& n = names_[i];
      if (n.size() > best_len && n.size() <= run.size() && run.compare(0, n.size(), n) == 0) {
        best = static_cast<int>(i);
        best_len = n.size();
      }
    }
    sc_.restore(mark);
    if (best == -1)
      sc_.fail("undeclared generator '" + (run.empty() ? std::string(1, sc_.peek()) : run) + "'");
    for (size_t i = 0; i < best_len; ++i) sc_.get();
    return Word::letter(ngens, best);
  }

  int64_t parse_int() {
    bool neg = false;
    if (sc_.peek() == '-') {
      sc_.get();
      neg = true;
    }
    if (!std::isdigit(static_cast<unsigned char>(sc_.peek()))) sc_.fail("expected an exponent");
    int64_t v = 0;
    while (!sc_.eof() && std::isdigit(static_cast<unsigned char>(sc_.peek()))) {
      v = v * 10 + (sc_.get() - '0');
      if (v > 1000000) sc_.fail("exponent too large");
    }
    return neg ? -v : v;
  }

  Scanner& sc_;
  const std::vector<std::string>& names_;
};

void expect_keyword(Scanner& sc, const std::string& kw) {
  for (char c : kw) {
    if (sc.eof() || sc.peek() != c) sc.fail("expected '" + kw + "'");
    sc.get();
  }
}

}  // namespace

void Presentation::validate() const {
  if (generators.empty()) throw DomainError("presentation has an empty generator list");
  for (size_t i = 0; i < generators.size(); ++i) {
    if (!valid_name(generators[i]))
      throw DomainError("invalid generator name '" + generators[i] + "'");
    for (size_t j = i + 1; j < generators.size(); ++j)
      if (generators[i] == generators[j])
        throw DomainError("duplicate generator name '" + generators[i] + "'");
  }
  for (const Word& r : relators)
    if (r.ngens() != ngens())
      throw DomainError("relator over a different alphabet");
}

std::string Presentation::str() const {
  std::ostringstream os;
  os << "generators:";
  for (const auto& g : generators) os << ' ' << g;
  os << "\nrelators:";
  for (const Word& r : relators) os << ' ' << r.str(generators);
  os << '\n';
  return os.str();
}

Presentation parse_presentation(const std::string& text) {
  Scanner sc(text);
  sc.skip_space_and_comments();
  expect_keyword(sc, "generators:");
  Presentation p;
  while (true) {
    sc.skip_space_and_comments(/*stop_at_newline=*/true);
    if (sc.eof() || sc.peek() == '\n') break;
    std::string name;
    int l = sc.line(), c = sc.col();
    while (!sc.eof() && !std::isspace(static_cast<unsigned char>(sc.peek())) && sc.peek() != '#')
      name.push_back(sc.get());
    if (!valid_name(name)) throw ParseError(l, c, "invalid generator name '" + name + "'");
    p.generators.push_back(name);
  }
  if (p.generators.empty()) sc.fail("empty generator list");
  sc.skip_space_and_comments();
  if (!sc.eof()) {
    expect_keyword(sc, "relators:");
    WordParser wp(sc, p.generators);
    while (true) {
      sc.skip_space_and_comments();
      if (sc.eof()) break;
      Word w = wp.parse(p.ngens());
      if (!sc.eof() && !std::isspace(static_cast<unsigned char>(sc.peek())) && sc.peek() != '#')
        sc.fail(std::string("unexpected character '") + sc.peek() + "'");
      if (!w.empty()) p.relators.push_back(w);
    }
  }
  p.validate();
  return p;
}

}  // namespace chinu
