#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chinu/errors.hpp"

namespace chinu {

/// A letter is a signed generator reference: +(i+1) for generator i, -(i+1)
/// for its inverse. 0 is never a letter.
using Letter = int32_t;

inline int32_t letter_gen(Letter l) { return (l > 0 ? l : -l) - 1; }
inline bool letter_inverted(Letter l) { return l < 0; }

/// Column index of a letter in a coset table / action table with paired
/// columns (2i = generator i, 2i+1 = its inverse).
inline int32_t letter_col(Letter l) { return 2 * letter_gen(l) + (l < 0 ? 1 : 0); }
inline Letter col_letter(int32_t col) { return (col % 2 == 0) ? col / 2 + 1 : -(col / 2 + 1); }

/// Freely reduced word over a fixed alphabet of `ngens` generators.
///
/// Words are immutable after construction and always reduced: no adjacent
/// pair g g^-1 survives. Equality is structural equality of the reduced
/// letter sequences (free-group equality; group-element equality lives in
/// the permutation layer).
class Word {
 public:
  Word() = default;
  explicit Word(size_t ngens) : ngens_(ngens) {}

  /// Builds the free reduction of `letters`. Throws DomainError if a letter
  /// references a generator outside [0, ngens).
  static Word reduced(size_t ngens, const std::vector<Letter>& letters);

  /// Single-letter convenience: generator `gen` to the power sign.
  static Word letter(size_t ngens, int32_t gen, bool inverted = false);

  size_t ngens() const { return ngens_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  size_t size() const { return letters_.size(); }

  Word operator*(const Word& rhs) const;
  Word inverse() const;
  Word pow(int64_t k) const;

  bool operator==(const Word& rhs) const { return letters_ == rhs.letters_; }
  bool operator!=(const Word& rhs) const { return !(*this == rhs); }
  bool operator<(const Word& rhs) const { return letters_ < rhs.letters_; }

  /// Shortlex comparison with the letter order a < a^-1 < b < b^-1 < ...
  static bool shortlex_less(const Word& a, const Word& b);

  /// Renders with exponent collection, e.g. "a^2b^-1"; empty word is "1".
  std::string str(const std::vector<std::string>& names) const;

 private:
  size_t ngens_ = 0;
  std::vector<Letter> letters_;
};

/// u^t = t^-1 u t. Throws DomainError when alphabets differ.
Word conjugate(const Word& u, const Word& t);

/// [u, v] = u^-1 v^-1 u v. Throws DomainError when alphabets differ.
Word commutator(const Word& u, const Word& v);

/// Generator list plus relator words; the common currency for enumeration
/// and for the generated chi/nu presentations.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  size_t ngens() const { return generators.size(); }

  /// Uniqueness/charset of names, relator alphabet sizes, reducedness.
  void validate() const;

  /// Serializes to the line-oriented text format; parse() round-trips.
  std::string str() const;
};

/// Parses the presentation text format:
///
///   generators: <name> <name> ...
///   relators: <word> <word> ...
///
/// where a word is a juxtaposition of atoms,
/// atom := name | name^<int> | [word,word] | (word)^<int>,
/// whitespace separates relators and `#` starts a comment. Relators may
/// continue over several lines after the `relators:` header.
Presentation parse_presentation(const std::string& text);

}  // namespace chinu
