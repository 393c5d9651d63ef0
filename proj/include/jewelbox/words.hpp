#pragma once

#include <compare>
#include <string>
#include <vector>

#include "jewelbox/errors.hpp"

namespace jewelbox::freegroup {

/// A letter is a signed generator index: +i for x_i, -i for x_i^{-1} (1-based).
using Letter = int;

/// Letter order used everywhere: magnitude first, then sign (x_i < x_i^{-1}).
/// Serialized as 'a'..'z' for generators and 'A'..'Z' for inverses.
int letter_rank(Letter l);
bool letter_less(Letter a, Letter b);
char letter_to_char(Letter l);
Letter letter_from_char(char c);

/// Freely reduced word in F_n.
struct Word {
  int rank = 0;
  std::vector<Letter> letters;

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  Word inverse() const;
  std::string str() const;

  bool operator==(const Word&) const = default;
};

/// Cyclically reduced conjugacy-class representative: the shortlex-least
/// cyclic rotation.
struct CyclicWord {
  int rank = 0;
  std::vector<Letter> letters;  // canonical rotation

  int length() const { return static_cast<int>(letters.size()); }
  std::string str() const;

  bool operator==(const CyclicWord&) const = default;
  std::strong_ordering operator<=>(const CyclicWord& o) const;
};

/// Free reduction of a raw letter sequence. Throws index_out_of_range when a
/// letter is 0 or exceeds the rank in magnitude.
Word reduce(const std::vector<Letter>& raw, int rank);

Word parse_word(const std::string& s, int rank);

/// Concatenate and reduce.
Word concat(const Word& a, const Word& b);

/// Canonical conjugacy-class form: cyclically reduce, then take the
/// shortlex-least rotation.
CyclicWord cyclic_canonical(const Word& w);
CyclicWord cyclic_canonical(const std::vector<Letter>& raw, int rank);

/// Shortlex order on canonical forms (length first, then letter order).
bool shortlex_less(const CyclicWord& a, const CyclicWord& b);

/// A marking of a rose: images of the standard generators. Valid iff the
/// induced endomorphism is an automorphism of F_n.
struct Marking {
  int rank = 0;
  std::vector<Word> images;  // images[i] = image of x_{i+1}

  static Marking identity(int rank);
  Word apply(const Word& w) const;
  Marking compose(const Marking& inner) const;  // w -> this(inner(w))
  std::string str() const;
  bool operator==(const Marking&) const = default;
};

Word apply_marking(const Marking& g, const Word& w);

/// Certifies that the images form a basis of F_n by Nielsen-reducing the
/// tuple to single letters. Sound (never accepts a non-basis); uses a bounded
/// search over length-preserving moves to escape plateaus, so a `false`
/// answer for a genuine automorphism is possible only past that bound.
bool is_automorphism(const Marking& g);

/// Conjugacy classes of the forms x_i, x_i x_j, x_i x_j^{-1} (i != j),
/// deduplicated, in shortlex order. Requires rank >= 2.
std::vector<CyclicWord> generate_W0(int rank);

/// All conjugacy classes of cyclically reduced length <= max_len, in shortlex
/// order on canonical forms. Prefix-stable as max_len grows.
std::vector<CyclicWord> enumerate_classes(int rank, int max_len);

/// Classes of exactly the given length, shortlex-ordered (the length-L slice
/// of enumerate_classes).
std::vector<CyclicWord> enumerate_classes_of_length(int rank, int len);

}  // namespace jewelbox::freegroup
