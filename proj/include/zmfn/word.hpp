#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zmfn/intlat.hpp"

namespace zmfn {

/// A freely reduced word over the alphabet x_1..x_rank. Letters are
/// stored as signed 1-based indices: +k is x_k, -k is its inverse.
class Word {
 public:
  explicit Word(int rank) : rank_(rank) {}
  static Word generator(int rank, int index, bool inverse = false);
  /// reduces the letter sequence
  static Word from_letters(int rank, const std::vector<int>& letters);

  int rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool trivial() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }

  Word operator*(const Word& o) const;
  Word inverse() const;
  Word power(long k) const;
  Word conjugate(const Word& c) const;  // c^{-1} * this * c

  /// this = p * core * p^{-1} with core cyclically reduced
  std::pair<Word, Word> cyclic_reduce() const;  // (core, p)

  Vec abelianization() const;  // exponent sums, length rank

  bool operator==(const Word& o) const = default;
  /// (length, letter sequence) order; letters ranked x1 < x1^-1 < x2 < ...
  std::strong_ordering operator<=>(const Word& o) const;

  std::string str() const;  // x/X token syntax, "1" when trivial

 private:
  int rank_;
  std::vector<int> letters_;
};

/// substitute: letter i of symbols is replaced by args[i-1]
Word substitute(const Word& symbols, const std::vector<Word>& args, int target_rank);

/// v = z^k with z not a proper power, k >= 1; v must be nontrivial
std::pair<Word, long> word_root(const Word& v);

/// z with v = z^d, if one exists (d = 0 demands v trivial)
std::optional<Word> dth_power_check(const Word& v, const Int& d);

}  // namespace zmfn
