// Words over the alphabet {1..d}: they index the Fock basis e_w and the
// noncommutative monomials A^w. Letters are stored left to right, so
// e_w = e_{w[0]} (x) e_{w[1]} (x) ... and l_i^* e_w = e_{iw}.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qfock {

using Letter = std::uint8_t;

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters);
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word repeat(int letter, std::size_t count);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t p) const { return letters_[p]; }
  std::span<const Letter> letters() const { return letters_; }

  /// i followed by this word.
  Word prepend(int letter) const;
  /// This word followed by the letter.
  Word append(int letter) const;
  /// Copy with position p removed.
  Word erase(std::size_t p) const;
  Word reversed() const;
  Word slice(std::size_t begin, std::size_t end) const;
  friend Word operator+(const Word& a, const Word& b);

  /// Position in the lexicographic basis of level |w| (letters 1..d).
  std::size_t index(int d) const;
  static Word from_index(std::size_t index, std::size_t length, int d);
  /// All d^n words of length n in index order.
  static std::vector<Word> all(int d, std::size_t n);
  /// All words of length <= n, shortest first.
  static std::vector<Word> all_up_to(int d, std::size_t n);

  /// "e0" style: "0" for the empty word, otherwise the letters ("121").
  std::string to_string() const;

  /// Shortlex order: length first, then lexicographic.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  std::vector<Letter> letters_;
};

}  // namespace qfock
