#include "qfock/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfock {

Word::Word(std::initializer_list<int> letters) {
  letters_.reserve(letters.size());
  for (int l : letters) {
    if (l < 1 || l > 255) throw std::invalid_argument("letter out of range");
    letters_.push_back(static_cast<Letter>(l));
  }
}

Word Word::repeat(int letter, std::size_t count) {
  return Word(std::vector<Letter>(count, static_cast<Letter>(letter)));
}

Word Word::prepend(int letter) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() + 1);
  out.push_back(static_cast<Letter>(letter));
  out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out));
}

Word Word::append(int letter) const {
  std::vector<Letter> out = letters_;
  out.push_back(static_cast<Letter>(letter));
  return Word(std::move(out));
}

Word Word::erase(std::size_t p) const {
  std::vector<Letter> out = letters_;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(p));
  return Word(std::move(out));
}

Word Word::reversed() const { return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend())); }

Word Word::slice(std::size_t begin, std::size_t end) const {
  return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(begin),
                                  letters_.begin() + static_cast<std::ptrdiff_t>(end)));
}

Word operator+(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

std::size_t Word::index(int d) const {
  std::size_t idx = 0;
  for (Letter l : letters_) idx = idx * static_cast<std::size_t>(d) + (l - 1u);
  return idx;
}

Word Word::from_index(std::size_t index, std::size_t length, int d) {
  std::vector<Letter> out(length);
  for (std::size_t p = length; p-- > 0;) {
    out[p] = static_cast<Letter>(index % static_cast<std::size_t>(d) + 1);
    index /= static_cast<std::size_t>(d);
  }
  return Word(std::move(out));
}

std::vector<Word> Word::all(int d, std::size_t n) {
  std::size_t count = 1;
  for (std::size_t k = 0; k < n; ++k) count *= static_cast<std::size_t>(d);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) out.push_back(from_index(idx, n, d));
  return out;
}

std::vector<Word> Word::all_up_to(int d, std::size_t n) {
  std::vector<Word> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto level = all(d, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "0";
  std::string s;
  bool wide = std::any_of(letters_.begin(), letters_.end(), [](Letter l) { return l > 9; });
  for (std::size_t p = 0; p < letters_.size(); ++p) {
    if (wide && p) s.push_back('.');
    s += std::to_string(letters_[p]);
  }
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
                                                b.letters_.end());
}

}  // namespace qfock
