#include "zmfn/word.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace zmfn {

namespace {

void check_letter(int rank, int letter) {
  int a = std::abs(letter);
  if (a < 1 || a > rank) throw std::invalid_argument("letter out of range");
}

// rank a letter so that x1 < X1 < x2 < X2 < ...
int letter_key(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

}  // namespace

Word Word::generator(int rank, int index, bool inverse) {
  Word w(rank);
  check_letter(rank, index);
  w.letters_.push_back(inverse ? -index : index);
  return w;
}

Word Word::from_letters(int rank, const std::vector<int>& letters) {
  Word w(rank);
  for (int l : letters) {
    check_letter(rank, l);
    if (!w.letters_.empty() && w.letters_.back() == -l)
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

Word Word::operator*(const Word& o) const {
  if (rank_ != o.rank_) throw std::invalid_argument("word product: rank mismatch");
  Word r(rank_);
  r.letters_ = letters_;
  for (int l : o.letters_) {
    if (!r.letters_.empty() && r.letters_.back() == -l)
      r.letters_.pop_back();
    else
      r.letters_.push_back(l);
  }
  return r;
}

Word Word::inverse() const {
  Word r(rank_);
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(-*it);
  return r;
}

Word Word::power(long k) const {
  Word base = k < 0 ? inverse() : *this;
  long reps = k < 0 ? -k : k;
  Word r(rank_);
  for (long i = 0; i < reps; ++i) r = r * base;
  return r;
}

Word Word::conjugate(const Word& c) const { return c.inverse() * *this * c; }

std::pair<Word, Word> Word::cyclic_reduce() const {
  std::size_t i = 0, j = letters_.size();
  while (j > i + 1 && letters_[i] == -letters_[j - 1]) {
    ++i;
    --j;
  }
  Word core(rank_), p(rank_);
  core.letters_.assign(letters_.begin() + i, letters_.begin() + j);
  p.letters_.assign(letters_.begin(), letters_.begin() + i);
  return {core, p};
}

Vec Word::abelianization() const {
  Vec v(rank_, Int(0));
  for (int l : letters_) {
    if (l > 0)
      v[l - 1] += 1;
    else
      v[-l - 1] -= 1;
  }
  return v;
}

std::strong_ordering Word::operator<=>(const Word& o) const {
  if (letters_.size() != o.letters_.size())
    return letters_.size() <=> o.letters_.size();
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    int a = letter_key(letters_[i]), b = letter_key(o.letters_[i]);
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << " ";
    int l = letters_[i];
    if (l > 0)
      os << "x" << l;
    else
      os << "X" << -l;
  }
  return os.str();
}

Word substitute(const Word& symbols, const std::vector<Word>& args, int target_rank) {
  Word r(target_rank);
  for (int l : symbols.letters()) {
    std::size_t idx = static_cast<std::size_t>(std::abs(l)) - 1;
    if (idx >= args.size()) throw std::invalid_argument("substitute: symbol out of range");
    r = r * (l > 0 ? args[idx] : args[idx].inverse());
  }
  return r;
}

std::pair<Word, long> word_root(const Word& v) {
  if (v.trivial()) throw std::invalid_argument("word_root of the trivial word");
  auto [core, p] = v.cyclic_reduce();
  const auto& ls = core.letters();
  std::size_t n = ls.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i)
      if (ls[i] != ls[i - d]) periodic = false;
    if (periodic) {
      Word block(v.rank());
      block = Word::from_letters(v.rank(), std::vector<int>(ls.begin(), ls.begin() + d));
      return {p * block * p.inverse(), static_cast<long>(n / d)};
    }
  }
  return {v, 1};  // unreachable, d = n always periodic
}

std::optional<Word> dth_power_check(const Word& v, const Int& d) {
  if (v.trivial()) {
    if (d == 0) return Word(v.rank());
    return Word(v.rank());  // 1 = 1^d
  }
  if (d == 0) return std::nullopt;
  auto [z, k] = word_root(v);
  Int dd = abs(d);
  if (!dd.fits_slong_p()) return std::nullopt;  // |d| > |v| can never divide k <= |v|
  long dl = dd.get_si();
  if (dl == 0 || k % dl != 0) return std::nullopt;
  Word w = z.power(k / dl);
  if (d < 0) w = w.inverse();
  return w;
}

}  // namespace zmfn
