#include "zmfn/nielsen.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace zmfn {

namespace {

// replace every occurrence of symbol +/-pos in w by repl^{+/-1}
Word replace_symbol(const Word& w, int pos, const Word& repl) {
  Word r(w.rank());
  for (int l : w.letters()) {
    if (l == pos)
      r = r * repl;
    else if (l == -pos)
      r = r * repl.inverse();
    else
      r = r * Word::generator(w.rank(), std::abs(l), l < 0);
  }
  return r;
}

Word symbol_word(int rank, std::initializer_list<int> letters) {
  return Word::from_letters(rank, std::vector<int>(letters));
}

int letter_key(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

// Well-order driving the reduction: length first, then the sorted pair
// of half-prefixes of the word and of its inverse. Ordering equal-length
// words by their halves (rather than whole-word lexicographic order) is
// what makes the peak case fire: when a product cancels half of each
// factor, one of the one-sided multiplications strictly decreases some
// element's key even though no length drops.
struct ReductionKey {
  std::size_t len;
  std::vector<int> lo, hi;

  bool operator<(const ReductionKey& o) const {
    if (len != o.len) return len < o.len;
    if (lo != o.lo) return lo < o.lo;
    return hi < o.hi;
  }
};

ReductionKey key_of(const Word& w) {
  ReductionKey k;
  k.len = w.length();
  std::size_t half = (k.len + 1) / 2;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < half; ++i) k.lo.push_back(letter_key(ls[i]));
  for (std::size_t i = 0; i < half; ++i)
    k.hi.push_back(letter_key(-ls[k.len - 1 - i]));
  if (k.hi < k.lo) std::swap(k.lo, k.hi);
  return k;
}

bool plainlex_less(const Word& a, const Word& b) { return a < b; }

}  // namespace

NielsenResult nielsen_reduce(const std::vector<Word>& tuple, int rank) {
  const int p = static_cast<int>(tuple.size());
  std::vector<Word> w = tuple;
  std::vector<Word> eta;  // over rank p, expression of w[j] in the inputs
  std::vector<Word> nu;   // over rank p, expression of input i in current w
  for (int i = 0; i < p; ++i) {
    if (tuple[i].rank() != rank) throw std::invalid_argument("nielsen_reduce: rank mismatch");
    eta.push_back(Word::generator(std::max(p, 1), i + 1));
    nu.push_back(Word::generator(std::max(p, 1), i + 1));
  }
  std::vector<ReductionKey> keys;
  for (int i = 0; i < p; ++i) keys.push_back(key_of(w[i]));

  // apply one-sided multiplications while some entry's key strictly drops
  bool changed = p > 0;
  while (changed) {
    changed = false;
    for (int j = 0; j < p && !changed; ++j) {
      if (w[j].trivial()) continue;
      for (int i = 0; i < p && !changed; ++i) {
        if (i == j || w[i].trivial()) continue;
        for (int sign = 0; sign < 2 && !changed; ++sign) {
          Word wi = sign ? w[i].inverse() : w[i];
          int isym = sign ? -(i + 1) : (i + 1);
          Word left = wi * w[j];
          if (key_of(left) < keys[j]) {
            // old w_j = w_i^{-sign} * new, so symbol j becomes (i^{-sign}, j)
            for (int k = 0; k < p; ++k)
              nu[k] = replace_symbol(nu[k], j + 1, symbol_word(std::max(p, 1), {-isym, j + 1}));
            w[j] = left;
            keys[j] = key_of(left);
            eta[j] = (sign ? eta[i].inverse() : eta[i]) * eta[j];
            changed = true;
            break;
          }
          Word right = w[j] * wi;
          if (key_of(right) < keys[j]) {
            for (int k = 0; k < p; ++k)
              nu[k] = replace_symbol(nu[k], j + 1, symbol_word(std::max(p, 1), {j + 1, -isym}));
            w[j] = right;
            keys[j] = key_of(right);
            eta[j] = eta[j] * (sign ? eta[i].inverse() : eta[i]);
            changed = true;
            break;
          }
        }
      }
    }
  }

  // orient each entry to the smaller of w and w^{-1}
  for (int j = 0; j < p; ++j) {
    if (w[j].trivial()) continue;
    Word inv = w[j].inverse();
    if (plainlex_less(inv, w[j])) {
      for (int k = 0; k < p; ++k)
        nu[k] = replace_symbol(nu[k], j + 1, symbol_word(std::max(p, 1), {-(j + 1)}));
      w[j] = inv;
      eta[j] = eta[j].inverse();
    }
  }

  // assemble, nontrivial entries sorted by (length, lex)
  std::vector<int> order;
  for (int j = 0; j < p; ++j)
    if (!w[j].trivial()) order.push_back(j);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });

  NielsenResult res;
  const int np = static_cast<int>(order.size());
  std::vector<Word> pos_to_basis_symbol(p, Word(std::max(np, 1)));
  for (int k = 0; k < np; ++k) {
    res.basis.push_back(w[order[k]]);
    res.forward.push_back(eta[order[k]]);
    pos_to_basis_symbol[order[k]] = Word::generator(std::max(np, 1), k + 1);
  }
  for (int i = 0; i < p; ++i)
    res.backward.push_back(substitute(nu[i], pos_to_basis_symbol, std::max(np, 1)));
  return res;
}

std::optional<std::vector<Word>> invert_basis_map(const std::vector<Word>& images) {
  const int k = static_cast<int>(images.size());
  for (const Word& im : images)
    if (im.rank() != k) throw std::invalid_argument("invert_basis_map: rank must equal tuple size");
  NielsenResult nr = nielsen_reduce(images, k);
  if (static_cast<int>(nr.basis.size()) != k) return std::nullopt;
  std::vector<Word> inv(k, Word(k));
  std::vector<bool> seen(k, false);
  for (int j = 0; j < k; ++j) {
    if (nr.basis[j].length() != 1) return std::nullopt;
    int l = nr.basis[j].letters()[0];
    int idx = std::abs(l) - 1;
    if (seen[idx]) return std::nullopt;
    seen[idx] = true;
    inv[idx] = l > 0 ? nr.forward[j] : nr.forward[j].inverse();
  }
  return inv;
}

}  // namespace zmfn
