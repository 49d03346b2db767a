#include "zmfn/whitehead.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace zmfn {

namespace {

// letters encoded 0..2n-1: letter x -> 2(|x|-1) + (x<0)
int encode(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

void push_type1(int n, std::vector<FreeEndo>& out) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    for (int signs = 0; signs < (1 << n); ++signs) {
      std::vector<Word> im;
      bool ident = true;
      for (int i = 0; i < n; ++i) {
        bool inv = (signs >> i) & 1;
        im.push_back(Word::generator(n, perm[i] + 1, inv));
        if (perm[i] != i || inv) ident = false;
      }
      if (!ident) out.emplace_back(n, im);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void push_type2(int n, std::vector<FreeEndo>& out) {
  for (int a = 1; a <= n; ++a)
    for (int asgn : {+1, -1}) {
      int mult = asgn * a;
      // choose membership of the other 2(n-1) letters in A
      std::vector<int> others;
      for (int g = 1; g <= n; ++g) {
        if (g == a) continue;
        others.push_back(g);
        others.push_back(-g);
      }
      for (int mask = 1; mask < (1 << others.size()); ++mask) {
        std::vector<bool> in_a(2 * n, false);
        in_a[encode(mult)] = true;
        for (std::size_t k = 0; k < others.size(); ++k)
          if ((mask >> k) & 1) in_a[encode(others[k])] = true;
        Word aw = Word::generator(n, a, asgn < 0);
        std::vector<Word> im;
        for (int g = 1; g <= n; ++g) {
          if (g == a) {
            im.push_back(Word::generator(n, g));
            continue;
          }
          bool pos = in_a[encode(g)], neg = in_a[encode(-g)];
          Word x = Word::generator(n, g);
          if (pos && neg)
            im.push_back(aw.inverse() * x * aw);
          else if (pos)
            im.push_back(x * aw);
          else if (neg)
            im.push_back(aw.inverse() * x);
          else
            im.push_back(x);
        }
        out.emplace_back(n, im);
      }
    }
}

Word cyclic_canonical(const Word& w) {
  // lexicographically smallest rotation of a cyclically reduced word
  auto [core, p] = w.cyclic_reduce();
  const auto& ls = core.letters();
  std::size_t len = ls.size();
  if (len == 0) return core;
  Word best = core;
  for (std::size_t k = 1; k < len; ++k) {
    std::vector<int> rot(ls.begin() + k, ls.end());
    rot.insert(rot.end(), ls.begin(), ls.begin() + k);
    Word cand = Word::from_letters(w.rank(), rot);
    if (cand < best) best = cand;
  }
  return best;
}

std::size_t cyclic_length(const Word& w) { return w.cyclic_reduce().first.length(); }

}  // namespace

const std::vector<FreeEndo>& whitehead_autos(int n) {
  static std::mutex mtx;
  static std::map<int, std::vector<FreeEndo>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<FreeEndo> autos;
  push_type1(n, autos);
  push_type2(n, autos);
  return cache.emplace(n, std::move(autos)).first->second;
}

FreeEndo free_conj(int n, const Word& c) {
  std::vector<Word> im;
  for (int i = 1; i <= n; ++i) im.push_back(Word::generator(n, i).conjugate(c));
  return FreeEndo(n, im);
}

std::pair<Word, FreeEndo> whitehead_minimize(const Word& w) {
  const int n = w.rank();
  FreeEndo phi = FreeEndo::identity(n);
  Word cur = w;
  while (true) {
    auto [core, p] = cur.cyclic_reduce();
    if (!p.trivial()) {
      phi = phi.compose(free_conj(n, p));
      cur = core;
    }
    bool improved = false;
    for (const FreeEndo& t : whitehead_autos(n)) {
      Word img = t.apply(cur);
      if (cyclic_length(img) < cur.length()) {
        phi = phi.compose(t);
        cur = img;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {cur, phi};
}

std::optional<FreeEndo> whp_auto_free(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("whp_auto_free: rank mismatch");
  const int n = u.rank();
  if (n == 0) return u == v ? std::optional<FreeEndo>(FreeEndo::identity(0)) : std::nullopt;
  auto [mu, phiu] = whitehead_minimize(u);
  auto [mv, phiv] = whitehead_minimize(v);
  if (mu.length() != mv.length()) return std::nullopt;

  // breadth-first search through the equal-length level of the orbit,
  // on cyclic canonical forms
  Word start = cyclic_canonical(mu), target = cyclic_canonical(mv);
  const auto& moves = whitehead_autos(n);
  std::map<Word, std::pair<Word, int>> parent;  // state -> (previous, move index)
  std::vector<Word> queue{start};
  parent.emplace(start, std::make_pair(start, -1));
  bool found = start == target;
  for (std::size_t head = 0; head < queue.size() && !found; ++head) {
    Word cur = queue[head];
    for (std::size_t mi = 0; mi < moves.size() && !found; ++mi) {
      Word img = moves[mi].apply(cur);
      if (cyclic_length(img) != mu.length()) continue;
      Word canon = cyclic_canonical(img);
      if (parent.count(canon)) continue;
      parent.emplace(canon, std::make_pair(cur, static_cast<int>(mi)));
      queue.push_back(canon);
      if (canon == target) found = true;
    }
  }
  if (!found) return std::nullopt;

  // replay the move path
  std::vector<int> path;
  for (Word cur = target; !(cur == start);) {
    auto& pr = parent.at(cur);
    path.push_back(pr.second);
    cur = pr.first;
  }
  std::reverse(path.begin(), path.end());
  FreeEndo phi = phiu;
  for (int mi : path) phi = phi.compose(moves[mi]);

  // align u*phi with mv exactly using inner automorphisms
  Word w = phi.apply(u);
  auto [core, p] = w.cyclic_reduce();
  const auto& ls = core.letters();
  std::size_t len = ls.size();
  bool aligned = false;
  for (std::size_t k = 0; k < std::max<std::size_t>(len, 1); ++k) {
    std::vector<int> rot(ls.begin() + k, ls.end());
    rot.insert(rot.end(), ls.begin(), ls.begin() + k);
    if (Word::from_letters(n, rot) == mv) {
      Word s1 = Word::from_letters(n, std::vector<int>(ls.begin(), ls.begin() + k));
      phi = phi.compose(free_conj(n, p * s1));
      aligned = true;
      break;
    }
  }
  if (!aligned) throw std::logic_error("whitehead: orbit path misaligned");

  auto phiv_inv = phiv.inverse();
  if (!phiv_inv) throw std::logic_error("whitehead: minimizer not invertible");
  phi = phi.compose(*phiv_inv);
  if (!(phi.apply(u) == v)) throw std::logic_error("whitehead: witness failed verification");
  return phi;
}

}  // namespace zmfn
