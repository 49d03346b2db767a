#include "zmfn/stallings.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <stdexcept>
#include <utility>

namespace zmfn {

namespace {

// Union-find graph folder. Each edge (v, x, w) is recorded in both
// directions; inserting a duplicate (vertex, label) slot with a new
// target queues a vertex identification, and identifications cascade
// until the graph is deterministic and co-deterministic.
struct Folder {
  std::vector<int> parent;
  std::vector<std::map<int, int>> adj;  // signed letter -> target
  std::vector<std::pair<int, int>> pending;

  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    adj.emplace_back();
    return static_cast<int>(parent.size()) - 1;
  }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void insert(int v, int l, int w) {
    v = find(v);
    w = find(w);
    auto [it, fresh] = adj[v].try_emplace(l, w);
    if (!fresh) {
      int t = find(it->second);
      if (t != w) pending.emplace_back(t, w);
    }
  }

  void add_edge(int v, int letter, int w) {
    insert(v, letter, w);
    insert(w, -letter, v);
    drain();
  }

  void drain() {
    while (!pending.empty()) {
      auto [a, b] = pending.back();
      pending.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (adj[a].size() < adj[b].size()) std::swap(a, b);
      parent[b] = a;
      std::map<int, int> edges = std::move(adj[b]);
      adj[b].clear();
      for (auto& [l, t] : edges) insert(a, l, t);
    }
  }
};

}  // namespace

std::size_t StallingsGraph::num_edges() const {
  std::size_t c = 0;
  for (auto& row : out_)
    for (int t : row)
      if (t >= 0) ++c;
  return c;
}

int StallingsGraph::step(int v, int letter) const {
  if (letter > 0) return out_[v][letter - 1];
  return in_[v][-letter - 1];
}

std::optional<int> StallingsGraph::trace(int v, const Word& w) const {
  int cur = v;
  for (int l : w.letters()) {
    cur = step(cur, l);
    if (cur < 0) return std::nullopt;
  }
  return cur;
}

bool StallingsGraph::accepts(const Word& w) const {
  auto t = trace(basepoint(), w);
  return t && *t == basepoint();
}

bool StallingsGraph::complete() const {
  for (std::size_t v = 0; v < out_.size(); ++v)
    for (int x = 0; x < rank_; ++x)
      if (out_[v][x] < 0 || in_[v][x] < 0) return false;
  return true;
}

StallingsGraph StallingsGraph::from_generators(const std::vector<Word>& gens, int rank) {
  Folder f;
  int bp = f.make();
  for (const Word& g : gens) {
    if (g.rank() != rank) throw std::invalid_argument("stallings: rank mismatch");
    int cur = bp;
    const auto& ls = g.letters();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      int nxt = (i + 1 == ls.size()) ? bp : f.make();
      if (ls[i] > 0)
        f.add_edge(cur, ls[i], nxt);
      else
        f.add_edge(nxt, -ls[i], cur);
      cur = nxt;
    }
  }

  // gather representative out-adjacency
  std::vector<int> ids(f.parent.size(), -1);
  std::vector<std::vector<int>> out;
  int count = 0;
  for (std::size_t v = 0; v < f.parent.size(); ++v)
    if (f.find(static_cast<int>(v)) == static_cast<int>(v)) ids[v] = count++;
  out.assign(count, std::vector<int>(rank, -1));
  for (std::size_t v = 0; v < f.parent.size(); ++v) {
    if (ids[v] < 0) continue;
    for (auto& [l, t] : f.adj[v])
      if (l > 0) out[ids[v]][l - 1] = ids[f.find(t)];
  }

  StallingsGraph g;
  g.rank_ = rank;
  g.normalize(out, ids[f.find(bp)]);
  g.build_tree();
  return g;
}

void StallingsGraph::normalize(std::vector<std::vector<int>>& out, int basepoint) {
  int n = static_cast<int>(out.size());
  std::vector<std::vector<int>> in(n, std::vector<int>(rank_, -1));
  auto rebuild_in = [&]() {
    in.assign(out.size(), std::vector<int>(rank_, -1));
    for (std::size_t v = 0; v < out.size(); ++v)
      for (int x = 0; x < rank_; ++x)
        if (out[v][x] >= 0) in[out[v][x]][x] = static_cast<int>(v);
  };
  rebuild_in();

  // iteratively remove non-basepoint vertices of total degree <= 1
  std::vector<bool> dead(n, false);
  bool removed = true;
  while (removed) {
    removed = false;
    for (int v = 0; v < n; ++v) {
      if (dead[v] || v == basepoint) continue;
      int deg = 0;
      for (int x = 0; x < rank_; ++x) {
        if (out[v][x] >= 0 && !dead[out[v][x]]) ++deg;
        if (in[v][x] >= 0 && !dead[in[v][x]]) ++deg;
      }
      if (deg <= 1) {
        dead[v] = true;
        removed = true;
      }
    }
  }

  // BFS renumbering from the basepoint with a fixed letter order
  std::vector<int> order, newid(n, -1);
  std::deque<int> q;
  q.push_back(basepoint);
  newid[basepoint] = 0;
  order.push_back(basepoint);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int x = 0; x < rank_; ++x)
      for (int w : {out[v][x], in[v][x]}) {
        if (w < 0 || dead[w] || newid[w] >= 0) continue;
        newid[w] = static_cast<int>(order.size());
        order.push_back(w);
        q.push_back(w);
      }
  }

  out_.assign(order.size(), std::vector<int>(rank_, -1));
  in_.assign(order.size(), std::vector<int>(rank_, -1));
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int x = 0; x < rank_; ++x) {
      int w = out[v][x];
      if (w >= 0 && !dead[w] && newid[w] >= 0) {
        out_[i][x] = newid[w];
        in_[newid[w]][x] = static_cast<int>(i);
      }
    }
  }
}

void StallingsGraph::build_tree() {
  std::size_t n = out_.size();
  tree_words_.assign(n, Word(rank_));
  edge_code_.assign(n, std::vector<int>(2 * rank_, -1));
  // edge_code_ is indexed by source vertex and signed letter
  // ((x-1)*2 for +x, (x-1)*2+1 for -x): 0 tree, -1 missing, +/-k basis
  std::vector<bool> seen(n, false);
  std::deque<int> q;
  seen[0] = true;
  q.push_back(0);
  std::vector<std::pair<int, int>> tree_edges;  // (source, positive letter)
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int x = 1; x <= rank_; ++x)
      for (int sgn : {+1, -1}) {
        int w = step(v, sgn * x);
        if (w < 0 || seen[w]) continue;
        seen[w] = true;
        tree_words_[w] = tree_words_[v] * Word::generator(rank_, x, sgn < 0);
        int csrc = sgn > 0 ? v : w;  // canonical (positive) direction of the edge
        int ctgt = sgn > 0 ? w : v;
        edge_code_[csrc][(x - 1) * 2] = 0;
        edge_code_[ctgt][(x - 1) * 2 + 1] = 0;
        q.push_back(w);
      }
  }
  basis_.clear();
  for (std::size_t v = 0; v < n; ++v)
    for (int x = 1; x <= rank_; ++x) {
      int w = out_[v][x - 1];
      if (w < 0) continue;
      if (edge_code_[v][(x - 1) * 2] == 0) continue;  // tree edge
      int k = static_cast<int>(basis_.size()) + 1;
      basis_.push_back(tree_words_[v] * Word::generator(rank_, x) * tree_words_[w].inverse());
      edge_code_[v][(x - 1) * 2] = k;
      edge_code_[w][(x - 1) * 2 + 1] = -k;
    }
}

std::optional<Word> StallingsGraph::express(const Word& w) const {
  int cur = basepoint();
  std::vector<int> symbols;
  for (int l : w.letters()) {
    int nxt = step(cur, l);
    if (nxt < 0) return std::nullopt;
    int idx = (std::abs(l) - 1) * 2 + (l < 0 ? 1 : 0);
    int code = edge_code_[cur][idx];
    if (code != 0) symbols.push_back(code);
    cur = nxt;
  }
  if (cur != basepoint()) return std::nullopt;
  return Word::from_letters(std::max<int>(1, static_cast<int>(basis_.size())), symbols);
}

StallingsGraph StallingsGraph::pullback(const StallingsGraph& a, const StallingsGraph& b) {
  if (a.alphabet_rank() != b.alphabet_rank())
    throw std::invalid_argument("pullback: rank mismatch");
  int rank = a.alphabet_rank();
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> states;
  auto get = [&](int va, int vb) {
    auto [it, fresh] = id.try_emplace({va, vb}, static_cast<int>(states.size()));
    if (fresh) states.push_back({va, vb});
    return it->second;
  };
  int start = get(a.basepoint(), b.basepoint());
  // discover the whole component of (bp, bp), walking both directions
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [va, vb] = states[i];
    for (int x = 1; x <= rank; ++x)
      for (int sgn : {+1, -1}) {
        int wa = a.step(va, sgn * x), wb = b.step(vb, sgn * x);
        if (wa >= 0 && wb >= 0) get(wa, wb);
      }
  }
  std::vector<std::vector<int>> out(states.size(), std::vector<int>(rank, -1));
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [va, vb] = states[i];
    for (int x = 1; x <= rank; ++x) {
      int wa = a.step(va, x), wb = b.step(vb, x);
      if (wa >= 0 && wb >= 0) out[i][x - 1] = id.at({wa, wb});
    }
  }

  StallingsGraph g;
  g.rank_ = rank;
  g.normalize(out, start);
  g.build_tree();
  return g;
}

std::optional<Word> free_coset_intersect(const Word& u1, const StallingsGraph& g1,
                                         const Word& u2, const StallingsGraph& g2) {
  if (g1.alphabet_rank() != g2.alphabet_rank())
    throw std::invalid_argument("free_coset_intersect: rank mismatch");
  int rank = g1.alphabet_rank();

  // coset automaton: copy of the subgroup graph plus a fresh tail
  // spelling u into the basepoint; returns folded adjacency + markers
  struct Coset {
    std::vector<std::map<int, int>> adj;
    int start, accept;
  };
  auto build = [&](const Word& u, const StallingsGraph& g) {
    Folder f;
    std::vector<int> vid(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) vid[v] = f.make();
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      for (int x = 1; x <= rank; ++x) {
        int w = g.step(static_cast<int>(v), x);
        if (w >= 0) f.add_edge(vid[v], x, vid[w]);
      }
    int bp = vid[g.basepoint()];
    int start = bp;
    if (!u.trivial()) {
      const auto& ls = u.letters();
      start = f.make();
      int cur = start;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        int nxt = (i + 1 == ls.size()) ? bp : f.make();
        if (ls[i] > 0)
          f.add_edge(cur, ls[i], nxt);
        else
          f.add_edge(nxt, -ls[i], cur);
        cur = nxt;
      }
    }
    Coset c;
    c.start = f.find(start);
    c.accept = f.find(bp);
    c.adj.resize(f.parent.size());
    for (std::size_t v = 0; v < f.parent.size(); ++v) {
      if (f.find(static_cast<int>(v)) != static_cast<int>(v)) continue;
      for (auto& [l, t] : f.adj[v]) c.adj[v][l] = f.find(t);
    }
    return c;
  };
  Coset c1 = build(u1, g1), c2 = build(u2, g2);

  // BFS on the product from (start, start) to (accept, accept)
  std::map<std::pair<int, int>, std::pair<std::pair<int, int>, int>> parent;
  std::deque<std::pair<int, int>> q;
  std::pair<int, int> s{c1.start, c2.start}, t{c1.accept, c2.accept};
  parent[s] = {s, 0};
  q.push_back(s);
  while (!q.empty() && !parent.count(t)) {
    auto cur = q.front();
    q.pop_front();
    for (int x = 1; x <= rank && !parent.count(t); ++x)
      for (int sgn : {+1, -1}) {
        int l = sgn * x;
        auto i1 = c1.adj[cur.first].find(l);
        auto i2 = c2.adj[cur.second].find(l);
        if (i1 == c1.adj[cur.first].end() || i2 == c2.adj[cur.second].end()) continue;
        std::pair<int, int> nxt{i1->second, i2->second};
        if (parent.count(nxt)) continue;
        parent[nxt] = {cur, l};
        q.push_back(nxt);
        if (nxt == t) break;
      }
  }
  if (!parent.count(t)) return std::nullopt;
  std::vector<int> letters;
  for (auto cur = t; cur != s; cur = parent[cur].first) letters.push_back(parent[cur].second);
  std::reverse(letters.begin(), letters.end());
  return Word::from_letters(rank, letters);
}

std::optional<FreeIndexData> free_finite_index(const StallingsGraph& g) {
  if (!g.complete()) return std::nullopt;
  FreeIndexData d;
  d.index = static_cast<long>(g.num_vertices());
  d.reps = g.tree_words();
  return d;
}

}  // namespace zmfn
