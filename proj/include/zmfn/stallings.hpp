#pragma once

#include <optional>
#include <vector>

#include "zmfn/word.hpp"

namespace zmfn {

/// Folded core automaton of a finitely generated subgroup of F_n
/// (deterministic and co-deterministic edge-labelled graph with a
/// basepoint; vertices are renumbered in BFS order so equal subgroups
/// produce identical graphs). A spanning tree and the induced free
/// basis are computed on construction.
class StallingsGraph {
 public:
  static StallingsGraph from_generators(const std::vector<Word>& gens, int rank);

  int alphabet_rank() const { return rank_; }
  std::size_t num_vertices() const { return out_.size(); }
  std::size_t num_edges() const;
  int basepoint() const { return 0; }
  /// first Betti number = free rank of the subgroup
  std::size_t graph_rank() const { return basis_.size(); }

  /// follow one signed letter, -1 when the edge is missing
  int step(int v, int letter) const;
  /// end vertex of w read from v, or absent when the path leaves the graph
  std::optional<int> trace(int v, const Word& w) const;
  bool accepts(const Word& w) const;

  /// every vertex has full degree 2n
  bool complete() const;

  const std::vector<Word>& tree_words() const { return tree_words_; }
  /// free basis of the subgroup, one word per non-tree edge
  const std::vector<Word>& basis() const { return basis_; }
  /// expression of a subgroup element over basis(), as a word whose
  /// alphabet rank is graph_rank(); absent when w is not in the subgroup
  std::optional<Word> express(const Word& w) const;

  /// component of (bp, bp) of the product automaton; its subgroup is the
  /// intersection of the two subgroups
  static StallingsGraph pullback(const StallingsGraph& a, const StallingsGraph& b);

 private:
  StallingsGraph() : rank_(0) {}
  void normalize(std::vector<std::vector<int>>& out, int basepoint);
  void build_tree();

  int rank_;
  // out_[v][x-1] = target of the x-edge leaving v, in_[v][x-1] the x-edge arriving
  std::vector<std::vector<int>> out_, in_;
  std::vector<Word> tree_words_;
  std::vector<Word> basis_;
  // for each vertex and signed letter: 0 tree edge, -1 missing, k>0 basis edge k (sign = direction)
  std::vector<std::vector<int>> edge_code_;
};

/// v0 with u1*H1 (cap) u2*H2 = v0 * (H1 cap H2); absent when the cosets
/// are disjoint. The graphs are the Stallings automata of H1 and H2.
std::optional<Word> free_coset_intersect(const Word& u1, const StallingsGraph& g1,
                                         const Word& u2, const StallingsGraph& g2);

/// index and right coset representatives of the subgroup in F_n, absent
/// when the index is infinite
struct FreeIndexData {
  Int index;
  std::vector<Word> reps;
};
std::optional<FreeIndexData> free_finite_index(const StallingsGraph& g);

}  // namespace zmfn
