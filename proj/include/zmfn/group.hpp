#pragma once

#include <optional>
#include <vector>

#include "zmfn/intlat.hpp"
#include "zmfn/nielsen.hpp"
#include "zmfn/stallings.hpp"
#include "zmfn/word.hpp"

namespace zmfn {

/// Element of Z^m x F_n in normal form t^a w.
struct GElem {
  Vec avec;
  Word word;

  GElem(Vec a, Word w) : avec(std::move(a)), word(std::move(w)) {}
  static GElem identity(std::size_t m, int n) { return GElem(Vec(m, Int(0)), Word(n)); }

  std::size_t m() const { return avec.size(); }
  int n() const { return word.rank(); }
  bool is_identity() const { return vec_is_zero(avec) && word.trivial(); }
  bool operator==(const GElem& o) const = default;
};

GElem g_mul(const GElem& a, const GElem& b);
GElem g_inv(const GElem& a);
GElem g_pow(const GElem& a, long k);
/// evaluate a word over abstract symbols at the given elements
GElem g_eval(const Word& symbols, const std::vector<GElem>& args);

/// Basis of a finitely generated subgroup H <= Z^m x F_n:
/// t^{b_1}..t^{b_{m'}} (rows of L) and t^{a_i} u_i with (u_i) a
/// Nielsen-reduced free basis of Hpi and A the matrix of the a_i.
/// Change-of-basis expressions to and from the original generators are
/// kept, as is the Stallings graph of (u_i) for membership queries.
class GSubgroupBasis {
 public:
  static GSubgroupBasis compute(const std::vector<GElem>& gens, std::size_t m, int n);

  std::size_t m() const { return m_; }
  int n() const { return n_; }
  std::size_t abelian_rank() const { return L_.rank(); }    // m'
  std::size_t free_rank() const { return ubasis_.size(); }  // n'
  std::size_t size() const { return abelian_rank() + free_rank(); }

  const Lattice& L() const { return L_; }
  const IntMat& A() const { return A_; }
  const std::vector<Vec>& avecs() const { return avecs_; }
  const std::vector<Word>& ubasis() const { return ubasis_; }
  const StallingsGraph& graph() const { return graph_; }
  const std::vector<GElem>& generators() const { return gens_; }

  /// basis as group elements: abelian rows first, then the pairs
  std::vector<GElem> basis_elements() const;
  GElem basis_element(std::size_t i) const;

  /// the word over basis symbols evaluated at basis_elements()
  GElem eval_basis_word(const Word& bword) const;
  /// the word over generator symbols evaluated at generators()
  GElem eval_generator_word(const Word& gword) const;

  /// expression of each basis element over the original generators
  const std::vector<Word>& basis_over_generators() const { return basis_over_gens_; }
  /// expression of each original generator over the basis
  const std::vector<Word>& generators_over_basis() const { return gens_over_basis_; }

  /// expression of w in Hpi over (u_i), absent when w is not in Hpi
  std::optional<Word> express_free(const Word& w) const;
  /// {a : t^a w in H}, empty or omega*A + L
  AffineCoset abelian_completion(const Word& w) const;
  /// expression of g over the basis, absent when g is not in H
  std::optional<Word> membership(const GElem& g) const;
  bool contains(const GElem& g) const { return membership(g).has_value(); }

 private:
  GSubgroupBasis(std::size_t m, int n)
      : m_(m), n_(n), L_(m), A_(0, m), graph_(StallingsGraph::from_generators({}, n)) {}

  std::size_t m_;
  int n_;
  Lattice L_;
  std::vector<Vec> avecs_;
  std::vector<Word> ubasis_;
  IntMat A_;
  std::vector<GElem> gens_;
  std::vector<Word> basis_over_gens_;
  std::vector<Word> gens_over_basis_;
  StallingsGraph graph_;
  std::vector<Word> graphbasis_over_u_;  // graph basis expressed over (u_i)
};

/// conjugator c with c^{-1} g c = g2, absent when not conjugate
std::optional<GElem> is_conjugate(const GElem& g, const GElem& g2);

/// Z^m x F_n isomorphic to Z^m2 x F_n2 (ranks normalized so n != 1)
bool iso_params(std::size_t m, int n, std::size_t m2, int n2);

}  // namespace zmfn
