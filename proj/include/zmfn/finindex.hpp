#pragma once

#include <optional>
#include <vector>

#include "zmfn/group.hpp"

namespace zmfn {

/// Certificate for [G:H] < infinity: residue data for the abelian part,
/// coset words for Hpi in F_n and for H cap F_n in Hpi, and the cleaned
/// list of right coset representatives of H in G.
struct IndexCertificate {
  std::vector<Vec> abelian_reps;   // c_i, residues of Z^m mod L
  std::vector<Word> free_reps;     // v_j, right reps of Hpi in F_n
  std::vector<Word> inner_reps;    // w_k, right reps of H cap F_n in Hpi
  std::vector<GElem> cleaned_reps;
  Int index;
};

/// Finite Index Problem for Z^m x F_n; absent when [G:H] is infinite.
std::optional<IndexCertificate> finite_index_G(const GSubgroupBasis& H);

}  // namespace zmfn
