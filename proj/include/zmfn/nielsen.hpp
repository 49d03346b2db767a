#pragma once

#include <optional>
#include <vector>

#include "zmfn/word.hpp"

namespace zmfn {

/// Result of Nielsen-reducing a tuple (w_1..w_p) of words in F_n.
/// basis[j] = eta_j(w_1..w_p) via the forward expressions (symbol j of a
/// forward word refers to input position j), and w_i = nu_i(basis) via
/// the backward ones (symbol j refers to basis position j).
struct NielsenResult {
  std::vector<Word> basis;     // Nielsen-reduced free basis of <tuple>
  std::vector<Word> forward;   // per basis element, word over rank p
  std::vector<Word> backward;  // per input, word over rank basis.size()
};

NielsenResult nielsen_reduce(const std::vector<Word>& tuple, int rank);

/// Given images of the free generators under an automorphism of F_k
/// (k = images.size() = common rank), recover the inverse images by
/// replaying the Nielsen reduction of the image tuple. Absent when the
/// tuple is not a basis of F_k.
std::optional<std::vector<Word>> invert_basis_map(const std::vector<Word>& images);

}  // namespace zmfn
