#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zmfn/morph.hpp"
#include "zmfn/word.hpp"

namespace zmfn {

/// All nontrivial Whitehead automorphisms of F_n: the signed letter
/// permutations and the (A, a) multiplier automorphisms.
const std::vector<FreeEndo>& whitehead_autos(int n);

/// conjugation x -> c^{-1} x c as a free automorphism
FreeEndo free_conj(int n, const Word& c);

/// (minimal, auto) with w * auto = minimal and |minimal| minimal in the
/// Aut(F_n)-orbit of w.
std::pair<Word, FreeEndo> whitehead_minimize(const Word& w);

/// automorphism of F_n with u -> v, if one exists
std::optional<FreeEndo> whp_auto_free(const Word& u, const Word& v);

}  // namespace zmfn
