#pragma once

#include <optional>
#include <vector>

#include "zmfn/group.hpp"
#include "zmfn/morph.hpp"

namespace zmfn {

/// Lattice data behind the type I fixed-subgroup decision.
struct FixCertificate {
  Lattice im_rho;       // (Fix phi) rho <= Z^n
  Lattice im_p_prime;   // its image under P
  Lattice m_lat;        // Im(I_m - Q)
  Lattice n_lat;        // N = Im(I_m - Q) cap Im P'
  Lattice n_pre;        // N P'^{-1} inside im_rho
  int condition;        // 1, 2 or 3 for the satisfied clause, 0 for none

  FixCertificate() : im_rho(0), im_p_prime(0), m_lat(0), n_lat(0), n_pre(0), condition(0) {}
};

struct FixResult {
  bool finitely_generated;
  std::optional<GSubgroupBasis> basis;
  FixCertificate cert;
};

/// Fix of a type II endomorphism (always finitely generated).
GSubgroupBasis fix_type2(const Endo& e);

/// Fix of a type I endomorphism, given a free basis of Fix phi
/// (trusted input). When validate is set, each basis word is checked to
/// be phi-fixed.
FixResult fix_type1(const Endo& e, const std::vector<Word>& fix_phi_basis, bool validate = true);

/// Test oracle: all fixed t^a w with |w| <= max_word_len and
/// ||a||_inf <= max_coeff, in enumeration order.
std::vector<GElem> fix_bruteforce(const Endo& e, int max_word_len, int max_coeff);

}  // namespace zmfn
