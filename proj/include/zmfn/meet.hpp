#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zmfn/group.hpp"

namespace zmfn {

/// Data underlying the coset/subgroup intersection computations:
/// v0 translates the free coset intersection, (v_i) is a free basis of
/// Hpi cap H2pi with abelianized inclusion matrices P and P2, N is the
/// affine constraint in Z^m and M its preimage in Z^{n3} under
/// x -> x(P A - P2 A2).
struct MeetCertificate {
  Word v0;
  std::vector<Word> vbasis;
  IntMat P, P2;
  Vec omega0, omega02;
  AffineCoset N;
  AffineCoset M;

  MeetCertificate() : v0(0), P(0, 0), P2(0, 0), N(AffineCoset::empty(0)), M(AffineCoset::empty(0)) {}
};

/// Coset Intersection Problem: a witness in gH cap g2H2 plus the
/// certificate, or absent when the cosets are disjoint.
std::optional<std::pair<GElem, MeetCertificate>> coset_intersection_G(
    const GElem& g, const GSubgroupBasis& H, const GElem& g2, const GSubgroupBasis& H2);

struct SIPResult {
  bool finitely_generated;
  std::optional<GSubgroupBasis> basis;  // present when finitely generated
  MeetCertificate cert;
};

/// Subgroup Intersection Problem: decide finite generation of H cap H2
/// and compute a basis when it is.
SIPResult subgroup_intersection_G(const GSubgroupBasis& H, const GSubgroupBasis& H2);

/// Finite-generation test for free non-abelian H, H2 (trivial abelian
/// parts, free ranks >= 2): H cap H2 trivial or PA = P2A2.
bool free_nonabelian_fg_test(const GSubgroupBasis& H, const GSubgroupBasis& H2);

/// Quasi-convexity of H <= Z^m x F_n per the cyclic / virtual direct
/// product criterion.
bool is_quasiconvex(const GSubgroupBasis& H);

}  // namespace zmfn
