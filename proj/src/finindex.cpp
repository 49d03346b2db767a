#include "zmfn/finindex.hpp"

#include <stdexcept>

namespace zmfn {

std::optional<IndexCertificate> finite_index_G(const GSubgroupBasis& H) {
  const std::size_t np = H.free_rank();

  // H cap Z^m of finite index in Z^m
  auto abelian = lattice_index(H.L());
  if (!abelian) return std::nullopt;

  // Hpi of finite index in F_n
  auto free_part = free_finite_index(H.graph());
  if (!free_part) return std::nullopt;

  // H cap F_n of finite index in Hpi: full preimage of L must have full rank
  Lattice pre = lattice_preimage(H.A(), H.L());
  if (pre.rank() < np) return std::nullopt;
  auto inner = lattice_index(pre);
  if (!inner) throw std::logic_error("full-rank preimage with no index");

  IndexCertificate cert;
  cert.abelian_reps = abelian->reps;
  cert.free_reps = free_part->reps;
  for (const Vec& r : inner->reps) {
    Word w(H.n());
    for (std::size_t i = 0; i < np; ++i) {
      if (!r[i].fits_slong_p()) throw std::logic_error("inner rep exponent overflow");
      w = w * H.ubasis()[i].power(r[i].get_si());
    }
    cert.inner_reps.push_back(w);
  }

  // candidates t^{c_i} w_k v_j cover the right cosets; clean duplicates
  // by membership, iterating (i, j, k) lexicographically
  for (const Vec& c : cert.abelian_reps)
    for (const Word& v : cert.free_reps)
      for (const Word& w : cert.inner_reps) {
        GElem cand(c, w * v);
        bool fresh = true;
        for (const GElem& kept : cert.cleaned_reps)
          if (H.contains(g_mul(cand, g_inv(kept)))) {
            fresh = false;
            break;
          }
        if (fresh) cert.cleaned_reps.push_back(cand);
      }
  cert.index = static_cast<long>(cert.cleaned_reps.size());
  return cert;
}

}  // namespace zmfn
