#include "zmfn/meet.hpp"

#include <stdexcept>

namespace zmfn {

namespace {

Vec abelianize_symbols(const Word& w, std::size_t nsyms) {
  Vec v(nsyms, Int(0));
  for (int l : w.letters()) {
    if (l > 0)
      v[l - 1] += 1;
    else
      v[-l - 1] -= 1;
  }
  return v;
}

// pullback basis of Hpi cap H2pi with expressions over both subgroup
// bases, and the abelianized inclusion matrices
struct PullbackData {
  std::vector<Word> vbasis;      // words in F_n
  std::vector<Word> expr1;       // over H.ubasis symbols
  std::vector<Word> expr2;       // over H2.ubasis symbols
  IntMat P, P2;
  StallingsGraph graph;
};

PullbackData pullback_data(const GSubgroupBasis& H, const GSubgroupBasis& H2) {
  PullbackData d{{}, {}, {}, IntMat(0, 0), IntMat(0, 0),
                 StallingsGraph::pullback(H.graph(), H2.graph())};
  d.vbasis = d.graph.basis();
  std::vector<Vec> prows, p2rows;
  for (const Word& v : d.vbasis) {
    auto e1 = H.express_free(v);
    auto e2 = H2.express_free(v);
    if (!e1 || !e2) throw std::logic_error("pullback basis word not in both subgroups");
    d.expr1.push_back(*e1);
    d.expr2.push_back(*e2);
    prows.push_back(abelianize_symbols(*e1, H.free_rank()));
    p2rows.push_back(abelianize_symbols(*e2, H2.free_rank()));
  }
  d.P = IntMat::from_rows(prows, H.free_rank());
  d.P2 = IntMat::from_rows(p2rows, H2.free_rank());
  return d;
}

IntMat difference_map(const PullbackData& d, const GSubgroupBasis& H, const GSubgroupBasis& H2) {
  return d.P * H.A() - d.P2 * H2.A();
}

}  // namespace

std::optional<std::pair<GElem, MeetCertificate>> coset_intersection_G(
    const GElem& g, const GSubgroupBasis& H, const GElem& g2, const GSubgroupBasis& H2) {
  if (H.m() != H2.m() || H.n() != H2.n() || g.m() != H.m() || g.n() != H.n() ||
      g2.m() != H.m() || g2.n() != H.n())
    throw std::invalid_argument("coset_intersection_G: dimension mismatch");

  auto v0 = free_coset_intersect(g.word, H.graph(), g2.word, H2.graph());
  if (!v0) return std::nullopt;

  PullbackData pd = pullback_data(H, H2);
  const std::size_t n3 = pd.vbasis.size();

  MeetCertificate cert;
  cert.v0 = *v0;
  cert.vbasis = pd.vbasis;
  cert.P = pd.P;
  cert.P2 = pd.P2;

  auto w0e = H.express_free(g.word.inverse() * *v0);
  auto w02e = H2.express_free(g2.word.inverse() * *v0);
  if (!w0e || !w02e) throw std::logic_error("v0 not in both free cosets");
  cert.omega0 = abelianize_symbols(*w0e, H.free_rank());
  cert.omega02 = abelianize_symbols(*w02e, H2.free_rank());

  // N = a2 - a + omega02*A2 - omega0*A + (L + L2)
  Vec offset = vec_add(vec_sub(g2.avec, g.avec),
                       vec_sub(vec_mul(cert.omega02, H2.A()), vec_mul(cert.omega0, H.A())));
  cert.N = AffineCoset(offset, lattice_sum(H.L(), H2.L()));
  cert.M = coset_preimage(difference_map(pd, H, H2), cert.N);
  if (cert.M.is_empty()) return std::nullopt;

  // witness free part u'' = v0 * prod v_i^{x_i}
  Word u2(H.n());
  const Vec& x = cert.M.offset();
  for (std::size_t i = 0; i < n3; ++i) {
    if (!x[i].fits_slong_p()) throw std::logic_error("witness exponent overflow");
    u2 = u2 * pd.vbasis[i].power(x[i].get_si());
  }
  u2 = *v0 * u2;

  // witness abelian part from the two shifted completions
  AffineCoset c1 = H.abelian_completion(g.word.inverse() * u2);
  AffineCoset c2 = H2.abelian_completion(g2.word.inverse() * u2);
  if (c1.is_empty() || c2.is_empty()) throw std::logic_error("free witness without abelian completion");
  AffineCoset both = coset_intersect(AffineCoset(vec_add(g.avec, c1.offset()), c1.direction()),
                                     AffineCoset(vec_add(g2.avec, c2.offset()), c2.direction()));
  if (both.is_empty()) throw std::logic_error("shifted completions do not meet");
  GElem witness(both.offset(), u2);

  if (!H.contains(g_mul(g_inv(g), witness)) || !H2.contains(g_mul(g_inv(g2), witness)))
    throw std::logic_error("coset intersection witness failed verification");
  return std::make_pair(witness, cert);
}

SIPResult subgroup_intersection_G(const GSubgroupBasis& H, const GSubgroupBasis& H2) {
  if (H.m() != H2.m() || H.n() != H2.n())
    throw std::invalid_argument("subgroup_intersection_G: dimension mismatch");
  const std::size_t m = H.m();
  const int n = H.n();

  PullbackData pd = pullback_data(H, H2);
  const std::size_t n3 = pd.vbasis.size();

  SIPResult res;
  res.cert.v0 = Word(n);
  res.cert.vbasis = pd.vbasis;
  res.cert.P = pd.P;
  res.cert.P2 = pd.P2;
  res.cert.omega0 = Vec(H.free_rank(), Int(0));
  res.cert.omega02 = Vec(H2.free_rank(), Int(0));
  Lattice nsum = lattice_sum(H.L(), H2.L());
  res.cert.N = AffineCoset(Vec(m, Int(0)), nsum);
  Lattice M = lattice_preimage(difference_map(pd, H, H2), nsum);
  res.cert.M = AffineCoset(Vec(n3, Int(0)), M);

  bool trivial_free = n3 == 0 || (n3 == 1 && M.rank() == 0);
  if (!trivial_free && M.rank() < n3) {
    res.finitely_generated = false;
    return res;
  }
  res.finitely_generated = true;

  // abelian part of the intersection
  Lattice abel = lattice_intersect(H.L(), H2.L());
  std::vector<GElem> gens;
  for (std::size_t k = 0; k < abel.rank(); ++k) gens.emplace_back(abel.basis().row(k), Word(n));

  if (!trivial_free) {
    // Schreier graph of M rho^{-1} over the v-letters: vertices are the
    // residues of Z^{n3} mod M, membership decided by abelianization
    auto idx = lattice_index(M);
    if (!idx) throw std::logic_error("full-rank M without index");
    const auto& reps = idx->reps;
    auto find_rep = [&](const Vec& v) {
      for (std::size_t k = 0; k < reps.size(); ++k)
        if (M.contains(vec_sub(v, reps[k]))) return static_cast<int>(k);
      throw std::logic_error("residue not matched");
    };
    // basepoint is the zero residue
    int bp = find_rep(Vec(n3, Int(0)));

    // out[.][j] is the permutation "add e_j" on residues
    std::vector<std::vector<int>> out(reps.size(), std::vector<int>(n3, -1));
    std::vector<std::vector<int>> in(reps.size(), std::vector<int>(n3, -1));
    for (std::size_t k = 0; k < reps.size(); ++k)
      for (std::size_t j = 0; j < n3; ++j) {
        Vec t = reps[k];
        t[j] += 1;
        out[k][j] = find_rep(t);
        in[out[k][j]][j] = static_cast<int>(k);
      }

    // spanning tree from bp, then one free generator per non-tree edge,
    // as words over the v-symbols
    const int vsyms = static_cast<int>(n3);
    std::vector<Word> tree(reps.size(), Word(vsyms));
    std::vector<bool> seen(reps.size(), false);
    std::vector<std::vector<bool>> is_tree(reps.size(), std::vector<bool>(n3, false));
    std::vector<int> order;
    seen[bp] = true;
    order.push_back(bp);
    for (std::size_t head = 0; head < order.size(); ++head) {
      int v = order[head];
      for (std::size_t j = 0; j < n3; ++j)
        for (int sgn : {+1, -1}) {
          int w = sgn > 0 ? out[v][j] : in[v][j];
          if (w < 0 || seen[w]) continue;
          seen[w] = true;
          tree[w] = tree[v] * Word::generator(vsyms, static_cast<int>(j) + 1, sgn < 0);
          is_tree[sgn > 0 ? v : w][j] = true;
          order.push_back(w);
        }
    }
    std::vector<Word> kappa;  // free basis of (H cap H2)pi over v-symbols
    for (std::size_t k = 0; k < reps.size(); ++k)
      for (std::size_t j = 0; j < n3; ++j) {
        if (is_tree[k][j]) continue;
        kappa.push_back(tree[k] * Word::generator(vsyms, static_cast<int>(j) + 1) *
                        tree[out[k][j]].inverse());
      }

    // splitting: intersect the two completions of each basis word
    for (const Word& kw : kappa) {
      Word zword = substitute(kw, pd.vbasis, n);
      AffineCoset c1 = H.abelian_completion(zword);
      AffineCoset c2 = H2.abelian_completion(zword);
      AffineCoset both = coset_intersect(c1, c2);
      if (both.is_empty()) throw std::logic_error("intersection basis word without completion");
      gens.emplace_back(both.offset(), zword);
    }
  }

  res.basis = GSubgroupBasis::compute(gens, m, n);
  return res;
}

bool free_nonabelian_fg_test(const GSubgroupBasis& H, const GSubgroupBasis& H2) {
  if (H.abelian_rank() != 0 || H2.abelian_rank() != 0)
    throw std::invalid_argument("free_nonabelian_fg_test: abelian parts must be trivial");
  if (H.free_rank() < 2 || H2.free_rank() < 2)
    throw std::invalid_argument("free_nonabelian_fg_test: free ranks must be >= 2");
  PullbackData pd = pullback_data(H, H2);
  const std::size_t n3 = pd.vbasis.size();
  if (n3 <= 1) return true;  // H cap H2 trivial or cyclic
  IntMat pa = pd.P * H.A(), p2a2 = pd.P2 * H2.A();
  return pa == p2a2;
}

bool is_quasiconvex(const GSubgroupBasis& H) {
  if (H.size() <= 1) return true;  // cyclic (or trivial)

  // H tau cap H = L of finite index in H tau
  std::vector<Vec> taurows = H.L().basis().row_list();
  for (const Vec& a : H.avecs()) taurows.push_back(a);
  Lattice tau = Lattice::from_rows(taurows, H.m());
  if (H.L().rank() != tau.rank()) return false;

  // H pi cap H = H cap F_n of finite index in H pi, via the intersection
  // with the full free part
  std::vector<GElem> fullgens;
  for (int i = 1; i <= H.n(); ++i)
    fullgens.emplace_back(Vec(H.m(), Int(0)), Word::generator(H.n(), i));
  GSubgroupBasis F = GSubgroupBasis::compute(fullgens, H.m(), H.n());
  SIPResult inter = subgroup_intersection_G(H, F);
  if (!inter.finitely_generated) return false;
  const std::size_t n3 = inter.cert.vbasis.size();
  return inter.cert.M.direction().rank() == n3;
}

}  // namespace zmfn
