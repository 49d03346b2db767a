#include "zmfn/group.hpp"

#include <cstdlib>
#include <stdexcept>

namespace zmfn {

GElem g_mul(const GElem& a, const GElem& b) {
  if (a.m() != b.m() || a.n() != b.n()) throw std::invalid_argument("g_mul: dimension mismatch");
  return GElem(vec_add(a.avec, b.avec), a.word * b.word);
}

GElem g_inv(const GElem& a) { return GElem(vec_neg(a.avec), a.word.inverse()); }

GElem g_pow(const GElem& a, long k) {
  GElem r = GElem::identity(a.m(), a.n());
  GElem base = k < 0 ? g_inv(a) : a;
  for (long i = 0, reps = std::labs(k); i < reps; ++i) r = g_mul(r, base);
  return r;
}

GElem g_eval(const Word& symbols, const std::vector<GElem>& args) {
  if (args.empty()) throw std::invalid_argument("g_eval: no arguments");
  GElem r = GElem::identity(args[0].m(), args[0].n());
  for (int l : symbols.letters()) {
    std::size_t idx = static_cast<std::size_t>(std::abs(l)) - 1;
    if (idx >= args.size()) throw std::invalid_argument("g_eval: symbol out of range");
    r = g_mul(r, l > 0 ? args[idx] : g_inv(args[idx]));
  }
  return r;
}

GSubgroupBasis GSubgroupBasis::compute(const std::vector<GElem>& gens, std::size_t m, int n) {
  GSubgroupBasis H(m, n);
  H.gens_ = gens;
  const std::size_t p = gens.size();
  std::vector<Word> words;
  for (const GElem& g : gens) {
    if (g.m() != m || g.n() != n) throw std::invalid_argument("subgroup basis: dimension mismatch");
    words.push_back(g.word);
  }

  NielsenResult nr = nielsen_reduce(words, n);
  H.ubasis_ = nr.basis;
  const std::size_t np = nr.basis.size();

  // splitting: u_j lifts to eta_j evaluated at the generators, whose
  // abelian part is a_j
  std::vector<Vec> arows;
  for (std::size_t j = 0; j < np; ++j) {
    GElem lift = g_eval(nr.forward[j], gens);
    if (!(lift.word == nr.basis[j])) throw std::logic_error("nielsen forward expression mismatch");
    H.avecs_.push_back(lift.avec);
    arows.push_back(lift.avec);
  }
  H.A_ = IntMat::from_rows(arows, m);

  // abelian kernel generators d_i = c_i - e_i from g_i * (nu_i(pairs))^{-1}
  std::vector<GElem> pairs;
  for (std::size_t j = 0; j < np; ++j) pairs.emplace_back(H.avecs_[j], H.ubasis_[j]);
  std::vector<Vec> drows;
  for (std::size_t i = 0; i < p; ++i) {
    Vec e(m, Int(0));
    if (np > 0) {
      GElem proj = g_eval(nr.backward[i], pairs);
      if (!(proj.word == gens[i].word)) throw std::logic_error("nielsen backward expression mismatch");
      e = proj.avec;
    }
    drows.push_back(vec_sub(gens[i].avec, e));
  }
  H.L_ = Lattice::from_rows(drows, m);

  // expressions of the new basis over the original generators:
  // abelian rows first (solve b_k over the d_i and expand), then eta_j
  IntMat dmat = IntMat::from_rows(drows, m);
  for (std::size_t k = 0; k < H.L_.rank(); ++k) {
    AffineCoset sol = solve_linear(dmat, H.L_.basis().row(k));
    if (sol.is_empty()) throw std::logic_error("HNF row not in generator span");
    // t^{d_i} = g_i * nu_i(pairs)^{-1}, and pairs expand through eta
    Word expr(std::max<int>(1, static_cast<int>(p)));
    for (std::size_t i = 0; i < p; ++i) {
      const Int& mu = sol.offset()[i];
      if (mu == 0) continue;
      Word di_expr = Word::generator(std::max<int>(1, static_cast<int>(p)), static_cast<int>(i) + 1) *
                     substitute(nr.backward[i], nr.forward, std::max<int>(1, static_cast<int>(p))).inverse();
      if (!mu.fits_slong_p()) throw std::logic_error("expression exponent overflow");
      expr = expr * di_expr.power(mu.get_si());
    }
    H.basis_over_gens_.push_back(expr);
  }
  for (std::size_t j = 0; j < np; ++j) H.basis_over_gens_.push_back(nr.forward[j]);

  // expressions of the original generators over the basis:
  // g_i = t^{d_i} * nu_i(pairs) and d_i = sum lambda_k b_k
  const int bsyms = std::max<int>(1, static_cast<int>(H.size()));
  for (std::size_t i = 0; i < p; ++i) {
    auto lambda = H.L_.coordinates(drows[i]);
    if (!lambda) throw std::logic_error("kernel vector not in L");
    Word expr(bsyms);
    for (std::size_t k = 0; k < H.L_.rank(); ++k) {
      if (!(*lambda)[k].fits_slong_p()) throw std::logic_error("expression exponent overflow");
      expr = expr * Word::generator(bsyms, static_cast<int>(k) + 1).power((*lambda)[k].get_si());
    }
    // shift nu_i symbols past the abelian block
    Word nu = nr.backward[i];
    std::vector<int> shifted;
    for (int l : nu.letters()) {
      int s = std::abs(l) + static_cast<int>(H.L_.rank());
      shifted.push_back(l > 0 ? s : -s);
    }
    H.gens_over_basis_.push_back(expr * Word::from_letters(bsyms, shifted));
  }

  // membership machinery: Stallings graph of (u_i) plus the change of
  // basis between its tree basis and (u_i)
  H.graph_ = StallingsGraph::from_generators(H.ubasis_, n);
  if (H.graph_.graph_rank() != np) throw std::logic_error("nielsen basis is not free");
  if (np > 0) {
    std::vector<Word> u_over_graph;
    for (const Word& u : H.ubasis_) {
      auto e = H.graph_.express(u);
      if (!e) throw std::logic_error("basis word does not trace");
      u_over_graph.push_back(*e);
    }
    auto inv = invert_basis_map(u_over_graph);
    if (!inv) throw std::logic_error("basis change not invertible");
    H.graphbasis_over_u_ = *inv;
  }
  return H;
}

std::vector<GElem> GSubgroupBasis::basis_elements() const {
  std::vector<GElem> es;
  for (std::size_t k = 0; k < L_.rank(); ++k) es.emplace_back(L_.basis().row(k), Word(n_));
  for (std::size_t j = 0; j < ubasis_.size(); ++j) es.emplace_back(avecs_[j], ubasis_[j]);
  return es;
}

GElem GSubgroupBasis::basis_element(std::size_t i) const {
  if (i < L_.rank()) return GElem(L_.basis().row(i), Word(n_));
  return GElem(avecs_[i - L_.rank()], ubasis_[i - L_.rank()]);
}

GElem GSubgroupBasis::eval_basis_word(const Word& bword) const {
  GElem r = GElem::identity(m_, n_);
  for (int l : bword.letters()) {
    GElem b = basis_element(static_cast<std::size_t>(std::abs(l)) - 1);
    r = g_mul(r, l > 0 ? b : g_inv(b));
  }
  return r;
}

GElem GSubgroupBasis::eval_generator_word(const Word& gword) const {
  return gens_.empty() ? GElem::identity(m_, n_) : g_eval(gword, gens_);
}

std::optional<Word> GSubgroupBasis::express_free(const Word& w) const {
  if (w.rank() != n_) throw std::invalid_argument("express_free: rank mismatch");
  const int np = std::max<int>(1, static_cast<int>(ubasis_.size()));
  if (w.trivial()) return Word(np);
  auto eg = graph_.express(w);
  if (!eg) return std::nullopt;
  return substitute(*eg, graphbasis_over_u_, np);
}

AffineCoset GSubgroupBasis::abelian_completion(const Word& w) const {
  auto omega = express_free(w);
  if (!omega) return AffineCoset::empty(m_);
  Vec oab(ubasis_.size(), Int(0));
  for (int l : omega->letters()) {
    if (l > 0)
      oab[l - 1] += 1;
    else
      oab[-l - 1] -= 1;
  }
  return AffineCoset(vec_mul(oab, A_), L_);
}

std::optional<Word> GSubgroupBasis::membership(const GElem& g) const {
  if (g.m() != m_ || g.n() != n_) throw std::invalid_argument("membership: dimension mismatch");
  auto omega = express_free(g.word);
  if (!omega) return std::nullopt;
  Vec oab(ubasis_.size(), Int(0));
  for (int l : omega->letters()) {
    if (l > 0)
      oab[l - 1] += 1;
    else
      oab[-l - 1] -= 1;
  }
  Vec c = vec_mul(oab, A_);
  auto lambda = L_.coordinates(vec_sub(g.avec, c));
  if (!lambda) return std::nullopt;
  const int bsyms = std::max<int>(1, static_cast<int>(size()));
  Word expr(bsyms);
  for (std::size_t k = 0; k < L_.rank(); ++k) {
    if (!(*lambda)[k].fits_slong_p()) throw std::logic_error("expression exponent overflow");
    expr = expr * Word::generator(bsyms, static_cast<int>(k) + 1).power((*lambda)[k].get_si());
  }
  std::vector<int> shifted;
  for (int l : omega->letters()) {
    int s = std::abs(l) + static_cast<int>(L_.rank());
    shifted.push_back(l > 0 ? s : -s);
  }
  return expr * Word::from_letters(bsyms, shifted);
}

std::optional<GElem> is_conjugate(const GElem& g, const GElem& g2) {
  if (g.m() != g2.m() || g.n() != g2.n()) throw std::invalid_argument("is_conjugate: dimension mismatch");
  if (g.avec != g2.avec) return std::nullopt;
  auto [cu, pu] = g.word.cyclic_reduce();
  auto [cv, pv] = g2.word.cyclic_reduce();
  if (cu.length() != cv.length()) return std::nullopt;
  const auto& lu = cu.letters();
  std::size_t len = lu.size();
  // find a rotation with cu = w1^{-1} cv w1
  for (std::size_t k = 0; k < std::max<std::size_t>(len, 1); ++k) {
    std::vector<int> rot;
    rot.insert(rot.end(), cv.letters().begin() + k, cv.letters().end());
    rot.insert(rot.end(), cv.letters().begin(), cv.letters().begin() + k);
    if (rot != lu) continue;
    // cv = w1 cu w1^{-1} with w1 the first k letters of cv
    Word w1 = Word::from_letters(
        g.n(), std::vector<int>(cv.letters().begin(), cv.letters().begin() + k));
    // g2 = c^{-1} g c with c = pu w1^{-1} pv^{-1}
    return GElem(Vec(g.m(), Int(0)), pu * w1.inverse() * pv.inverse());
  }
  return std::nullopt;
}

bool iso_params(std::size_t m, int n, std::size_t m2, int n2) {
  if (n == 1) {
    m += 1;
    n = 0;
  }
  if (n2 == 1) {
    m2 += 1;
    n2 = 0;
  }
  return m == m2 && n == n2;
}

}  // namespace zmfn
