#include "zmfn/fixpt.hpp"

#include <stdexcept>

namespace zmfn {

namespace {

IntMat i_minus_q(const IntMat& q) {
  IntMat r = IntMat::identity(q.rows());
  return r - q;
}

// reduced words of length <= maxlen, by length then lex
std::vector<Word> enumerate_words(int rank, int maxlen) {
  std::vector<Word> all{Word(rank)};
  std::vector<Word> level{Word(rank)};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const Word& w : level)
      for (int x = 1; x <= rank; ++x)
        for (int sgn : {+1, -1}) {
          int l = sgn * x;
          if (!w.letters().empty() && w.letters().back() == -l) continue;
          std::vector<int> ls = w.letters();
          ls.push_back(l);
          next.push_back(Word::from_letters(rank, ls));
        }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

}  // namespace

GSubgroupBasis fix_type2(const Endo& e) {
  if (!e.is_type2()) throw std::invalid_argument("fix_type2: wrong variant");
  const auto& d = e.type2();
  const std::size_t m = e.m();
  Vec zab = d.z.abelianization();

  // unknowns (a, r) in Z^{m+1}; equations: a l^T + r(z h^T - 1) = 0 and
  // a(I_m - Q) = r z P
  IntMat sys(m + 1, 1 + m);
  for (std::size_t j = 0; j < m; ++j) sys.at(j, 0) = d.l[j];
  sys.at(m, 0) = vec_dot(zab, d.h) - 1;
  IntMat imq = i_minus_q(d.Q);
  Vec zp = vec_mul(zab, d.P);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < m; ++c) sys.at(j, 1 + c) = imq.at(j, c);
  for (std::size_t c = 0; c < m; ++c) sys.at(m, 1 + c) = -zp[c];

  Lattice sols = kernel_lattice(sys);
  std::vector<GElem> gens;
  for (const Vec& row : sols.basis().row_list()) {
    Vec a(row.begin(), row.begin() + m);
    const Int& r = row[m];
    if (!r.fits_slong_p()) throw std::logic_error("fix exponent overflow");
    gens.emplace_back(a, d.z.power(r.get_si()));
  }
  return GSubgroupBasis::compute(gens, m, e.n());
}

FixResult fix_type1(const Endo& e, const std::vector<Word>& fix_phi_basis, bool validate) {
  if (!e.is_type1()) throw std::invalid_argument("fix_type1: wrong variant");
  const auto& d = e.type1();
  const std::size_t m = e.m();
  const int n = e.n();
  const std::size_t p = fix_phi_basis.size();
  if (validate)
    for (const Word& v : fix_phi_basis)
      if (!(d.phi.apply(v) == v)) throw std::invalid_argument("fix basis word is not fixed by phi");

  FixResult res;
  std::vector<Vec> rho_rows;
  for (const Word& v : fix_phi_basis) rho_rows.push_back(v.abelianization());
  res.cert.im_rho = Lattice::from_rows(rho_rows, n);
  std::vector<Vec> p_rows;
  for (const Vec& r : rho_rows) p_rows.push_back(vec_mul(r, d.P));
  res.cert.im_p_prime = Lattice::from_rows(p_rows, m);
  IntMat imq = i_minus_q(d.Q);
  res.cert.m_lat = image_lattice(imq);
  res.cert.n_lat = lattice_intersect(res.cert.m_lat, res.cert.im_p_prime);
  res.cert.n_pre = lattice_intersect(res.cert.im_rho, lattice_preimage(d.P, res.cert.n_lat));

  if (p == 0)
    res.cert.condition = 1;
  else if (res.cert.n_lat.rank() == res.cert.im_p_prime.rank())
    res.cert.condition = 3;
  else if (p == 1 && !vec_is_zero(rho_rows[0]) && res.cert.n_pre.rank() == 0)
    res.cert.condition = 2;
  else {
    res.cert.condition = 0;
    res.finitely_generated = false;
    return res;
  }
  res.finitely_generated = true;

  std::vector<GElem> gens;
  for (const Vec& b : kernel_lattice(imq).basis().row_list()) gens.emplace_back(b, Word(n));

  if (res.cert.condition == 3 && p > 0) {
    // coset representatives of N P'^{-1} in Im rho', via coordinates in
    // the HNF basis of Im rho'
    const Lattice& imr = res.cert.im_rho;
    std::size_t rr = imr.rank();
    std::vector<Vec> coord_rows;
    for (const Vec& row : res.cert.n_pre.basis().row_list()) {
      auto c = imr.coordinates(row);
      if (!c) throw std::logic_error("n_pre not inside im_rho");
      coord_rows.push_back(*c);
    }
    Lattice inner = Lattice::from_rows(coord_rows, rr);
    auto idx = lattice_index(inner);
    if (!idx) throw std::logic_error("condition 3 without finite index");
    std::vector<Vec> reps;
    for (const Vec& r : idx->reps) reps.push_back(vec_mul(r, imr.basis()));

    auto in_npre = [&](const Vec& v) { return res.cert.n_pre.contains(v); };
    auto find_rep = [&](const Vec& v) {
      for (std::size_t k = 0; k < reps.size(); ++k)
        if (in_npre(vec_sub(v, reps[k]))) return static_cast<int>(k);
      throw std::logic_error("fix residue not matched");
    };
    int bp = find_rep(Vec(static_cast<std::size_t>(n), Int(0)));

    std::vector<std::vector<int>> out(reps.size(), std::vector<int>(p, -1));
    std::vector<std::vector<int>> in(reps.size(), std::vector<int>(p, -1));
    for (std::size_t k = 0; k < reps.size(); ++k)
      for (std::size_t j = 0; j < p; ++j) {
        out[k][j] = find_rep(vec_add(reps[k], rho_rows[j]));
        in[out[k][j]][j] = static_cast<int>(k);
      }

    const int vsyms = static_cast<int>(p);
    std::vector<Word> tree(reps.size(), Word(vsyms));
    std::vector<bool> seen(reps.size(), false);
    std::vector<std::vector<bool>> is_tree(reps.size(), std::vector<bool>(p, false));
    std::vector<int> order;
    seen[bp] = true;
    order.push_back(bp);
    for (std::size_t head = 0; head < order.size(); ++head) {
      int v = order[head];
      for (std::size_t j = 0; j < p; ++j)
        for (int sgn : {+1, -1}) {
          int w = sgn > 0 ? out[v][j] : in[v][j];
          if (w < 0 || seen[w]) continue;
          seen[w] = true;
          tree[w] = tree[v] * Word::generator(vsyms, static_cast<int>(j) + 1, sgn < 0);
          is_tree[sgn > 0 ? v : w][j] = true;
          order.push_back(w);
        }
    }
    for (std::size_t k = 0; k < reps.size(); ++k)
      for (std::size_t j = 0; j < p; ++j) {
        if (is_tree[k][j]) continue;
        Word kappa = tree[k] * Word::generator(vsyms, static_cast<int>(j) + 1) *
                     tree[out[k][j]].inverse();
        Word g = substitute(kappa, fix_phi_basis, n);
        // splitting offset: a(I_m - Q) = (g rho) P
        AffineCoset sol = solve_linear(imq, vec_mul(g.abelianization(), d.P));
        if (sol.is_empty()) throw std::logic_error("fix splitting has no solution");
        gens.emplace_back(sol.offset(), g);
      }
  }

  res.basis = GSubgroupBasis::compute(gens, m, n);
  return res;
}

std::vector<GElem> fix_bruteforce(const Endo& e, int max_word_len, int max_coeff) {
  if (max_word_len < 0 || max_coeff < 0) throw std::invalid_argument("fix_bruteforce: negative bound");
  const std::size_t m = e.m();
  std::vector<GElem> fixed;
  std::vector<Word> words = enumerate_words(e.n(), max_word_len);
  // odometer over the coefficient box, first coordinate slowest
  for (const Word& w : words) {
    Vec a(m, Int(-max_coeff));
    while (true) {
      GElem g(a, w);
      if (endo_apply(e, g) == g) fixed.push_back(g);
      std::size_t pos = m;
      bool done = m == 0;
      while (pos > 0) {
        --pos;
        a[pos] += 1;
        if (a[pos] <= max_coeff) break;
        a[pos] = -max_coeff;
        if (pos == 0) done = true;
      }
      if (done) break;
    }
  }
  return fixed;
}

}  // namespace zmfn
