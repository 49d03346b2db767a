#include "zmfn/whp.hpp"

#include <stdexcept>

namespace zmfn {

namespace {

// Q with a Q = target, both nonzero, det Q != 0; unimodular when the
// gcds agree. Built through completions of the primitive parts.
IntMat stretch_matrix(const Vec& a, const Vec& target) {
  std::size_t m = a.size();
  Int alpha = gcd_vec(a);
  Vec a0(m);
  for (std::size_t j = 0; j < m; ++j) a0[j] = a[j] / alpha;
  Int g = gcd_vec(target);
  if (g % alpha != 0) throw std::logic_error("stretch_matrix: gcd does not divide");
  Vec x0(m);
  for (std::size_t j = 0; j < m; ++j) x0[j] = target[j] / g;
  IntMat ua = unimodular_with_first_row(a0);
  IntMat ux = unimodular_with_first_row(x0);
  // scale the first row of ux by g/alpha
  Int scale = g / alpha;
  for (std::size_t j = 0; j < m; ++j) ux.at(0, j) *= scale;
  return unimodular_inverse(ua) * ux;
}

// P with u P = target, where gcd(u) divides every entry of target
IntMat lift_matrix(const Vec& u, const Vec& target, std::size_t m) {
  std::size_t n = u.size();
  IntMat p(n, m);
  Int mu = gcd_vec(u);
  if (mu == 0) {
    if (!vec_is_zero(target)) throw std::logic_error("lift_matrix: unreachable target");
    return p;
  }
  Vec c = bezout_coeffs(u);  // u . c = mu
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) p.at(i, j) = c[i] * (target[j] / mu);
  return p;
}

// abelian part of an automorphism witness: Q in GL_m and P with
// a Q + u P = b; nullopt when impossible
std::optional<std::pair<IntMat, IntMat>> solve_abelian_auto(const Vec& a, const Vec& u,
                                                            const Vec& b) {
  std::size_t m = a.size();
  Int alpha = gcd_vec(a), mu = gcd_vec(u);
  if (vec_is_zero(u)) {
    // a Q = b with gcd preserved
    if (gcd_vec(b) != alpha) return std::nullopt;
    if (vec_is_zero(a)) return std::make_pair(IntMat::identity(m), IntMat(u.size(), m));
    return std::make_pair(stretch_matrix(a, b), IntMat(u.size(), m));
  }
  if (vec_is_zero(a)) {
    // u P = b
    for (const Int& bj : b)
      if (bj % mu != 0) return std::nullopt;
    return std::make_pair(IntMat::identity(m), lift_matrix(u, b, m));
  }
  // general case: alpha x_j + mu y_j = b_j with gcd(x) = 1
  ExtGcd e = ext_gcd(alpha, mu);
  for (const Int& bj : b)
    if (bj % e.g != 0) return std::nullopt;
  Int mup = mu / e.g;
  Vec x0(m), y0(m);
  for (std::size_t j = 0; j < m; ++j) {
    x0[j] = e.s * (b[j] / e.g);
    y0[j] = e.t * (b[j] / e.g);
  }
  if (m == 1) {
    // gcd(x) = 1 forces x = +-1
    for (int sx : {+1, -1}) {
      Int rem = b[0] - sx * alpha;
      if (rem % mu == 0) {
        Vec uy{rem};
        return std::make_pair(stretch_matrix(a, Vec{sx * alpha}), lift_matrix(u, uy, 1));
      }
    }
    return std::nullopt;
  }
  Vec test = x0;
  test.push_back(mup);
  if (gcd_vec(test) != 1) return std::nullopt;
  // shift x_m (or x_1 when the prefix is all zero) to reach gcd 1
  Vec x = x0, y = y0;
  Vec prefix(x0.begin(), x0.end() - 1);
  Int gpref = gcd_vec(prefix);
  if (gpref == 0) {
    x[0] += mup;
    y[0] -= alpha / e.g;
  } else {
    // product of the primes dividing the prefix gcd but not x_m
    Int lambda = 1, rest = abs(gpref);
    for (Int f = 2; f * f <= rest; ++f)
      while (rest % f == 0) {
        if (x0[m - 1] % f != 0 && lambda % f != 0) lambda *= f;
        rest /= f;
      }
    if (rest > 1 && x0[m - 1] % rest != 0) lambda *= rest;
    x[m - 1] += lambda * mup;
    y[m - 1] -= lambda * (alpha / e.g);
  }
  if (gcd_vec(x) != 1) throw std::logic_error("auto witness: gcd normalization failed");
  Vec ax(m), uy(m);
  for (std::size_t j = 0; j < m; ++j) {
    ax[j] = alpha * x[j];
    uy[j] = mu * y[j];
  }
  return std::make_pair(stretch_matrix(a, ax), lift_matrix(u, uy, m));
}

// Q (det != 0) and P with a Q + u P = b; nullopt when impossible
std::optional<std::pair<IntMat, IntMat>> solve_abelian_mono(const Vec& a, const Vec& u,
                                                            const Vec& b) {
  std::size_t m = a.size();
  Int alpha = gcd_vec(a), mu = gcd_vec(u);
  if (vec_is_zero(a)) {
    for (const Int& bj : b)
      if (mu == 0 ? bj != 0 : bj % mu != 0) return std::nullopt;
    return std::make_pair(IntMat::identity(m), lift_matrix(u, b, m));
  }
  if (vec_is_zero(u)) {
    // a Q = b, b != 0, alpha | gcd(b)
    if (vec_is_zero(b)) return std::nullopt;
    for (const Int& bj : b)
      if (bj % alpha != 0) return std::nullopt;
    return std::make_pair(stretch_matrix(a, b), IntMat(u.size(), m));
  }
  ExtGcd e = ext_gcd(alpha, mu);
  for (const Int& bj : b)
    if (bj % e.g != 0) return std::nullopt;
  Vec x(m), y(m);
  for (std::size_t j = 0; j < m; ++j) {
    x[j] = e.s * (b[j] / e.g);
    y[j] = e.t * (b[j] / e.g);
  }
  if (vec_is_zero(x)) {
    x[0] += mu / e.g;
    y[0] -= alpha / e.g;
  }
  Vec ax(m), uy(m);
  for (std::size_t j = 0; j < m; ++j) {
    ax[j] = alpha * x[j];
    uy[j] = mu * y[j];
  }
  return std::make_pair(stretch_matrix(a, ax), lift_matrix(u, uy, m));
}

// arbitrary Q and P with a Q + u P = b; nullopt when impossible
std::optional<std::pair<IntMat, IntMat>> solve_abelian_endo(const Vec& a, const Vec& u,
                                                            const Vec& b) {
  std::size_t m = a.size();
  Int alpha = gcd_vec(a), mu = gcd_vec(u);
  Int d;
  mpz_gcd(d.get_mpz_t(), alpha.get_mpz_t(), mu.get_mpz_t());
  for (const Int& bj : b)
    if (d == 0 ? bj != 0 : bj % d != 0) return std::nullopt;
  IntMat q(m, m), p(u.size(), m);
  if (d == 0) return std::make_pair(q, p);
  ExtGcd e = ext_gcd(alpha, mu);
  Vec ax(m), uy(m);
  for (std::size_t j = 0; j < m; ++j) {
    ax[j] = alpha * e.s * (b[j] / e.g);
    uy[j] = mu * e.t * (b[j] / e.g);
  }
  if (alpha != 0) {
    Vec c = bezout_coeffs(a);  // a . c = alpha
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) q.at(i, j) = c[i] * (ax[j] / alpha);
  }
  if (mu != 0) p = lift_matrix(u, uy, m);
  return std::make_pair(q, p);
}

// l != 0 and h with a l^T + u h^T = e; nullopt when l = 0 is forced
std::optional<std::pair<Vec, Vec>> solve_exponent_form(const Vec& a, const Vec& u, const Int& e) {
  std::size_t m = a.size(), n = u.size();
  Int alpha = gcd_vec(a), mu = gcd_vec(u);
  if (vec_is_zero(a)) {
    if (mu == 0 ? e != 0 : e % mu != 0) return std::nullopt;
    Vec l(m, Int(0)), h(n, Int(0));
    if (m == 0) return std::nullopt;  // no room for l != 0
    l[0] = 1;
    if (mu != 0) {
      Vec c = bezout_coeffs(u);
      for (std::size_t i = 0; i < n; ++i) h[i] = c[i] * (e / mu);
    }
    return std::make_pair(l, h);
  }
  ExtGcd g = ext_gcd(alpha, mu);
  if (e % g.g != 0) return std::nullopt;
  Vec ca = bezout_coeffs(a);
  Vec cu = mu == 0 ? Vec(n, Int(0)) : bezout_coeffs(u);
  Vec l(m), h(n);
  for (std::size_t j = 0; j < m; ++j) l[j] = ca[j] * g.s * (e / g.g);
  for (std::size_t i = 0; i < n; ++i) h[i] = cu[i] * g.t * (e / g.g);
  if (vec_is_zero(l)) {
    if (m >= 2) {
      // shift by a kernel vector of a . l^T
      Lattice ker = kernel_lattice(IntMat::from_rows({a}, a.size()).transpose());
      if (ker.rank() == 0) throw std::logic_error("kernel of nonzero form must be positive rank");
      l = vec_add(l, ker.basis().row(0));
    } else if (mu != 0) {
      for (std::size_t j = 0; j < m; ++j) l[j] += ca[j] * (mu / g.g);
      for (std::size_t i = 0; i < n; ++i) h[i] -= cu[i] * (alpha / g.g);
    } else {
      return std::nullopt;
    }
  }
  if (vec_dot(a, l) + vec_dot(u, h) != e) throw std::logic_error("exponent form solve failed");
  return std::make_pair(l, h);
}

WhpAnswer verified_yes(Endo witness, const GElem& g, const GElem& g2) {
  if (!(endo_apply(witness, g) == g2)) throw std::logic_error("whp witness failed verification");
  return WhpAnswer::yes(std::move(witness));
}

}  // namespace

WhpCertificate whp_certificate(const GElem& g, const GElem& g2) {
  if (g.m() != g2.m() || g.n() != g2.n()) throw std::invalid_argument("whp: dimension mismatch");
  WhpCertificate c;
  Vec u = g.word.abelianization();
  c.alpha = gcd_vec(g.avec);
  c.mu = gcd_vec(u);
  Vec all = g.avec;
  all.insert(all.end(), u.begin(), u.end());
  c.d = gcd_vec(all);
  ExtGcd e = ext_gcd(c.alpha, c.mu);
  c.rho = e.g;
  if (c.rho != 0) {
    bool solvable = true;
    for (const Int& bj : g2.avec)
      if (bj % c.rho != 0) solvable = false;
    if (solvable)
      for (const Int& bj : g2.avec) {
        c.x0.push_back(e.s * (bj / c.rho));
        c.y0.push_back(e.t * (bj / c.rho));
      }
  }
  return c;
}

FreeOracle whitehead_auto_oracle(int n) {
  return {FreeOracle::Capability::Auto, [n](const Word& u, const Word& v) -> FreeOracle::Result {
            if (u.rank() != n || v.rank() != n) throw std::invalid_argument("oracle rank mismatch");
            auto phi = whp_auto_free(u, v);
            if (phi) return {FreeOracle::Result::Verdict::Yes, *phi};
            return {FreeOracle::Result::Verdict::No, std::nullopt};
          }};
}

FreeOracle bounded_search_oracle(int n, FreeOracle::Capability cap, int bound) {
  return {cap, [n, cap, bound](const Word& u, const Word& v) -> FreeOracle::Result {
            using R = FreeOracle::Result;
            if (u.trivial() && v.trivial()) return {R::Verdict::Yes, FreeEndo::identity(n)};
            if (u.trivial() && !v.trivial()) return {R::Verdict::No, std::nullopt};
            if (cap != FreeOracle::Capability::Endo && !u.trivial() && v.trivial())
              return {R::Verdict::No, std::nullopt};
            // enumerate image tuples of total length <= bound
            std::vector<std::vector<Word>> by_len{{Word(n)}};
            for (int len = 1; len <= bound; ++len) {
              std::vector<Word> level;
              for (const Word& w : by_len[len - 1])
                for (int x = 1; x <= n; ++x)
                  for (int sgn : {+1, -1}) {
                    if (!w.letters().empty() && w.letters().back() == -sgn * x) continue;
                    std::vector<int> ls = w.letters();
                    ls.push_back(sgn * x);
                    level.push_back(Word::from_letters(n, ls));
                  }
              by_len.push_back(std::move(level));
            }
            std::vector<Word> images(n, Word(n));
            std::function<std::optional<FreeEndo>(int, int)> rec =
                [&](int i, int budget) -> std::optional<FreeEndo> {
              if (i == n) {
                FreeEndo phi(n, images);
                if (!(phi.apply(u) == v)) return std::nullopt;
                if (cap == FreeOracle::Capability::Mono && !phi.is_mono()) return std::nullopt;
                if (cap == FreeOracle::Capability::Auto && !phi.is_epi()) return std::nullopt;
                return phi;
              }
              for (int len = 0; len <= budget; ++len)
                for (const Word& w : by_len[len]) {
                  images[i] = w;
                  if (auto r = rec(i + 1, budget - len)) return r;
                }
              return std::nullopt;
            };
            if (auto phi = rec(0, bound)) return {R::Verdict::Yes, *phi};
            return {R::Verdict::Abstain, std::nullopt};
          }};
}

WhpAnswer whp_auto(const GElem& g, const GElem& g2) {
  if (g.m() != g2.m() || g.n() != g2.n()) throw std::invalid_argument("whp: dimension mismatch");
  if (g.n() < 2) throw std::invalid_argument("whp requires n >= 2");
  if (g.word.trivial() != g2.word.trivial()) return WhpAnswer::no();
  auto phi = whp_auto_free(g.word, g2.word);
  if (!phi) return WhpAnswer::no();
  auto qp = solve_abelian_auto(g.avec, g.word.abelianization(), g2.avec);
  if (!qp) return WhpAnswer::no();
  Endo w(g.m(), g.n(), TypeIEndo{*phi, qp->first, qp->second});
  return verified_yes(std::move(w), g, g2);
}

WhpAnswer whp_mono(const GElem& g, const GElem& g2, const FreeOracle& oracle) {
  if (g.m() != g2.m() || g.n() != g2.n()) throw std::invalid_argument("whp: dimension mismatch");
  if (g.n() < 2) throw std::invalid_argument("whp requires n >= 2");
  auto qp = solve_abelian_mono(g.avec, g.word.abelianization(), g2.avec);
  if (!qp) return WhpAnswer::no();
  auto r = oracle.query(g.word, g2.word);
  if (r.verdict == FreeOracle::Result::Verdict::No) return WhpAnswer::no();
  if (r.verdict == FreeOracle::Result::Verdict::Abstain)
    return WhpAnswer::unknown("free monomorphism oracle abstained");
  Endo w(g.m(), g.n(), TypeIEndo{*r.endo, qp->first, qp->second});
  return verified_yes(std::move(w), g, g2);
}

WhpAnswer whp_endo(const GElem& g, const GElem& g2, const FreeOracle& oracle) {
  if (g.m() != g2.m() || g.n() != g2.n()) throw std::invalid_argument("whp: dimension mismatch");
  if (g.n() < 2) throw std::invalid_argument("whp requires n >= 2");
  Vec u = g.word.abelianization();

  // type II branch: fully decidable
  auto qp = solve_abelian_endo(g.avec, u, g2.avec);
  if (qp) {
    Vec all = g.avec;
    all.insert(all.end(), u.begin(), u.end());
    Int d = gcd_vec(all);
    std::optional<Word> z;
    Int e = 0;
    if (g2.word.trivial()) {
      z = Word::generator(g.n(), 1);
    } else if (d > 0) {
      auto [root, k] = word_root(g2.word);
      if (k % d == 0) {
        z = root;
        e = k;
      }
    }
    if (z) {
      auto lh = solve_exponent_form(g.avec, u, e);
      if (lh) {
        Endo w(g.m(), g.n(), TypeIIEndo{*z, lh->first, lh->second, qp->first, qp->second});
        return verified_yes(std::move(w), g, g2);
      }
    }
  }

  // type I branch
  if (!qp) return WhpAnswer::no();
  auto r = oracle.query(g.word, g2.word);
  if (r.verdict == FreeOracle::Result::Verdict::No) return WhpAnswer::no();
  if (r.verdict == FreeOracle::Result::Verdict::Abstain)
    return WhpAnswer::unknown("free endomorphism oracle abstained");
  Endo w(g.m(), g.n(), TypeIEndo{*r.endo, qp->first, qp->second});
  return verified_yes(std::move(w), g, g2);
}

}  // namespace zmfn
