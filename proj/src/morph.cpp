#include "zmfn/morph.hpp"

#include <stdexcept>

namespace zmfn {

namespace {

IntMat mat_pow(const IntMat& q, long k) {
  IntMat r = IntMat::identity(q.rows());
  for (long i = 0; i < k; ++i) r = r * q;
  return r;
}

}  // namespace

FreeEndo::FreeEndo(int n, std::vector<Word> images) : n_(n), images_(std::move(images)), M_(n, n) {
  if (static_cast<int>(images_.size()) != n)
    throw std::invalid_argument("free endo needs one image per generator");
  std::vector<Vec> rows;
  for (const Word& w : images_) {
    if (w.rank() != n) throw std::invalid_argument("free endo image rank mismatch");
    rows.push_back(w.abelianization());
  }
  M_ = IntMat::from_rows(rows, n);
}

FreeEndo FreeEndo::identity(int n) {
  std::vector<Word> im;
  for (int i = 1; i <= n; ++i) im.push_back(Word::generator(n, i));
  return FreeEndo(n, std::move(im));
}

Word FreeEndo::apply(const Word& w) const { return substitute(w, images_, n_); }

FreeEndo FreeEndo::compose(const FreeEndo& then) const {
  if (n_ != then.n_) throw std::invalid_argument("free endo compose rank mismatch");
  std::vector<Word> im;
  for (const Word& w : images_) im.push_back(then.apply(w));
  return FreeEndo(n_, std::move(im));
}

bool FreeEndo::is_mono() const {
  StallingsGraph g = StallingsGraph::from_generators(images_, n_);
  return g.graph_rank() == static_cast<std::size_t>(n_);
}

bool FreeEndo::is_epi() const {
  StallingsGraph g = StallingsGraph::from_generators(images_, n_);
  for (int i = 1; i <= n_; ++i)
    if (!g.accepts(Word::generator(n_, i))) return false;
  return true;
}

std::optional<FreeEndo> FreeEndo::inverse() const {
  auto inv = invert_basis_map(images_);
  if (!inv) return std::nullopt;
  return FreeEndo(n_, *inv);
}

Endo::Endo(std::size_t m, int n, TypeIEndo data) : m_(m), n_(n), data_(std::move(data)) {
  const auto& d = type1();
  if (d.phi.n() != n || d.Q.rows() != m || d.Q.cols() != m ||
      d.P.rows() != static_cast<std::size_t>(n) || d.P.cols() != m)
    throw std::invalid_argument("type I endo shape mismatch");
}

Endo::Endo(std::size_t m, int n, TypeIIEndo data) : m_(m), n_(n), data_(std::move(data)) {
  const auto& d = type2();
  if (d.z.rank() != n || d.l.size() != m || d.h.size() != static_cast<std::size_t>(n) ||
      d.Q.rows() != m || d.Q.cols() != m || d.P.rows() != static_cast<std::size_t>(n) ||
      d.P.cols() != m)
    throw std::invalid_argument("type II endo shape mismatch");
  if (d.z.trivial()) throw std::invalid_argument("type II root must be nontrivial");
  if (word_root(d.z).second != 1) throw std::invalid_argument("type II root must not be a proper power");
  if (vec_is_zero(d.l)) throw std::invalid_argument("type II requires l != 0");
}

Endo Endo::identity(std::size_t m, int n) {
  return Endo(m, n, TypeIEndo{FreeEndo::identity(n), IntMat::identity(m),
                              IntMat(static_cast<std::size_t>(n), m)});
}

GElem Endo::x_image(int i) const {
  return endo_apply(*this, GElem(Vec(m_, Int(0)), Word::generator(n_, i)));
}

GElem Endo::t_image(std::size_t j) const {
  Vec a(m_, Int(0));
  a[j] = 1;
  return endo_apply(*this, GElem(a, Word(n_)));
}

std::vector<GElem> Endo::generator_images() const {
  std::vector<GElem> im;
  for (int i = 1; i <= n_; ++i) im.push_back(x_image(i));
  for (std::size_t j = 0; j < m_; ++j) im.push_back(t_image(j));
  return im;
}

bool Endo::operator==(const Endo& o) const {
  if (m_ != o.m_ || n_ != o.n_ || data_.index() != o.data_.index()) return false;
  if (is_type1()) {
    const auto &a = type1(), &b = o.type1();
    return a.phi == b.phi && a.Q == b.Q && a.P == b.P;
  }
  const auto &a = type2(), &b = o.type2();
  return a.z == b.z && a.l == b.l && a.h == b.h && a.Q == b.Q && a.P == b.P;
}

Endo endo_from_images(const std::vector<GElem>& ximages, const std::vector<GElem>& timages) {
  if (ximages.empty() && timages.empty()) throw std::invalid_argument("no generator images");
  const GElem& probe = ximages.empty() ? timages[0] : ximages[0];
  const std::size_t m = timages.size();
  const int n = static_cast<int>(ximages.size());
  for (const GElem& g : ximages)
    if (g.m() != m || g.n() != n) throw std::invalid_argument("image dimension mismatch");
  for (const GElem& g : timages)
    if (g.m() != m || g.n() != n) throw std::invalid_argument("image dimension mismatch");
  (void)probe;

  bool all_t_trivial = true;
  for (const GElem& g : timages)
    if (!g.word.trivial()) all_t_trivial = false;

  std::vector<Vec> qrows, prows;
  for (const GElem& g : timages) qrows.push_back(g.avec);
  for (const GElem& g : ximages) prows.push_back(g.avec);
  IntMat Q = IntMat::from_rows(qrows, m), P = IntMat::from_rows(prows, m);

  if (all_t_trivial) {
    std::vector<Word> im;
    for (const GElem& g : ximages) im.push_back(g.word);
    return Endo(m, n, TypeIEndo{FreeEndo(n, std::move(im)), std::move(Q), std::move(P)});
  }

  // some t-image has a nontrivial word: all free parts must be powers of
  // a common non-power root
  Word z(n);
  for (const GElem& g : timages)
    if (!g.word.trivial()) {
      z = word_root(g.word).first;
      break;
    }
  auto exponent_of = [&](const Word& w) -> Int {
    if (w.trivial()) return 0;
    auto [r, k] = word_root(w);
    if (r == z) return k;
    if (r == z.inverse()) return -k;
    throw std::invalid_argument("images do not commute: not an endomorphism");
  };
  Vec l, h;
  for (const GElem& g : timages) l.push_back(exponent_of(g.word));
  for (const GElem& g : ximages) h.push_back(exponent_of(g.word));
  return Endo(m, n, TypeIIEndo{z, std::move(l), std::move(h), std::move(Q), std::move(P)});
}

GElem endo_apply(const Endo& e, const GElem& g) {
  if (g.m() != e.m() || g.n() != e.n()) throw std::invalid_argument("endo_apply: dimension mismatch");
  Vec u = g.word.abelianization();
  if (e.is_type1()) {
    const auto& d = e.type1();
    Vec a = vec_add(vec_mul(g.avec, d.Q), vec_mul(u, d.P));
    return GElem(a, d.phi.apply(g.word));
  }
  const auto& d = e.type2();
  Vec a = vec_add(vec_mul(g.avec, d.Q), vec_mul(u, d.P));
  Int exp = vec_dot(g.avec, d.l) + vec_dot(u, d.h);
  if (!exp.fits_slong_p()) throw std::invalid_argument("endo_apply: exponent overflow");
  return GElem(a, d.z.power(exp.get_si()));
}

Endo endo_compose(const Endo& e, const Endo& e2) {
  if (e.m() != e2.m() || e.n() != e2.n()) throw std::invalid_argument("endo_compose: dimension mismatch");
  if (e.is_type1() && e2.is_type1()) {
    const auto &a = e.type1(), &b = e2.type1();
    return Endo(e.m(), e.n(),
                TypeIEndo{a.phi.compose(b.phi), a.Q * b.Q,
                          a.P * b.Q + a.phi.abelianization() * b.P});
  }
  // compositions involving type II: apply to generators and reclassify
  std::vector<GElem> xim, tim;
  for (int i = 1; i <= e.n(); ++i) xim.push_back(endo_apply(e2, e.x_image(i)));
  for (std::size_t j = 0; j < e.m(); ++j) tim.push_back(endo_apply(e2, e.t_image(j)));
  return endo_from_images(xim, tim);
}

Endo endo_power(const Endo& e, long k) {
  if (k < 1) throw std::invalid_argument("endo_power: k must be >= 1");
  if (e.is_type1()) {
    const auto& d = e.type1();
    FreeEndo phik = FreeEndo::identity(e.n());
    for (long i = 0; i < k; ++i) phik = phik.compose(d.phi);
    const IntMat& M = d.phi.abelianization();
    IntMat Pk(static_cast<std::size_t>(e.n()), e.m());
    for (long i = 1; i <= k; ++i) Pk = Pk + mat_pow(M, i - 1) * d.P * mat_pow(d.Q, k - i);
    return Endo(e.m(), e.n(), TypeIEndo{phik, mat_pow(d.Q, k), Pk});
  }
  Endo r = e;
  for (long i = 1; i < k; ++i) r = endo_compose(r, e);
  return r;
}

EndoFlags endo_flags(const Endo& e) {
  if (e.n() < 2) throw std::invalid_argument("endo_flags requires n >= 2");
  if (e.is_type2()) return {false, false, false};
  const auto& d = e.type1();
  Int dq = det(d.Q);
  bool mono = d.phi.is_mono() && dq != 0;
  bool epi = d.phi.is_epi() && (dq == 1 || dq == -1);
  return {mono, epi, mono && epi};
}

std::optional<Endo> endo_invert(const Endo& e) {
  if (e.is_type2()) return std::nullopt;
  const auto& d = e.type1();
  Int dq = det(d.Q);
  if (dq != 1 && dq != -1) return std::nullopt;
  auto phiinv = d.phi.inverse();
  if (!phiinv) return std::nullopt;
  IntMat qinv = unimodular_inverse(d.Q);
  IntMat minv = unimodular_inverse(d.phi.abelianization());
  IntMat p = minv * d.P * qinv;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) p.at(i, j) = -p.at(i, j);
  return Endo(e.m(), e.n(), TypeIEndo{*phiinv, qinv, p});
}

AutoDecomposition auto_decompose(const Endo& e) {
  auto flags = endo_flags(e);
  if (!flags.aut) throw std::invalid_argument("auto_decompose: not an automorphism");
  const auto& d = e.type1();
  IntMat qinv = unimodular_inverse(d.Q);
  Endo p_part(e.m(), e.n(), TypeIEndo{FreeEndo::identity(e.n()), IntMat::identity(e.m()), d.P * qinv});
  Endo q_part(e.m(), e.n(), TypeIEndo{FreeEndo::identity(e.n()), d.Q, IntMat(e.n(), e.m())});
  Endo phi_part(e.m(), e.n(), TypeIEndo{d.phi, IntMat::identity(e.m()), IntMat(e.n(), e.m())});
  return {p_part, q_part, phi_part};
}

Endo conj_endo(const GElem& g) {
  std::vector<Word> im;
  for (int i = 1; i <= g.n(); ++i) im.push_back(Word::generator(g.n(), i).conjugate(g.word));
  return Endo(g.m(), g.n(),
              TypeIEndo{FreeEndo(g.n(), std::move(im)), IntMat::identity(g.m()),
                        IntMat(static_cast<std::size_t>(g.n()), g.m())});
}

}  // namespace zmfn
