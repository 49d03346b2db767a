#include "zmfn/intlat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace zmfn {

IntMat IntMat::identity(std::size_t k) {
  IntMat m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec IntMat::row(std::size_t i) const {
  Vec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

std::vector<Vec> IntMat::row_list() const {
  std::vector<Vec> rs;
  rs.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) rs.push_back(row(i));
  return rs;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  IntMat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  IntMat r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
  IntMat r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

IntMat IntMat::transpose() const {
  IntMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool IntMat::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

void IntMat::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMat::negate_col(std::size_t i) {
  for (std::size_t r = 0; r < rows_; ++r) at(r, i) = -at(r, i);
}

void IntMat::add_row(std::size_t i, std::size_t j, const Int& c) {
  for (std::size_t k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void IntMat::add_col(std::size_t i, std::size_t j, const Int& c) {
  for (std::size_t k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
}

std::string IntMat::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
  }
  os << "]";
  return os.str();
}

Vec vec_mul(const Vec& v, const IntMat& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vec*mat shape mismatch");
  Vec r(m.cols(), Int(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m.at(i, j);
  }
  return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum shape mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector diff shape mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_neg(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Int vec_dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot shape mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

Int gcd_vec(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Vec bezout_coeffs(const Vec& v) {
  Vec c(v.size(), Int(0));
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int g2, s, t;
    mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) c[j] *= s;
    c[i] = t;
    g = g2;
  }
  return c;
}

ExtGcd ext_gcd(const Int& a, const Int& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int det(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

IntMat unimodular_inverse(const IntMat& m) {
  std::size_t k = m.rows();
  if (k != m.cols()) throw std::invalid_argument("unimodular_inverse: non-square");
  Int d = det(m);
  if (d != 1 && d != -1) throw std::invalid_argument("unimodular_inverse: determinant not +-1");
  IntMat adj(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      IntMat minor(k - 1, k - 1);
      for (std::size_t r = 0, rr = 0; r < k; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < k; ++c) {
          if (c == j) continue;
          minor.at(rr, cc) = m.at(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj.at(j, i) = d == 1 ? cof : -cof;
    }
  return adj;
}

IntMat unimodular_with_first_row(const Vec& v) {
  std::size_t k = v.size();
  if (gcd_vec(v) != 1) throw std::invalid_argument("unimodular_with_first_row: vector not primitive");
  SNFDecomp snf = smith_normal_form(IntMat::from_rows({v}, k));
  // v * V = +-e_1, so the first row of Vinv is +-v; fix the sign
  IntMat u = snf.Vinv;
  Vec ve = vec_mul(v, snf.V);
  if (ve[0] == -1)
    for (std::size_t j = 0; j < k; ++j) u.at(0, j) = -u.at(0, j);
  for (std::size_t j = 0; j < k; ++j)
    if (u.at(0, j) != v[j]) throw std::logic_error("first-row completion failed");
  return u;
}

namespace {

// floor quotient, used to reduce entries into [0, d)
Int fdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// truncating quotient
Int tdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SNFDecomp smith_normal_form(const IntMat& m) {
  std::size_t s = m.rows(), c = m.cols();
  SNFDecomp r;
  r.D = m;
  r.U = IntMat::identity(s);
  r.V = IntMat::identity(c);
  r.Vinv = IntMat::identity(c);
  IntMat& D = r.D;

  std::size_t t = 0;
  std::size_t bound = std::min(s, c);
  while (t < bound) {
    // locate a nonzero entry of minimal absolute value in the remaining block
    bool found = false;
    std::size_t bi = t, bj = t;
    Int best;
    for (std::size_t i = t; i < s; ++i)
      for (std::size_t j = t; j < c; ++j) {
        const Int& x = D.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (!found || ax < best) {
          found = true;
          best = ax;
          bi = i;
          bj = j;
        }
      }
    if (!found) break;

    D.swap_rows(t, bi);
    r.U.swap_rows(t, bi);
    D.swap_cols(t, bj);
    r.V.swap_cols(t, bj);
    r.Vinv.swap_rows(t, bj);

    // clear row t and column t; restart whenever a reduction leaves a remainder
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < s; ++i) {
        if (D.at(i, t) == 0) continue;
        Int q = tdiv_q(D.at(i, t), D.at(t, t));
        if (q != 0) {
          D.add_row(i, t, -q);
          r.U.add_row(i, t, -q);
        }
        if (D.at(i, t) != 0) {
          // remainder became the new, smaller pivot
          D.swap_rows(t, i);
          r.U.swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (D.at(t, j) == 0) continue;
        Int q = tdiv_q(D.at(t, j), D.at(t, t));
        if (q != 0) {
          D.add_col(j, t, -q);
          r.V.add_col(j, t, -q);
          r.Vinv.add_row(t, j, q);
        }
        if (D.at(t, j) != 0) {
          D.swap_cols(t, j);
          r.V.swap_cols(t, j);
          r.Vinv.swap_rows(t, j);
          clean = false;
        }
      }
    }

    // enforce divisibility of the remaining block by the pivot
    bool redo = false;
    for (std::size_t i = t + 1; i < s && !redo; ++i)
      for (std::size_t j = t + 1; j < c && !redo; ++j) {
        if (D.at(i, j) % D.at(t, t) != 0) {
          D.add_row(t, i, 1);
          r.U.add_row(t, i, 1);
          redo = true;
        }
      }
    if (redo) continue;  // re-run elimination at the same t

    if (D.at(t, t) < 0) {
      D.negate_col(t);
      r.V.negate_col(t);
      r.Vinv.negate_row(t);
    }
    ++t;
  }

  for (std::size_t i = 0; i < bound; ++i)
    if (D.at(i, i) != 0) r.divisors.push_back(D.at(i, i));
  return r;
}

namespace {

// Row Hermite normal form in place; returns the pivot columns.
std::vector<std::size_t> hnf_rows(IntMat& a) {
  std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    // euclid over the entries of this column at rows >= r
    while (true) {
      std::size_t best = rows;
      Int bestabs;
      for (std::size_t i = r; i < rows; ++i) {
        if (a.at(i, col) == 0) continue;
        Int ax = abs(a.at(i, col));
        if (best == rows || ax < bestabs) {
          best = i;
          bestabs = ax;
        }
      }
      if (best == rows) break;  // column clear below r
      a.swap_rows(r, best);
      bool again = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a.at(i, col) == 0) continue;
        Int q = tdiv_q(a.at(i, col), a.at(r, col));
        if (q != 0) a.add_row(i, r, -q);
        if (a.at(i, col) != 0) again = true;
      }
      if (!again) break;
    }
    if (a.at(r, col) == 0) continue;
    if (a.at(r, col) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = fdiv_q(a.at(i, col), a.at(r, col));
      if (q != 0) a.add_row(i, r, -q);
    }
    pivots.push_back(col);
    ++r;
  }
  // drop the zero rows at the bottom
  IntMat b(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) b.at(i, j) = a.at(i, j);
  a = b;
  return pivots;
}

}  // namespace

Lattice Lattice::from_rows(const std::vector<Vec>& rows, std::size_t ambient) {
  IntMat a = IntMat::from_rows(rows, ambient);
  hnf_rows(a);
  Lattice l(ambient);
  l.basis_ = a;
  return l;
}

Lattice Lattice::full(std::size_t ambient) {
  Lattice l(ambient);
  l.basis_ = IntMat::identity(ambient);
  return l;
}

bool Lattice::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

Vec Lattice::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("reduce: ambient mismatch");
  Vec w = v;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ambient_ && r < basis_.rows(); ++col) {
    if (basis_.at(r, col) == 0) continue;
    Int q = fdiv_q(w[col], basis_.at(r, col));
    if (q != 0)
      for (std::size_t j = col; j < ambient_; ++j) w[j] -= q * basis_.at(r, j);
    ++r;
  }
  return w;
}

std::optional<Vec> Lattice::coordinates(const Vec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("coordinates: ambient mismatch");
  Vec w = v;
  Vec x(basis_.rows(), Int(0));
  std::size_t r = 0;
  for (std::size_t col = 0; col < ambient_ && r < basis_.rows(); ++col) {
    if (basis_.at(r, col) == 0) continue;
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[col].get_mpz_t(),
                basis_.at(r, col).get_mpz_t());
    if (rem != 0) return std::nullopt;
    if (q != 0)
      for (std::size_t j = col; j < ambient_; ++j) w[j] -= q * basis_.at(r, j);
    x[r] = q;
    ++r;
  }
  if (!vec_is_zero(w)) return std::nullopt;
  return x;
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("lattice_sum: ambient mismatch");
  std::vector<Vec> rows = a.basis().row_list();
  for (auto& r : b.basis().row_list()) rows.push_back(r);
  return Lattice::from_rows(rows, a.ambient());
}

Lattice kernel_lattice(const IntMat& a) {
  // x*A = 0  <=>  x = y*U with y zero on the first rank(A) coordinates
  SNFDecomp snf = smith_normal_form(a);
  std::vector<Vec> rows;
  for (std::size_t i = snf.rank(); i < a.rows(); ++i) rows.push_back(snf.U.row(i));
  return Lattice::from_rows(rows, a.rows());
}

Lattice image_lattice(const IntMat& a) { return Lattice::from_rows(a.row_list(), a.cols()); }

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("lattice_intersect: ambient mismatch");
  std::size_t ra = a.rank(), rb = b.rank();
  // (y, z) with y*Ba - z*Bb = 0; the intersection is the image of the y part
  IntMat stacked(ra + rb, a.ambient());
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < a.ambient(); ++j) stacked.at(i, j) = a.basis().at(i, j);
  for (std::size_t i = 0; i < rb; ++i)
    for (std::size_t j = 0; j < a.ambient(); ++j) stacked.at(ra + i, j) = -b.basis().at(i, j);
  Lattice ker = kernel_lattice(stacked);
  std::vector<Vec> rows;
  for (auto& kr : ker.basis().row_list()) {
    Vec y(kr.begin(), kr.begin() + ra);
    rows.push_back(vec_mul(y, a.basis()));
  }
  return Lattice::from_rows(rows, a.ambient());
}

Lattice lattice_preimage(const IntMat& a, const Lattice& l) {
  if (a.cols() != l.ambient()) throw std::invalid_argument("lattice_preimage: shape mismatch");
  std::size_t p = a.rows(), rl = l.rank();
  IntMat stacked(p + rl, a.cols());
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) stacked.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < rl; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) stacked.at(p + i, j) = -l.basis().at(i, j);
  Lattice ker = kernel_lattice(stacked);
  std::vector<Vec> rows;
  for (auto& kr : ker.basis().row_list()) rows.emplace_back(kr.begin(), kr.begin() + p);
  return Lattice::from_rows(rows, p);
}

AffineCoset AffineCoset::empty(std::size_t ambient) { return AffineCoset(ambient); }

AffineCoset::AffineCoset(Vec offset, Lattice direction)
    : empty_(false), ambient_(direction.ambient()), direction_(std::move(direction)) {
  if (offset.size() != ambient_) throw std::invalid_argument("coset: ambient mismatch");
  offset_ = direction_.reduce(offset);
}

bool AffineCoset::contains(const Vec& v) const {
  if (empty_) return false;
  return direction_.contains(vec_sub(v, offset_));
}

AffineCoset solve_linear(const IntMat& a, const Vec& b) {
  if (a.cols() != b.size()) throw std::invalid_argument("solve_linear: shape mismatch");
  std::size_t p = a.rows(), mcols = a.cols();
  SNFDecomp snf = smith_normal_form(a);
  Vec c = vec_mul(b, snf.V);
  Vec y(p, Int(0));
  std::size_t r = snf.rank();
  for (std::size_t j = 0; j < mcols; ++j) {
    if (j < r) {
      if (c[j] % snf.divisors[j] != 0) return AffineCoset::empty(p);
      if (j < p) y[j] = c[j] / snf.divisors[j];
    } else if (c[j] != 0) {
      return AffineCoset::empty(p);
    }
  }
  Vec x0 = vec_mul(y, snf.U);
  std::vector<Vec> ker;
  for (std::size_t i = r; i < p; ++i) ker.push_back(snf.U.row(i));
  return AffineCoset(x0, Lattice::from_rows(ker, p));
}

AffineCoset coset_preimage(const IntMat& a, const AffineCoset& c) {
  std::size_t p = a.rows();
  if (c.is_empty()) return AffineCoset::empty(p);
  if (a.cols() != c.ambient()) throw std::invalid_argument("coset_preimage: shape mismatch");
  std::size_t rl = c.direction().rank();
  IntMat stacked(p + rl, a.cols());
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) stacked.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < rl; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) stacked.at(p + i, j) = -c.direction().basis().at(i, j);
  AffineCoset sol = solve_linear(stacked, c.offset());
  if (sol.is_empty()) return AffineCoset::empty(p);
  Vec x0(sol.offset().begin(), sol.offset().begin() + p);
  std::vector<Vec> rows;
  for (auto& kr : sol.direction().basis().row_list()) rows.emplace_back(kr.begin(), kr.begin() + p);
  return AffineCoset(x0, Lattice::from_rows(rows, p));
}

AffineCoset coset_intersect(const AffineCoset& c1, const AffineCoset& c2) {
  if (c1.ambient() != c2.ambient()) throw std::invalid_argument("coset_intersect: ambient mismatch");
  std::size_t amb = c1.ambient();
  if (c1.is_empty() || c2.is_empty()) return AffineCoset::empty(amb);
  std::size_t r1 = c1.direction().rank(), r2 = c2.direction().rank();
  IntMat stacked(r1 + r2, amb);
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < amb; ++j) stacked.at(i, j) = c1.direction().basis().at(i, j);
  for (std::size_t i = 0; i < r2; ++i)
    for (std::size_t j = 0; j < amb; ++j) stacked.at(r1 + i, j) = -c2.direction().basis().at(i, j);
  AffineCoset sol = solve_linear(stacked, vec_sub(c2.offset(), c1.offset()));
  if (sol.is_empty()) return AffineCoset::empty(amb);
  Vec alpha(sol.offset().begin(), sol.offset().begin() + r1);
  Vec x0 = vec_add(c1.offset(), vec_mul(alpha, c1.direction().basis()));
  return AffineCoset(x0, lattice_intersect(c1.direction(), c2.direction()));
}

std::optional<LatticeIndexData> lattice_index(const Lattice& l) {
  std::size_t m = l.ambient();
  if (l.rank() < m) return std::nullopt;
  SNFDecomp snf = smith_normal_form(l.basis());
  LatticeIndexData data;
  data.index = 1;
  for (auto& d : snf.divisors) data.index *= d;
  // residues r (0 <= r_i < d_i) mapped back through Vinv, odometer order
  Vec residue(m, Int(0));
  while (true) {
    data.reps.push_back(vec_mul(residue, snf.Vinv));
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      residue[pos] += 1;
      if (residue[pos] < snf.divisors[pos]) break;
      residue[pos] = 0;
      if (pos == 0) return data;
    }
    if (m == 0) return data;
  }
}

}  // namespace zmfn
