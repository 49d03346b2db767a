#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace zmfn {

using Int = mpz_class;
using Vec = std::vector<Int>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
/// Vectors are rows and matrices act on the right: v -> v*M.
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

  static IntMat identity(std::size_t k);
  static IntMat from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  std::vector<Vec> row_list() const;

  IntMat operator*(const IntMat& o) const;
  IntMat operator+(const IntMat& o) const;
  IntMat operator-(const IntMat& o) const;
  bool operator==(const IntMat& o) const = default;

  IntMat transpose() const;
  bool is_zero() const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);
  /// row i += c * row j
  void add_row(std::size_t i, std::size_t j, const Int& c);
  /// col i += c * col j
  void add_col(std::size_t i, std::size_t j, const Int& c);

  std::string str() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> e_;
};

Vec vec_mul(const Vec& v, const IntMat& m);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_neg(const Vec& a);
Int vec_dot(const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& v);
std::string vec_str(const Vec& v);

/// gcd of the entries, gcd() of the zero vector being 0.
Int gcd_vec(const Vec& v);

/// c with <v, c> = gcd_vec(v)
Vec bezout_coeffs(const Vec& v);

/// (g, s, t) with a s + b t = g = gcd(a, b)
struct ExtGcd {
  Int g, s, t;
};
ExtGcd ext_gcd(const Int& a, const Int& b);

/// Determinant by fraction-free (Bareiss) elimination.
Int det(const IntMat& m);

/// Inverse of a matrix with determinant +-1.
IntMat unimodular_inverse(const IntMat& m);

/// A unimodular matrix whose first row is the given primitive vector.
IntMat unimodular_with_first_row(const Vec& v);

/// Smith normal form U*M*V = D with U, V unimodular and the diagonal
/// divisor chain d_1 | d_2 | ... | d_r, all positive.
struct SNFDecomp {
  IntMat U, D, V;
  IntMat Vinv;  // V * Vinv = I, kept for residue enumeration
  std::vector<Int> divisors;
  std::size_t rank() const { return divisors.size(); }
};

SNFDecomp smith_normal_form(const IntMat& m);

/// A sublattice of Z^ambient. The basis is kept in row Hermite normal
/// form (positive pivots, entries above a pivot reduced into [0, pivot)),
/// which is unique, so equal lattices compare equal structurally.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  static Lattice from_rows(const std::vector<Vec>& rows, std::size_t ambient);
  static Lattice full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMat& basis() const { return basis_; }

  bool contains(const Vec& v) const;
  /// canonical residue of v modulo the lattice
  Vec reduce(const Vec& v) const;
  /// x with x * basis() = v, if v is in the lattice
  std::optional<Vec> coordinates(const Vec& v) const;

  bool operator==(const Lattice& o) const = default;

 private:
  std::size_t ambient_;
  IntMat basis_;
};

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
/// {x in Z^p : x*A in L} for A of shape p x m, L in Z^m
Lattice lattice_preimage(const IntMat& a, const Lattice& l);
/// {x : x*A = 0}
Lattice kernel_lattice(const IntMat& a);
/// row space of A as a lattice in Z^cols
Lattice image_lattice(const IntMat& a);

/// Empty set or offset + lattice; the offset is reduced modulo the
/// direction lattice so that equal cosets compare equal.
class AffineCoset {
 public:
  static AffineCoset empty(std::size_t ambient);
  AffineCoset(Vec offset, Lattice direction);

  bool is_empty() const { return empty_; }
  std::size_t ambient() const { return ambient_; }
  const Vec& offset() const { return offset_; }
  const Lattice& direction() const { return direction_; }

  bool contains(const Vec& v) const;
  bool operator==(const AffineCoset& o) const = default;

 private:
  explicit AffineCoset(std::size_t ambient)
      : empty_(true), ambient_(ambient), direction_(ambient) {}
  bool empty_;
  std::size_t ambient_;
  Vec offset_;
  Lattice direction_;
};

/// {x in Z^p : x*A = b} for A of shape p x m
AffineCoset solve_linear(const IntMat& a, const Vec& b);
/// {x in Z^p : x*A in C}
AffineCoset coset_preimage(const IntMat& a, const AffineCoset& c);
AffineCoset coset_intersect(const AffineCoset& c1, const AffineCoset& c2);

struct LatticeIndexData {
  Int index;
  std::vector<Vec> reps;  // one representative per residue class
};

/// Index of L in Z^ambient with coset representatives; absent when the
/// rank is deficient (infinite index).
std::optional<LatticeIndexData> lattice_index(const Lattice& l);

}  // namespace zmfn
