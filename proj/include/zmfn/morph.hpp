#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "zmfn/group.hpp"

namespace zmfn {

/// Endomorphism of F_n given by the images of the generators, with the
/// abelianization matrix cached.
class FreeEndo {
 public:
  FreeEndo(int n, std::vector<Word> images);
  static FreeEndo identity(int n);

  int n() const { return n_; }
  const std::vector<Word>& images() const { return images_; }
  const IntMat& abelianization() const { return M_; }

  Word apply(const Word& w) const;
  FreeEndo compose(const FreeEndo& then) const;  // this, then the argument

  bool is_mono() const;
  bool is_epi() const;
  bool is_auto() const { return is_epi(); }  // F_n is hopfian
  std::optional<FreeEndo> inverse() const;

  bool operator==(const FreeEndo& o) const { return n_ == o.n_ && images_ == o.images_; }

 private:
  int n_;
  std::vector<Word> images_;
  IntMat M_;
};

/// Type I endomorphism of Z^m x F_n: t^a u -> t^{aQ + uP} (u)phi.
struct TypeIEndo {
  FreeEndo phi;
  IntMat Q;  // m x m
  IntMat P;  // n x m
};

/// Type II endomorphism: t^a u -> t^{aQ + uP} z^{a l^T + u h^T} with z
/// not a proper power and l != 0.
struct TypeIIEndo {
  Word z;
  Vec l;  // Z^m, nonzero
  Vec h;  // Z^n
  IntMat Q;
  IntMat P;
};

class Endo {
 public:
  Endo(std::size_t m, int n, TypeIEndo data);
  Endo(std::size_t m, int n, TypeIIEndo data);
  static Endo identity(std::size_t m, int n);

  std::size_t m() const { return m_; }
  int n() const { return n_; }
  bool is_type1() const { return std::holds_alternative<TypeIEndo>(data_); }
  bool is_type2() const { return std::holds_alternative<TypeIIEndo>(data_); }
  const TypeIEndo& type1() const { return std::get<TypeIEndo>(data_); }
  const TypeIIEndo& type2() const { return std::get<TypeIIEndo>(data_); }

  GElem x_image(int i) const;  // image of x_i
  GElem t_image(std::size_t j) const;
  std::vector<GElem> generator_images() const;  // x_1..x_n then t_1..t_m

  bool operator==(const Endo& o) const;

 private:
  std::size_t m_;
  int n_;
  std::variant<TypeIEndo, TypeIIEndo> data_;
};

/// Classify generator images into a type I or type II endomorphism;
/// throws std::invalid_argument when they define no endomorphism.
Endo endo_from_images(const std::vector<GElem>& ximages, const std::vector<GElem>& timages);

GElem endo_apply(const Endo& e, const GElem& g);
/// e then e2
Endo endo_compose(const Endo& e, const Endo& e2);
Endo endo_power(const Endo& e, long k);  // k >= 1

struct EndoFlags {
  bool mono, epi, aut;
};
EndoFlags endo_flags(const Endo& e);  // requires n >= 2

std::optional<Endo> endo_invert(const Endo& e);

/// factors (P-part, Q-part, phi-part) composing in that order to e
struct AutoDecomposition {
  Endo p_part, q_part, phi_part;
};
AutoDecomposition auto_decompose(const Endo& e);  // requires e automorphism

/// right conjugation h -> g^{-1} h g
Endo conj_endo(const GElem& g);

}  // namespace zmfn
