#pragma once

#include <functional>
#include <optional>
#include <string>

#include "zmfn/morph.hpp"
#include "zmfn/whitehead.hpp"

namespace zmfn {

/// Abelian-part data of a Whitehead problem instance: the gcds of the
/// source vector and word abelianization, and the per-coordinate
/// particular solutions of alpha x_j + mu y_j = b_j when they exist.
struct WhpCertificate {
  Int alpha, mu, rho;
  Int d;  // gcd over all entries of a and u together
  Vec x0, y0;
};

WhpCertificate whp_certificate(const GElem& g, const GElem& g2);

/// Answer to a Whitehead problem instance. Unknown can only arise from
/// an abstaining free-part oracle.
struct WhpAnswer {
  enum class Kind { Yes, No, Unknown };
  Kind kind;
  std::optional<Endo> witness;
  std::string reason;

  static WhpAnswer yes(Endo w) { return {Kind::Yes, std::move(w), ""}; }
  static WhpAnswer no() { return {Kind::No, std::nullopt, ""}; }
  static WhpAnswer unknown(std::string r) { return {Kind::Unknown, std::nullopt, std::move(r)}; }
};

/// Free-group oracle: decides whether some endomorphism of the declared
/// class maps u to v. A sound Yes carries the witness; Abstain means the
/// oracle cannot decide.
struct FreeOracle {
  enum class Capability { Auto, Mono, Endo };
  struct Result {
    enum class Verdict { Yes, No, Abstain };
    Verdict verdict;
    std::optional<FreeEndo> endo;
  };
  Capability capability;
  std::function<Result(const Word&, const Word&)> query;
};

/// built-in Whitehead engine; never abstains
FreeOracle whitehead_auto_oracle(int n);
/// sound-Yes bounded search over image tuples of total length <= bound
FreeOracle bounded_search_oracle(int n, FreeOracle::Capability cap, int bound);

/// automorphism Whitehead problem for Z^m x F_n (never Unknown)
WhpAnswer whp_auto(const GElem& g, const GElem& g2);
/// monomorphism variant, free part delegated to the oracle
WhpAnswer whp_mono(const GElem& g, const GElem& g2, const FreeOracle& oracle);
/// endomorphism variant: the type II branch is decided outright, the
/// type I branch delegates its free part to the oracle
WhpAnswer whp_endo(const GElem& g, const GElem& g2, const FreeOracle& oracle);

}  // namespace zmfn
