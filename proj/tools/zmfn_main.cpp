#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zmfn/finindex.hpp"
#include "zmfn/fixpt.hpp"
#include "zmfn/io.hpp"
#include "zmfn/meet.hpp"
#include "zmfn/whp.hpp"

using namespace zmfn;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;
constexpr int kUnknown = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GSubgroupBasis load_subgroup(const std::string& path) {
  SubgroupInput in = parse_subgroup(read_file(path));
  return GSubgroupBasis::compute(in.generators, in.m, in.n);
}

// expression over basis symbols, printed as g<k> / G<k> tokens
std::string print_expression(const Word& expr) {
  if (expr.trivial()) return "1";
  std::ostringstream os;
  const auto& ls = expr.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) os << " ";
    os << (ls[i] > 0 ? "g" : "G") << std::abs(ls[i]);
  }
  return os.str();
}

// two inline elements over a common (m, n); the ambient free rank can
// exceed the largest index used
std::pair<GElem, GElem> parse_pair(const std::string& a, const std::string& b, int min_rank) {
  GElem ga = parse_element(a), gb = parse_element(b);
  if (ga.m() != gb.m()) throw std::runtime_error("elements have different abelian ranks");
  int n = std::max({ga.n(), gb.n(), min_rank});
  return {parse_element(a, ga.m(), n), parse_element(b, gb.m(), n)};
}

void verify_ok() { std::cout << "verify: ok\n"; }

int run_normal_form(const std::string& text, bool) {
  std::cout << print_element(parse_element(text)) << "\n";
  return kYes;
}

int run_mul(const std::vector<std::string>& texts, bool) {
  std::size_t m = parse_element(texts[0]).m();
  int n = 0;
  for (const auto& t : texts) {
    GElem probe = parse_element(t);
    if (probe.m() != m) throw std::runtime_error("elements have different abelian ranks");
    n = std::max(n, probe.n());
  }
  GElem acc = GElem::identity(m, n);
  for (const auto& t : texts) acc = g_mul(acc, parse_element(t, m, n));
  std::cout << print_element(acc) << "\n";
  return kYes;
}

int run_member(const std::string& elt, const std::string& file, bool verify) {
  GSubgroupBasis H = load_subgroup(file);
  GElem g = parse_element(elt, H.m(), H.n());
  auto expr = H.membership(g);
  if (!expr) {
    std::cout << "not a member\n";
    return kNo;
  }
  std::cout << "member\nexpression: " << print_expression(*expr) << "\n";
  if (verify) {
    if (!(H.eval_basis_word(*expr) == g)) throw std::runtime_error("expression check failed");
    verify_ok();
  }
  return kYes;
}

int run_basis(const std::string& file, bool ab_form, bool verify) {
  GSubgroupBasis H = load_subgroup(file);
  std::cout << print_subgroup(H);
  if (ab_form) std::cout << print_basis_ab_form(H);
  if (verify) {
    auto basis = H.basis_elements();
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!(H.eval_generator_word(H.basis_over_generators()[k]) == basis[k]))
        throw std::runtime_error("basis change-of-basis check failed");
    const auto& gens = H.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!(H.eval_basis_word(H.generators_over_basis()[i]) == gens[i]))
        throw std::runtime_error("generator re-expression check failed");
    verify_ok();
  }
  return kYes;
}

int run_index(const std::string& file, bool verify) {
  GSubgroupBasis H = load_subgroup(file);
  auto cert = finite_index_G(H);
  if (!cert) {
    std::cout << "infinite\n";
    return kNo;
  }
  std::cout << "index: " << cert->index << "\n";
  for (const GElem& r : cert->cleaned_reps) std::cout << print_element(r) << "\n";
  if (verify) {
    for (std::size_t i = 0; i < cert->cleaned_reps.size(); ++i)
      for (std::size_t j = i + 1; j < cert->cleaned_reps.size(); ++j)
        if (H.contains(g_mul(cert->cleaned_reps[i], g_inv(cert->cleaned_reps[j]))))
          throw std::runtime_error("coset representatives are not distinct");
    // translating a representative by a basis element stays inside the
    // covered cosets
    for (const GElem& r : cert->cleaned_reps)
      for (const GElem& b : H.basis_elements()) {
        GElem moved = g_mul(b, r);
        int hits = 0;
        for (const GElem& s : cert->cleaned_reps)
          if (H.contains(g_mul(moved, g_inv(s)))) ++hits;
        if (hits != 1) throw std::runtime_error("coset cover check failed");
      }
    verify_ok();
  }
  return kYes;
}

int run_intersect(const std::string& f1, const std::string& f2, bool verify) {
  GSubgroupBasis H = load_subgroup(f1), H2 = load_subgroup(f2);
  SIPResult r = subgroup_intersection_G(H, H2);
  if (!r.finitely_generated) {
    std::cout << "not finitely generated\n";
    return kNo;
  }
  std::cout << print_subgroup(*r.basis);
  if (verify) {
    for (const GElem& b : r.basis->basis_elements())
      if (!H.contains(b) || !H2.contains(b))
        throw std::runtime_error("intersection basis element outside an input subgroup");
    verify_ok();
  }
  return kYes;
}

int run_coset_intersect(const std::string& e1, const std::string& f1, const std::string& e2,
                        const std::string& f2, bool verify) {
  GSubgroupBasis H = load_subgroup(f1), H2 = load_subgroup(f2);
  if (H.m() != H2.m() || H.n() != H2.n()) throw std::runtime_error("subgroup ranks differ");
  GElem g = parse_element(e1, H.m(), H.n());
  GElem g2 = parse_element(e2, H.m(), H.n());
  auto r = coset_intersection_G(g, H, g2, H2);
  if (!r) {
    std::cout << "empty\n";
    return kNo;
  }
  std::cout << "witness: " << print_element(r->first) << "\n";
  if (verify) {
    if (!H.contains(g_mul(g_inv(g), r->first)) || !H2.contains(g_mul(g_inv(g2), r->first)))
      throw std::runtime_error("witness membership check failed");
    verify_ok();
  }
  return kYes;
}

int run_quasiconvex(const std::string& file, bool) {
  GSubgroupBasis H = load_subgroup(file);
  if (is_quasiconvex(H)) {
    std::cout << "quasi-convex\n";
    return kYes;
  }
  std::cout << "not quasi-convex\n";
  return kNo;
}

int run_endo_apply(const std::string& file, const std::string& elt, bool) {
  Endo e = parse_endo(read_file(file));
  GElem g = parse_element(elt, e.m(), e.n());
  std::cout << print_element(endo_apply(e, g)) << "\n";
  return kYes;
}

int run_endo_compose(const std::string& f1, const std::string& f2, bool verify) {
  Endo a = parse_endo(read_file(f1)), b = parse_endo(read_file(f2));
  Endo c = endo_compose(a, b);
  std::cout << print_endo(c);
  if (verify) {
    for (const GElem& g : Endo::identity(a.m(), a.n()).generator_images())
      if (!(endo_apply(c, g) == endo_apply(b, endo_apply(a, g))))
        throw std::runtime_error("composition check failed");
    verify_ok();
  }
  return kYes;
}

int run_endo_invert(const std::string& file, bool verify) {
  Endo e = parse_endo(read_file(file));
  auto inv = endo_invert(e);
  if (!inv) {
    std::cout << "not an automorphism\n";
    return kNo;
  }
  std::cout << print_endo(*inv);
  if (verify) {
    if (!(endo_compose(e, *inv) == Endo::identity(e.m(), e.n())) ||
        !(endo_compose(*inv, e) == Endo::identity(e.m(), e.n())))
      throw std::runtime_error("inverse check failed");
    verify_ok();
  }
  return kYes;
}

int run_endo_flags(const std::string& file, bool) {
  Endo e = parse_endo(read_file(file));
  auto f = endo_flags(e);
  std::cout << "type: " << (e.is_type1() ? "I" : "II") << "\n";
  std::cout << "mono: " << (f.mono ? "yes" : "no") << "\n";
  std::cout << "epi: " << (f.epi ? "yes" : "no") << "\n";
  std::cout << "auto: " << (f.aut ? "yes" : "no") << "\n";
  return kYes;
}

int run_fix(const std::string& file, const std::string& basis_file, bool verify) {
  Endo e = parse_endo(read_file(file));
  std::optional<GSubgroupBasis> fix;
  if (e.is_type2()) {
    fix = fix_type2(e);
  } else {
    if (basis_file.empty())
      throw std::runtime_error("type I endomorphism needs --fix-free-basis <file>");
    auto words = parse_word_list(read_file(basis_file), e.n());
    FixResult r = fix_type1(e, words);
    if (!r.finitely_generated) {
      std::cout << "not finitely generated\n";
      return kNo;
    }
    fix = *r.basis;
  }
  std::cout << print_subgroup(*fix);
  if (verify) {
    for (const GElem& b : fix->basis_elements())
      if (!(endo_apply(e, b) == b)) throw std::runtime_error("fixed basis element moved");
    verify_ok();
  }
  return kYes;
}

int run_whitehead(const std::string& mode, const std::string& e1, const std::string& e2,
                  int bound, int free_rank, bool verify) {
  auto [g, g2] = parse_pair(e1, e2, free_rank);
  int n = g.n();
  WhpAnswer a = WhpAnswer::no();
  if (mode == "auto") {
    a = whp_auto(g, g2);
  } else if (mode == "mono") {
    a = whp_mono(g, g2, bounded_search_oracle(n, FreeOracle::Capability::Mono, bound));
  } else if (mode == "endo") {
    a = whp_endo(g, g2, bounded_search_oracle(n, FreeOracle::Capability::Endo, bound));
  } else {
    throw std::runtime_error("mode must be auto, mono or endo");
  }
  if (a.kind == WhpAnswer::Kind::No) {
    std::cout << "no\n";
    return kNo;
  }
  if (a.kind == WhpAnswer::Kind::Unknown) {
    std::cout << "unknown: " << a.reason << "\n";
    return kUnknown;
  }
  std::cout << print_endo(*a.witness);
  if (verify) {
    if (!(endo_apply(*a.witness, g) == g2)) throw std::runtime_error("witness check failed");
    auto f = endo_flags(*a.witness);
    if (mode == "auto" && !f.aut) throw std::runtime_error("witness is not an automorphism");
    if (mode == "mono" && !f.mono) throw std::runtime_error("witness is not a monomorphism");
    verify_ok();
  }
  return kYes;
}

int run_iso(long m, long n, long m2, long n2, bool) {
  if (m < 0 || n < 0 || m2 < 0 || n2 < 0) throw std::runtime_error("ranks must be nonnegative");
  if (iso_params(static_cast<std::size_t>(m), static_cast<int>(n), static_cast<std::size_t>(m2),
                 static_cast<int>(n2))) {
    std::cout << "isomorphic\n";
    return kYes;
  }
  std::cout << "not isomorphic\n";
  return kNo;
}

int run_conjugate(const std::string& e1, const std::string& e2, int free_rank, bool verify) {
  auto [g, g2] = parse_pair(e1, e2, free_rank);
  auto c = is_conjugate(g, g2);
  if (!c) {
    std::cout << "not conjugate\n";
    return kNo;
  }
  std::cout << "conjugator: " << print_element(*c) << "\n";
  if (verify) {
    if (!(g_mul(g_mul(g_inv(*c), g), *c) == g2))
      throw std::runtime_error("conjugator check failed");
    verify_ok();
  }
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for free-abelian times free groups Z^m x F_n"};
  app.require_subcommand(1);
  bool verify = false;
  app.add_flag("--verify", verify, "replay soundness checks on the certificate");

  std::string elt1, elt2, file1, file2, mode = "auto";
  std::vector<std::string> elts;
  bool ab_form = false;
  int bound = 6, free_rank = 0;
  long im = 0, in_ = 0, im2 = 0, in2 = 0;

  auto* nf = app.add_subcommand("normal-form", "print the normal form of an element");
  nf->add_option("element", elt1)->required();

  auto* mul = app.add_subcommand("mul", "multiply elements");
  mul->add_option("elements", elts)->required()->expected(-2);

  auto* member = app.add_subcommand("member", "membership in a finitely generated subgroup");
  member->add_option("element", elt1)->required();
  member->add_option("subgroup", file1)->required();

  auto* basis = app.add_subcommand("basis", "compute a subgroup basis");
  basis->add_option("subgroup", file1)->required();
  basis->add_flag("--ab-form", ab_form, "also print the (A, B) display");

  auto* index = app.add_subcommand("index", "finite index decision with coset representatives");
  index->add_option("subgroup", file1)->required();

  auto* inter = app.add_subcommand("intersect", "subgroup intersection");
  inter->add_option("subgroup", file1)->required();
  inter->add_option("subgroup2", file2)->required();

  auto* cosint = app.add_subcommand("coset-intersect", "coset intersection");
  cosint->add_option("element", elt1)->required();
  cosint->add_option("subgroup", file1)->required();
  cosint->add_option("element2", elt2)->required();
  cosint->add_option("subgroup2", file2)->required();

  auto* qc = app.add_subcommand("quasiconvex", "quasi-convexity decision");
  qc->add_option("subgroup", file1)->required();

  auto* eapply = app.add_subcommand("endo-apply", "apply an endomorphism to an element");
  eapply->add_option("endo", file1)->required();
  eapply->add_option("element", elt1)->required();

  auto* ecomp = app.add_subcommand("endo-compose", "compose two endomorphisms");
  ecomp->add_option("endo", file1)->required();
  ecomp->add_option("endo2", file2)->required();

  auto* einv = app.add_subcommand("endo-invert", "invert an automorphism");
  einv->add_option("endo", file1)->required();

  auto* eflags = app.add_subcommand("endo-flags", "type and mono/epi/auto flags");
  eflags->add_option("endo", file1)->required();

  auto* fix = app.add_subcommand("fix", "fixed subgroup of an endomorphism");
  fix->add_option("endo", file1)->required();
  fix->add_option("--fix-free-basis", file2, "free basis of Fix phi for the type I case");

  auto* wh = app.add_subcommand("whitehead", "Whitehead problems");
  wh->add_option("--mode", mode, "auto, mono or endo")->required();
  wh->add_option("--bound", bound, "search bound for the mono/endo free oracles");
  wh->add_option("--free-rank", free_rank, "ambient free rank when it exceeds the letters used");
  wh->add_option("element", elt1)->required();
  wh->add_option("element2", elt2)->required();

  auto* iso = app.add_subcommand("iso", "isomorphy of Z^m x F_n and Z^m2 x F_n2");
  iso->add_option("m", im)->required();
  iso->add_option("n", in_)->required();
  iso->add_option("m2", im2)->required();
  iso->add_option("n2", in2)->required();

  auto* conj = app.add_subcommand("conjugate", "conjugacy of two elements");
  conj->add_option("element", elt1)->required();
  conj->add_option("element2", elt2)->required();
  conj->add_option("--free-rank", free_rank, "ambient free rank when it exceeds the letters used");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (nf->parsed()) return run_normal_form(elt1, verify);
    if (mul->parsed()) return run_mul(elts, verify);
    if (member->parsed()) return run_member(elt1, file1, verify);
    if (basis->parsed()) return run_basis(file1, ab_form, verify);
    if (index->parsed()) return run_index(file1, verify);
    if (inter->parsed()) return run_intersect(file1, file2, verify);
    if (cosint->parsed()) return run_coset_intersect(elt1, file1, elt2, file2, verify);
    if (qc->parsed()) return run_quasiconvex(file1, verify);
    if (eapply->parsed()) return run_endo_apply(file1, elt1, verify);
    if (ecomp->parsed()) return run_endo_compose(file1, file2, verify);
    if (einv->parsed()) return run_endo_invert(file1, verify);
    if (eflags->parsed()) return run_endo_flags(file1, verify);
    if (fix->parsed()) return run_fix(file1, file2, verify);
    if (wh->parsed()) return run_whitehead(mode, elt1, elt2, bound, free_rank, verify);
    if (iso->parsed()) return run_iso(im, in_, im2, in2, verify);
    if (conj->parsed()) return run_conjugate(elt1, elt2, free_rank, verify);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
