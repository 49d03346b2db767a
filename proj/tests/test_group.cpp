#include <random>

#include "doctest.h"
#include "zmfn/group.hpp"
#include "zmfn/io.hpp"

using namespace zmfn;

namespace {

GElem e(const std::string& s, std::size_t m, int n) { return parse_element(s, m, n); }

std::vector<GElem> random_gens(std::mt19937& rng, std::size_t m, int n, int count, int maxlen,
                               int maxcoeff) {
  std::uniform_int_distribution<int> len(0, maxlen), gen(1, std::max(n, 1)), sgn(0, 1),
      coeff(-maxcoeff, maxcoeff);
  std::vector<GElem> gens;
  for (int i = 0; i < count; ++i) {
    Vec a(m);
    for (std::size_t j = 0; j < m; ++j) a[j] = coeff(rng);
    std::vector<int> ls;
    for (int t = len(rng); t > 0 && n > 0; --t) ls.push_back(sgn(rng) ? gen(rng) : -gen(rng));
    gens.emplace_back(a, Word::from_letters(n, ls));
  }
  return gens;
}

}  // namespace

TEST_CASE("element arithmetic") {
  GElem g = e("[1] x1", 1, 2);
  CHECK(g_mul(g, g_inv(g)).is_identity());
  CHECK(g_mul(e("[1] x1", 1, 2), e("[2] X1", 1, 2)) == e("[3] 1", 1, 2));
  // central letters commute past words
  CHECK(g_mul(e("[1] 1", 1, 2), e("[0] x1", 1, 2)) == g_mul(e("[0] x1", 1, 2), e("[1] 1", 1, 2)));
  CHECK_THROWS_AS(g_mul(e("[1] x1", 1, 2), e("[1,0] x1", 2, 2)), std::invalid_argument);
}

TEST_CASE("subgroup basis of the running example") {
  // Z^2 x F_2 with s = t_1, t = t_2, a = x_1, b = x_2
  std::vector<GElem> gens{e("[1,0] 1", 2, 2),      e("[0,2] 1", 2, 2),
                          e("[0,0] x1", 2, 2),     e("[0,0] x2 x2", 2, 2),
                          e("[0,0] x2 x1 x2", 2, 2), e("[0,1] x2", 2, 2)};
  auto H = GSubgroupBasis::compute(gens, 2, 2);
  CHECK(H.L() == Lattice::from_rows({{1, 0}, {0, 2}}, 2));
  REQUIRE(H.free_rank() == 2);
  CHECK(H.ubasis()[0] == parse_word("x1", 2));
  CHECK(H.ubasis()[1] == parse_word("x2", 2));
  CHECK(H.avecs()[0] == Vec{0, 0});
  CHECK(H.avecs()[1] == Vec{0, 1});
}

TEST_CASE("subgroup basis simple cases") {
  SUBCASE("free generators only") {
    auto H = GSubgroupBasis::compute({e("[] x1", 0, 2), e("[] x2", 0, 2)}, 0, 2);
    CHECK(H.abelian_rank() == 0);
    CHECK(H.free_rank() == 2);
  }
  SUBCASE("one nielsen pass folds the abelian part") {
    auto H = GSubgroupBasis::compute({e("[2] 1", 1, 2), e("[1] x1 x1", 1, 2)}, 1, 2);
    CHECK(H.L() == Lattice::from_rows({{2}}, 1));
    REQUIRE(H.free_rank() == 1);
    CHECK(H.ubasis()[0] == parse_word("x1 x1", 2));
    CHECK(H.avecs()[0] == Vec{1});
  }
  SUBCASE("empty generating set") {
    auto H = GSubgroupBasis::compute({}, 2, 2);
    CHECK(H.size() == 0);
    CHECK(!H.contains(e("[1,0] 1", 2, 2)));
    CHECK(H.contains(e("[0,0] 1", 2, 2)));
  }
}

TEST_CASE("abelian completion") {
  std::vector<GElem> gens{e("[1,0] 1", 2, 2), e("[0,2] 1", 2, 2), e("[0,0] x1", 2, 2),
                          e("[0,1] x2", 2, 2)};
  auto H = GSubgroupBasis::compute(gens, 2, 2);
  SUBCASE("outside the projection") {
    auto K = GSubgroupBasis::compute({e("[0,0] x1 x1", 2, 2)}, 2, 2);
    CHECK(K.abelian_completion(parse_word("x1", 2)).is_empty());
  }
  SUBCASE("trivial word completion is the lattice") {
    AffineCoset c = H.abelian_completion(Word(2));
    REQUIRE(!c.is_empty());
    CHECK(vec_is_zero(c.offset()));
    CHECK(c.direction() == H.L());
  }
  SUBCASE("completion of b") {
    AffineCoset c = H.abelian_completion(parse_word("x2", 2));
    REQUIRE(!c.is_empty());
    CHECK(c.offset() == Vec{0, 1});
    CHECK(c.direction() == Lattice::from_rows({{1, 0}, {0, 2}}, 2));
  }
}

TEST_CASE("membership in the running example") {
  std::vector<GElem> gens{e("[1,0] 1", 2, 2), e("[0,2] 1", 2, 2), e("[0,0] x1", 2, 2),
                          e("[0,1] x2", 2, 2)};
  auto H = GSubgroupBasis::compute(gens, 2, 2);
  SUBCASE("basis elements belong") {
    for (const GElem& b : H.basis_elements()) {
      auto expr = H.membership(b);
      REQUIRE(expr.has_value());
      CHECK(H.eval_basis_word(*expr) == b);
    }
  }
  SUBCASE("b alone does not belong") { CHECK(!H.contains(e("[0,0] x2", 2, 2))); }
  SUBCASE("t b belongs") {
    auto expr = H.membership(e("[0,1] x2", 2, 2));
    REQUIRE(expr.has_value());
    CHECK(H.eval_basis_word(*expr) == e("[0,1] x2", 2, 2));
  }
}

TEST_CASE("membership on random products and the lemma description") {
  std::mt19937 rng(20240813);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> md(0, 3);
    std::uniform_int_distribution<int> nd(0, 3), count(0, 5), pick(0, 10);
    std::size_t m = md(rng);
    int n = nd(rng);
    auto gens = random_gens(rng, m, n, count(rng), 4, 3);
    auto H = GSubgroupBasis::compute(gens, m, n);

    // change of basis round-trips
    auto basis = H.basis_elements();
    for (std::size_t k = 0; k < basis.size(); ++k)
      CHECK(H.eval_generator_word(H.basis_over_generators()[k]) == basis[k]);
    for (std::size_t i = 0; i < gens.size(); ++i)
      CHECK(H.eval_basis_word(H.generators_over_basis()[i]) == gens[i]);

    // products of up to three generators and inverses are members
    if (!gens.empty()) {
      for (int probe = 0; probe < 8; ++probe) {
        GElem g = GElem::identity(m, n);
        std::uniform_int_distribution<int> terms(0, 3), gi(0, static_cast<int>(gens.size()) - 1);
        for (int t = terms(rng); t > 0; --t) {
          const GElem& h = gens[gi(rng)];
          g = g_mul(g, pick(rng) % 2 ? h : g_inv(h));
        }
        auto expr = H.membership(g);
        REQUIRE(expr.has_value());
        CHECK(H.eval_basis_word(*expr) == g);
      }
    }

    // lemma soundness: an evaluated basis word is a member whose vector
    // lies in the completion of its word; perturbations stay members
    // exactly while they stay in the completion
    if (H.free_rank() > 0) {
      std::uniform_int_distribution<int> sym(1, static_cast<int>(H.free_rank())), sgn(0, 1);
      std::vector<int> shifted;
      for (int t = pick(rng) % 4; t > 0; --t) {
        int s = sym(rng) + static_cast<int>(H.abelian_rank());
        shifted.push_back(sgn(rng) ? s : -s);
      }
      GElem inH = H.eval_basis_word(Word::from_letters(static_cast<int>(H.size()), shifted));
      CHECK(H.contains(inH));
      AffineCoset comp = H.abelian_completion(inH.word);
      REQUIRE(!comp.is_empty());
      CHECK(comp.contains(inH.avec));
      if (m > 0) {
        Vec off = inH.avec;
        off[0] += 1;
        CHECK(H.contains(GElem(off, inH.word)) == comp.contains(off));
      }
    }
  }
}

TEST_CASE("subgroup basis is stable under recomputation") {
  std::mt19937 rng(31415);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> md(0, 2);
    std::uniform_int_distribution<int> nd(0, 2), count(0, 4);
    std::size_t m = md(rng);
    int n = nd(rng);
    auto gens = random_gens(rng, m, n, count(rng), 4, 3);
    auto H = GSubgroupBasis::compute(gens, m, n);
    auto H2 = GSubgroupBasis::compute(H.basis_elements(), m, n);
    CHECK(H.L() == H2.L());
    CHECK(H.ubasis() == H2.ubasis());
    CHECK(H.avecs() == H2.avecs());
  }
}

TEST_CASE("conjugacy") {
  SUBCASE("reflexive") {
    GElem g = e("[1] x1 x2", 1, 2);
    auto c = is_conjugate(g, g);
    REQUIRE(c.has_value());
    CHECK(g_mul(g_mul(g_inv(*c), g), *c) == g);
  }
  SUBCASE("conjugate pair with a nontrivial conjugator") {
    GElem g = e("[1] x2", 1, 2), g2 = e("[1] x1 x2 X1", 1, 2);
    auto c = is_conjugate(g, g2);
    REQUIRE(c.has_value());
    CHECK(vec_is_zero(c->avec));
    CHECK(c->word == parse_word("X1", 2));
    CHECK(g_mul(g_mul(g_inv(*c), g), *c) == g2);
  }
  SUBCASE("distinct central parts") {
    CHECK(!is_conjugate(e("[1] x2", 1, 2), e("[2] x2", 1, 2)).has_value());
  }
  SUBCASE("random conjugates verify") {
    std::mt19937 rng(212);
    std::uniform_int_distribution<int> gen(1, 2), sgn(0, 1), len(0, 5);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<int> ls, cs;
      for (int t = len(rng); t > 0; --t) ls.push_back(sgn(rng) ? gen(rng) : -gen(rng));
      for (int t = len(rng); t > 0; --t) cs.push_back(sgn(rng) ? gen(rng) : -gen(rng));
      GElem g(Vec{1}, Word::from_letters(2, ls));
      Word c = Word::from_letters(2, cs);
      GElem g2(Vec{1}, g.word.conjugate(c));
      auto found = is_conjugate(g, g2);
      REQUIRE(found.has_value());
      CHECK(g_mul(g_mul(g_inv(*found), g), *found) == g2);
    }
  }
}

TEST_CASE("isomorphism parameters") {
  CHECK(iso_params(3, 1, 4, 0));
  CHECK(iso_params(2, 3, 2, 3));
  CHECK(!iso_params(2, 3, 3, 2));
  CHECK(iso_params(0, 1, 1, 0));
  CHECK(!iso_params(1, 2, 1, 3));
}
