#include <random>

#include "doctest.h"
#include "zmfn/io.hpp"
#include "zmfn/nielsen.hpp"
#include "zmfn/stallings.hpp"
#include "zmfn/word.hpp"

using namespace zmfn;

namespace {

Word w(const std::string& s, int n) { return parse_word(s, n); }

Word random_word(std::mt19937& rng, int rank, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen);
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::vector<int> ls;
  int target = len(rng);
  for (int i = 0; i < target; ++i) ls.push_back(sgn(rng) ? gen(rng) : -gen(rng));
  return Word::from_letters(rank, ls);
}

// reduced words of length <= maxlen
std::vector<Word> all_words(int rank, int maxlen) {
  std::vector<Word> all{Word(rank)}, level{Word(rank)};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const Word& u : level)
      for (int x = 1; x <= rank; ++x)
        for (int sgn : {+1, -1}) {
          int l = sgn * x;
          if (!u.letters().empty() && u.letters().back() == -l) continue;
          auto ls = u.letters();
          ls.push_back(l);
          next.push_back(Word::from_letters(rank, ls));
        }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

}  // namespace

TEST_CASE("word arithmetic") {
  Word a = w("x1 x2", 2);
  CHECK((a * a.inverse()).trivial());
  CHECK(w("x1 x2", 2) * w("X2 x1", 2) == w("x1 x1", 2));
  auto [core, conj] = w("x1 x2 X1", 2).cyclic_reduce();
  CHECK(core == w("x2", 2));
  CHECK(conj == w("x1", 2));
  CHECK(w("x1 x2", 2).abelianization() == Vec{1, 1});
  CHECK(w("x1 X2 x1", 2).abelianization() == Vec{2, -1});
  CHECK_THROWS_AS(w("x1", 2) * w("x1", 3), std::invalid_argument);
}

TEST_CASE("word roots") {
  CHECK(word_root(w("x1 x2", 2)) == std::make_pair(w("x1 x2", 2), 1L));
  CHECK(word_root(w("x1 x2 x1 x2 x1 x2", 2)) == std::make_pair(w("x1 x2", 2), 3L));
  CHECK(word_root(w("x1 x2 x2 X1", 2)) == std::make_pair(w("x1 x2 X1", 2), 2L));
  CHECK_THROWS_AS(word_root(Word(2)), std::invalid_argument);

  CHECK(dth_power_check(w("x1 x1 x1 x1", 2), 2) == w("x1 x1", 2));
  CHECK(!dth_power_check(w("x1 x1 x1", 2), 2).has_value());
  CHECK(dth_power_check(Word(2), 0).has_value());
  CHECK(!dth_power_check(w("x1", 2), 0).has_value());
}

TEST_CASE("nielsen reduction spec examples") {
  SUBCASE("drops trivial entries") {
    auto r = nielsen_reduce({w("x1", 2), w("x2", 2), Word(2)}, 2);
    CHECK(r.basis == std::vector<Word>{w("x1", 2), w("x2", 2)});
  }
  SUBCASE("one elementary move") {
    auto r = nielsen_reduce({w("x1 x2", 2), w("x2", 2)}, 2);
    CHECK(r.basis == std::vector<Word>{w("x1", 2), w("x2", 2)});
    std::vector<Word> input{w("x1 x2", 2), w("x2", 2)};
    for (std::size_t j = 0; j < r.basis.size(); ++j)
      CHECK(substitute(r.forward[j], input, 2) == r.basis[j]);
  }
  SUBCASE("duplicate generators collapse") {
    auto r = nielsen_reduce({w("x1", 2), w("x1", 2)}, 2);
    CHECK(r.basis == std::vector<Word>{w("x1", 2)});
  }
}

TEST_CASE("nielsen expressions round-trip on random tuples") {
  std::mt19937 rng(20240812);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> rk(1, 3), count(0, 5);
    int rank = rk(rng);
    int p = count(rng);
    std::vector<Word> tuple;
    for (int i = 0; i < p; ++i) tuple.push_back(random_word(rng, rank, 6));
    auto r = nielsen_reduce(tuple, rank);
    REQUIRE(r.forward.size() == r.basis.size());
    REQUIRE(r.backward.size() == tuple.size());
    for (std::size_t j = 0; j < r.basis.size(); ++j)
      CHECK(substitute(r.forward[j], tuple, rank) == r.basis[j]);
    for (std::size_t i = 0; i < tuple.size(); ++i)
      CHECK(substitute(r.backward[i], r.basis, rank) == tuple[i]);
    // no product of two basis elements or inverses is shorter than a factor
    for (std::size_t i = 0; i < r.basis.size(); ++i)
      for (std::size_t j = 0; j < r.basis.size(); ++j)
        for (int si : {+1, -1})
          for (int sj : {+1, -1}) {
            if (i == j && si != sj) continue;
            Word a = si > 0 ? r.basis[i] : r.basis[i].inverse();
            Word b = sj > 0 ? r.basis[j] : r.basis[j].inverse();
            Word ab = a * b;
            if (ab.trivial()) continue;
            CHECK(ab.length() >= a.length());
            CHECK(ab.length() >= b.length());
          }
  }
}

TEST_CASE("nielsen reduction resolves peaks without length drops") {
  // x1 X2 x1 = x1x1 * (x1 x2 x1)^{-1} * x1x1, a relation that no
  // single length-reducing move exposes
  std::vector<Word> tuple{w("x2", 2), w("x1 x1", 2), w("x1 x2 x1", 2), w("x1 X2 x1", 2)};
  auto r = nielsen_reduce(tuple, 2);
  CHECK(r.basis.size() == 3);
  CHECK(StallingsGraph::from_generators(tuple, 2).graph_rank() == 3);
  for (std::size_t i = 0; i < tuple.size(); ++i)
    CHECK(substitute(r.backward[i], r.basis, 2) == tuple[i]);
}

TEST_CASE("nielsen rank matches graph rank on harder tuples") {
  std::mt19937 rng(20240815);
  for (int trial = 0; trial < 400; ++trial) {
    std::uniform_int_distribution<int> rk(1, 4), count(1, 8);
    int rank = rk(rng);
    std::vector<Word> tuple;
    for (int i = 0, c = count(rng); i < c; ++i) tuple.push_back(random_word(rng, rank, 12));
    auto nr = nielsen_reduce(tuple, rank);
    CHECK(StallingsGraph::from_generators(tuple, rank).graph_rank() == nr.basis.size());
  }
}

TEST_CASE("stallings graphs of small subgroups") {
  SUBCASE("single loop") {
    auto g = StallingsGraph::from_generators({w("x1", 2)}, 2);
    CHECK(g.num_vertices() == 1);
    CHECK(g.num_edges() == 1);
    CHECK(g.graph_rank() == 1);
  }
  SUBCASE("index-two subgroup of F_2") {
    auto g = StallingsGraph::from_generators({w("x1", 2), w("x2 x2", 2), w("x2 x1 x2", 2)}, 2);
    CHECK(g.num_vertices() == 2);
    CHECK(g.complete());
    CHECK(g.graph_rank() == 3);
  }
  SUBCASE("no generators") {
    auto g = StallingsGraph::from_generators({}, 2);
    CHECK(g.num_vertices() == 1);
    CHECK(g.num_edges() == 0);
  }
}

TEST_CASE("membership and expression through the graph") {
  auto g = StallingsGraph::from_generators({w("x1", 2), w("x2 x2", 2), w("x2 x1 x2", 2)}, 2);
  SUBCASE("generator expression") {
    auto e = g.express(w("x1", 2));
    REQUIRE(e.has_value());
    CHECK(e->length() == 1);
  }
  SUBCASE("non-member") { CHECK(!g.express(w("x2", 2)).has_value()); }
  SUBCASE("identity") {
    auto e = g.express(Word(2));
    REQUIRE(e.has_value());
    CHECK(e->trivial());
  }
  SUBCASE("expressions re-evaluate") {
    for (const Word& u : {w("x1 x2 x2", 2), w("x2 x1 x2", 2), w("x2 X1 x2 x1", 2)}) {
      auto e = g.express(u);
      REQUIRE(e.has_value());
      CHECK(substitute(*e, g.basis(), 2) == u);
    }
  }
}

TEST_CASE("graph rank equals nielsen rank and membership routes agree") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> rk(2, 3), count(1, 5);
    int rank = rk(rng);
    int p = count(rng);
    std::vector<Word> tuple;
    for (int i = 0; i < p; ++i) tuple.push_back(random_word(rng, rank, 6));
    auto nr = nielsen_reduce(tuple, rank);
    auto g = StallingsGraph::from_generators(tuple, rank);
    CHECK(g.graph_rank() == nr.basis.size());
    auto gb = StallingsGraph::from_generators(nr.basis, rank);
    for (int probe = 0; probe < 20; ++probe) {
      Word u = random_word(rng, rank, 6);
      CHECK(g.accepts(u) == gb.accepts(u));
    }
  }
}

TEST_CASE("free finite index") {
  SUBCASE("whole group") {
    auto g = StallingsGraph::from_generators({w("x1", 2), w("x2", 2)}, 2);
    auto d = free_finite_index(g);
    REQUIRE(d.has_value());
    CHECK(d->index == 1);
  }
  SUBCASE("index two") {
    auto g = StallingsGraph::from_generators({w("x1", 2), w("x2 x2", 2), w("x2 x1 x2", 2)}, 2);
    auto d = free_finite_index(g);
    REQUIRE(d.has_value());
    CHECK(d->index == 2);
    // every word lies in exactly one coset H w over the representatives
    std::mt19937 rng(11);
    for (int probe = 0; probe < 50; ++probe) {
      Word u = random_word(rng, 2, 6);
      int hits = 0;
      for (const Word& rep : d->reps)
        if (g.accepts(u * rep.inverse())) ++hits;
      CHECK(hits == 1);
    }
  }
  SUBCASE("infinite index") {
    auto g = StallingsGraph::from_generators({w("x1", 2)}, 2);
    CHECK(!free_finite_index(g).has_value());
  }
}

TEST_CASE("pullbacks") {
  SUBCASE("self intersection") {
    auto g = StallingsGraph::from_generators({w("x1", 2), w("x2 x2", 2)}, 2);
    auto pb = StallingsGraph::pullback(g, g);
    CHECK(pb.graph_rank() == g.graph_rank());
  }
  SUBCASE("cyclic subgroups") {
    auto a = StallingsGraph::from_generators({w("x1 x1", 2)}, 2);
    auto b = StallingsGraph::from_generators({w("x1 x1 x1", 2)}, 2);
    auto pb = StallingsGraph::pullback(a, b);
    REQUIRE(pb.graph_rank() == 1);
    Word v = pb.basis()[0];
    CHECK((v == w("x1 x1 x1 x1 x1 x1", 2) || v == w("X1 X1 X1 X1 X1 X1", 2)));
    auto ea = a.express(v), eb = b.express(v);
    REQUIRE(ea.has_value());
    REQUIRE(eb.has_value());
    CHECK(ea->length() == 3);
    CHECK(eb->length() == 2);
  }
  SUBCASE("full group") {
    auto f = StallingsGraph::from_generators({w("x1", 2), w("x2", 2)}, 2);
    CHECK(StallingsGraph::pullback(f, f).graph_rank() == 2);
  }
  SUBCASE("pullback membership is intersection membership") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Word> g1, g2;
      std::uniform_int_distribution<int> count(1, 3);
      for (int i = 0, c = count(rng); i < c; ++i) g1.push_back(random_word(rng, 2, 5));
      for (int i = 0, c = count(rng); i < c; ++i) g2.push_back(random_word(rng, 2, 5));
      auto a = StallingsGraph::from_generators(g1, 2);
      auto b = StallingsGraph::from_generators(g2, 2);
      auto pb = StallingsGraph::pullback(a, b);
      for (const Word& u : all_words(2, 6))
        CHECK(pb.accepts(u) == (a.accepts(u) && b.accepts(u)));
    }
  }
}

TEST_CASE("free coset intersection") {
  auto h1 = StallingsGraph::from_generators({w("x2", 2)}, 2);
  SUBCASE("identity cosets") {
    auto v = free_coset_intersect(Word(2), h1, Word(2), h1);
    REQUIRE(v.has_value());
    CHECK(v->trivial());
  }
  SUBCASE("disjoint translates") {
    CHECK(!free_coset_intersect(w("x1", 2), h1, Word(2), h1).has_value());
  }
  SUBCASE("witness verifies") {
    auto a = StallingsGraph::from_generators({w("x1 x1", 2)}, 2);
    auto b = StallingsGraph::from_generators({w("x1 x1 x1", 2)}, 2);
    auto v = free_coset_intersect(w("x1", 2), a, w("X1 X1", 2), b);
    REQUIRE(v.has_value());
    CHECK(a.accepts(w("X1", 2) * *v));
    CHECK(b.accepts(w("x1 x1", 2) * *v));
  }
  SUBCASE("random soundness and completeness") {
    std::mt19937 rng(888);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Word> g1{random_word(rng, 2, 4), random_word(rng, 2, 4)};
      std::vector<Word> g2{random_word(rng, 2, 4)};
      Word u1 = random_word(rng, 2, 3), u2 = random_word(rng, 2, 3);
      auto a = StallingsGraph::from_generators(g1, 2);
      auto b = StallingsGraph::from_generators(g2, 2);
      auto v = free_coset_intersect(u1, a, u2, b);
      if (v) {
        CHECK(a.accepts(u1.inverse() * *v));
        CHECK(b.accepts(u2.inverse() * *v));
      } else {
        for (const Word& x : all_words(2, 5))
          CHECK(!(a.accepts(u1.inverse() * x) && b.accepts(u2.inverse() * x)));
      }
    }
  }
}

TEST_CASE("invert_basis_map recovers free automorphism inverses") {
  SUBCASE("swap") {
    auto inv = invert_basis_map({w("x2", 2), w("x1", 2)});
    REQUIRE(inv.has_value());
    CHECK((*inv)[0] == w("x2", 2));
    CHECK((*inv)[1] == w("x1", 2));
  }
  SUBCASE("not a basis") {
    CHECK(!invert_basis_map({w("x1 x1", 2), w("x2", 2)}).has_value());
  }
  SUBCASE("random automorphisms round-trip") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      int n = 2 + (trial % 2);
      std::vector<Word> im;
      for (int i = 1; i <= n; ++i) im.push_back(Word::generator(n, i));
      std::uniform_int_distribution<int> pick(0, n - 1), coin(0, 1), steps(0, 6);
      for (int s = steps(rng); s > 0; --s) {
        int i = pick(rng), j = pick(rng);
        if (coin(rng))
          im[i] = im[i].inverse();
        else if (i != j)
          im[i] = coin(rng) ? im[i] * im[j] : im[j] * im[i];
      }
      auto inv = invert_basis_map(im);
      REQUIRE(inv.has_value());
      for (int i = 1; i <= n; ++i) {
        CHECK(substitute(substitute(Word::generator(n, i), im, n), *inv, n) ==
              Word::generator(n, i));
        CHECK(substitute(substitute(Word::generator(n, i), *inv, n), im, n) ==
              Word::generator(n, i));
      }
    }
  }
}
