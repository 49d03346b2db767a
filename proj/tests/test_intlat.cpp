#include <random>

#include "doctest.h"
#include "zmfn/intlat.hpp"

using namespace zmfn;

namespace {

IntMat rows(std::vector<Vec> rs, std::size_t cols) { return IntMat::from_rows(rs, cols); }

Vec v(std::vector<long> xs) {
  Vec r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

IntMat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

// all vectors with entries in [-bound, bound]
std::vector<Vec> box(std::size_t dim, int bound) {
  std::vector<Vec> out;
  Vec cur(dim, Int(-bound));
  while (true) {
    out.push_back(cur);
    std::size_t pos = dim;
    bool done = dim == 0;
    while (pos > 0) {
      --pos;
      cur[pos] += 1;
      if (cur[pos] <= bound) break;
      cur[pos] = -bound;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  return out;
}

}  // namespace

TEST_CASE("smith normal form on small cases") {
  SUBCASE("identity") {
    auto s = smith_normal_form(IntMat::identity(2));
    CHECK(s.divisors == std::vector<Int>{1, 1});
    CHECK(s.U * IntMat::identity(2) * s.V == s.D);
  }
  SUBCASE("diag(2,3) has divisors (1,6)") {
    auto s = smith_normal_form(rows({v({2, 0}), v({0, 3})}, 2));
    CHECK(s.divisors == std::vector<Int>{1, 6});
  }
  SUBCASE("zero matrix has no divisors") {
    auto s = smith_normal_form(IntMat(2, 2));
    CHECK(s.divisors.empty());
    CHECK(s.D.is_zero());
  }
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(0, 4);
    std::size_t r = dim(rng), c = dim(rng);
    IntMat m = random_matrix(rng, r, c, -9, 9);
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(det(s.U)) == 1);
    CHECK(abs(det(s.V)) == 1);
    CHECK(s.V * s.Vinv == IntMat::identity(c));
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
      CHECK(s.divisors[i] > 0);
      CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D.at(i, j) == 0);
  }
}

TEST_CASE("solve_linear spec examples") {
  SUBCASE("identity system") {
    auto sol = solve_linear(IntMat::identity(2), v({3, 5}));
    REQUIRE(!sol.is_empty());
    CHECK(sol.offset() == v({3, 5}));
    CHECK(sol.direction().rank() == 0);
  }
  SUBCASE("parity obstruction") {
    auto sol = solve_linear(rows({v({2}), v({0})}, 1), v({1}));
    CHECK(sol.is_empty());
  }
  SUBCASE("kernel line") {
    auto sol = solve_linear(rows({v({1}), v({1})}, 1), v({0}));
    REQUIRE(!sol.is_empty());
    CHECK(sol.contains(v({0, 0})));
    CHECK(sol.contains(v({1, -1})));
    CHECK(!sol.contains(v({1, 0})));
    CHECK(sol.direction().rank() == 1);
  }
}

TEST_CASE("solve_linear agrees with brute force") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 2);
    std::size_t p = dim(rng), m = dim(rng);
    IntMat a = random_matrix(rng, p, m, -3, 3);
    Vec b = random_matrix(rng, 1, m, -4, 4).row(0);
    auto sol = solve_linear(a, b);
    for (const Vec& x : box(p, 4)) {
      bool hit = vec_mul(x, a) == b;
      CHECK(hit == sol.contains(x));
    }
  }
}

TEST_CASE("lattice_preimage spec examples") {
  SUBCASE("zero map pulls back everything") {
    Lattice l = Lattice::from_rows({v({2})}, 1);
    Lattice pre = lattice_preimage(IntMat(3, 1), l);
    CHECK(pre.rank() == 3);
    CHECK(pre == Lattice::full(3));
  }
  SUBCASE("identity map on 2Z") {
    Lattice pre = lattice_preimage(rows({v({1})}, 1), Lattice::from_rows({v({2})}, 1));
    CHECK(pre == Lattice::from_rows({v({2})}, 1));
  }
  SUBCASE("rows (3) and (2) pulling back 2Z") {
    Lattice pre = lattice_preimage(rows({v({3}), v({2})}, 1), Lattice::from_rows({v({2})}, 1));
    CHECK(pre.rank() == 2);
    // brute force over |x| <= 4
    for (const Vec& x : box(2, 4)) {
      Int img = 3 * x[0] + 2 * x[1];
      CHECK(pre.contains(x) == (img % 2 == 0));
    }
  }
}

TEST_CASE("lattice_preimage properties") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 2);
    std::size_t p = dim(rng), m = dim(rng);
    IntMat a = random_matrix(rng, p, m, -3, 3);
    IntMat lb = random_matrix(rng, dim(rng), m, -3, 3);
    Lattice l = Lattice::from_rows(lb.row_list(), m);
    Lattice pre = lattice_preimage(a, l);
    for (const Vec& row : pre.basis().row_list()) CHECK(l.contains(vec_mul(row, a)));
    for (const Vec& x : box(p, 3))
      CHECK(pre.contains(x) == l.contains(vec_mul(x, a)));
  }
}

TEST_CASE("coset_intersect spec examples") {
  SUBCASE("self intersection") {
    AffineCoset c(v({1, 2}), Lattice::from_rows({v({2, 0})}, 2));
    CHECK(coset_intersect(c, c) == c);
  }
  SUBCASE("parity-disjoint cosets") {
    AffineCoset even(v({0}), Lattice::from_rows({v({2})}, 1));
    AffineCoset odd(v({1}), Lattice::from_rows({v({2})}, 1));
    CHECK(coset_intersect(even, odd).is_empty());
  }
  SUBCASE("lines in Z^2") {
    AffineCoset h(v({0, 1}), Lattice::from_rows({v({1, 0})}, 2));
    AffineCoset w(v({0, 0}), Lattice::from_rows({v({0, 2})}, 2));
    CHECK(coset_intersect(h, w).is_empty());
    AffineCoset w2(v({2, 1}), Lattice::from_rows({v({0, 2})}, 2));
    AffineCoset meet = coset_intersect(h, w2);
    REQUIRE(!meet.is_empty());
    CHECK(meet.offset() == v({2, 1}));
    CHECK(meet.direction().rank() == 0);
  }
}

TEST_CASE("coset_intersect agrees with brute force") {
  std::mt19937 rng(123);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  std::uniform_int_distribution<std::size_t> rk(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t m = dim(rng);
    AffineCoset c1(random_matrix(rng, 1, m, -5, 5).row(0),
                   Lattice::from_rows(random_matrix(rng, rk(rng), m, -3, 3).row_list(), m));
    AffineCoset c2(random_matrix(rng, 1, m, -5, 5).row(0),
                   Lattice::from_rows(random_matrix(rng, rk(rng), m, -3, 3).row_list(), m));
    AffineCoset meet = coset_intersect(c1, c2);
    for (const Vec& x : box(m, 5)) CHECK(meet.contains(x) == (c1.contains(x) && c2.contains(x)));
  }
}

TEST_CASE("lattice_index spec examples") {
  SUBCASE("full lattice") {
    auto d = lattice_index(Lattice::full(2));
    REQUIRE(d.has_value());
    CHECK(d->index == 1);
    CHECK(d->reps == std::vector<Vec>{v({0, 0})});
  }
  SUBCASE("index two") {
    auto d = lattice_index(Lattice::from_rows({v({1, 0}), v({0, 2})}, 2));
    REQUIRE(d.has_value());
    CHECK(d->index == 2);
    CHECK(d->reps == std::vector<Vec>{v({0, 0}), v({0, 1})});
  }
  SUBCASE("rank deficit") {
    CHECK(!lattice_index(Lattice::from_rows({v({2, 0})}, 2)).has_value());
  }
}

TEST_CASE("lattice_index representatives are a transversal") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 2);
    std::size_t m = dim(rng);
    IntMat b = random_matrix(rng, m, m, -4, 4);
    if (det(b) == 0) continue;
    Lattice l = Lattice::from_rows(b.row_list(), m);
    auto d = lattice_index(l);
    REQUIRE(d.has_value());
    CHECK(d->index == abs(det(b)));
    for (std::size_t i = 0; i < d->reps.size(); ++i)
      for (std::size_t j = i + 1; j < d->reps.size(); ++j)
        CHECK(!l.contains(vec_sub(d->reps[i], d->reps[j])));
    for (const Vec& x : box(m, 3)) {
      int hits = 0;
      for (const Vec& r : d->reps)
        if (l.contains(vec_sub(x, r))) ++hits;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("gcd_vec follows the gcd(0) = 0 convention") {
  CHECK(gcd_vec(v({0, 0})) == 0);
  CHECK(gcd_vec(v({4, 6})) == 2);
  CHECK(gcd_vec(v({-3, 5})) == 1);
  CHECK(gcd_vec(v({})) == 0);
}

TEST_CASE("lattice plumbing") {
  Lattice a = Lattice::from_rows({v({2, 0})}, 2);
  Lattice b = Lattice::from_rows({v({0, 3})}, 2);
  CHECK(lattice_sum(a, b) == Lattice::from_rows({v({2, 0}), v({0, 3})}, 2));
  CHECK(lattice_intersect(Lattice::from_rows({v({2})}, 1), Lattice::from_rows({v({3})}, 1)) ==
        Lattice::from_rows({v({6})}, 1));
  CHECK(a.contains(v({4, 0})));
  CHECK(!a.contains(v({1, 0})));
  auto coords = Lattice::from_rows({v({1, 1}), v({0, 2})}, 2).coordinates(v({2, 4}));
  REQUIRE(coords.has_value());
  CHECK(*coords == v({2, 1}));
}

TEST_CASE("bezout and unimodular completions") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    std::size_t m = dim(rng);
    Vec a = random_matrix(rng, 1, m, -9, 9).row(0);
    CHECK(vec_dot(a, bezout_coeffs(a)) == gcd_vec(a));
    Int g = gcd_vec(a);
    if (g == 0) continue;
    Vec a0(m);
    for (std::size_t j = 0; j < m; ++j) a0[j] = a[j] / g;
    if (gcd_vec(a0) != 1) continue;
    IntMat u = unimodular_with_first_row(a0);
    CHECK(abs(det(u)) == 1);
    CHECK(u.row(0) == a0);
    CHECK(u * unimodular_inverse(u) == IntMat::identity(m));
  }
}
