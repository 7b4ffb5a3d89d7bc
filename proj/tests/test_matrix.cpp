#include "doctest.h"
#include "fixtures.hpp"
#include "qmod/matrix.hpp"
#include "qmod/poly.hpp"

using namespace qmod;
using fixtures::mat;

TEST_SUITE_BEGIN("matrix");

TEST_CASE("echelon, rank, kernel") {
  Mat a = mat(3, 3, {1, 2, 3, 2, 4, 6, 1, 1, 1});
  CHECK(a.rank() == 2);
  Mat k = a.kernel();
  CHECK(k.cols() == 1);
  CHECK((a * k).is_zero());

  Mat b = mat(3, 2, {1, 0, 0, 1, 0, 0});
  CHECK(subspace_contains(b, mat(3, 1, {2, -5, 0})));
  CHECK_FALSE(subspace_contains(b, mat(3, 1, {0, 0, 1})));
}

TEST_CASE("column echelon is canonical") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Mat u = Mat::rand_small(rng, 5, 3);
    Mat g = Mat::rand_unimodular(rng, 3);
    CHECK(u.column_space_echelon() == (u * g).column_space_echelon());
  }
}

TEST_CASE("solve") {
  Mat a = mat(3, 2, {1, 0, 1, 1, 0, 2});
  Mat x = mat(2, 1, {3, -1});
  auto sol = a.solve(a * x);
  REQUIRE(sol.has_value());
  CHECK(*sol == x);
  CHECK_FALSE(a.solve(mat(3, 1, {1, 0, 0})).has_value());
}

TEST_CASE("intersection and preimage") {
  Mat u = mat(3, 2, {1, 0, 0, 1, 0, 0});
  Mat v = mat(3, 2, {0, 0, 1, 0, 0, 1});
  Mat w = subspace_intersect(u, v);
  CHECK(w.cols() == 1);
  CHECK(subspace_contains(u, w));
  CHECK(subspace_contains(v, w));

  Mat a = mat(2, 3, {1, 0, 0, 0, 1, 0});
  Mat pre = preimage(a, mat(2, 1, {1, 0}));
  CHECK(pre.cols() == 2);
  CHECK(subspace_contains(mat(2, 1, {1, 0}), a * pre));
}

TEST_CASE("determinant and charpoly") {
  Mat a = mat(2, 2, {1, 2, 3, 4});
  CHECK(a.det() == Rat(-2));
  Poly chi = charpoly(a);
  // x^2 - 5x - 2
  CHECK(chi.c == std::vector<Rat>{Rat(-2), Rat(-5), Rat(1)});
  CHECK(eval_at(chi, a).is_zero());  // Cayley-Hamilton
}

TEST_CASE("rational roots") {
  // (x-1)(x-2)^2 * (x^2+1)
  Poly p = Poly::x_minus(Rat(1)) * Poly::x_minus(Rat(2)).pow(2) * Poly(std::vector<Rat>{Rat(1), Rat(0), Rat(1)});
  RationalRoots rr = rational_roots(p);
  CHECK_FALSE(rr.splits());
  REQUIRE(rr.roots.size() == 2);
  CHECK(rr.roots[0] == std::make_pair(Rat(1), 1));
  CHECK(rr.roots[1] == std::make_pair(Rat(2), 2));
  CHECK(rr.remainder.degree() == 2);
}

TEST_CASE("spectral projector") {
  Rng rng(11);
  // diag(1,1,3) conjugated: projectors must be complementary idempotents.
  Mat d(3, 3);
  d.at(0, 0) = 1;
  d.at(1, 1) = 1;
  d.at(2, 2) = 3;
  Mat g = Mat::rand_unimodular(rng, 3);
  Mat a = g * d * g.solve(Mat::identity(3)).value();
  Mat p1 = spectral_projector(a, Rat(1), 2);
  Mat p3 = spectral_projector(a, Rat(3), 1);
  CHECK(p1 * p1 == p1);
  CHECK(p3 * p3 == p3);
  CHECK((p1 + p3) == Mat::identity(3));
  CHECK((p1 * p3).is_zero());
  CHECK(p1.trace() == Rat(2));
}

TEST_CASE("rand_nilpotent respects order and block bounds") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Mat n = Mat::rand_nilpotent(rng, 5, 3, 2);
    Mat p = n;
    for (int i = 1; i < 3; ++i) p = p * n;
    CHECK(p.is_zero());
    CHECK(n.kernel().cols() <= 2);  // block count = kernel dimension
  }
}

TEST_SUITE_END();
