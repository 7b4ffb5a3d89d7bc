#include "doctest.h"
#include "fixtures.hpp"
#include "qmod/algebra.hpp"

using namespace qmod;
using namespace fixtures;

TEST_SUITE_BEGIN("algebra");

TEST_CASE("compose_paths") {
  Quiver q = chain_quiver();
  Path a1 = chain_path(q, {"a1"});
  Path a2 = chain_path(q, {"a2"});
  Path e2 = Path::trivial(2);

  auto r = compose_paths(e2, a1);  // e_2 . a1 = a1
  REQUIRE(r.has_value());
  CHECK(*r == a1);

  auto a2a1 = compose_paths(a2, a1);
  REQUIRE(a2a1.has_value());
  CHECK(a2a1->source == 1);
  CHECK(a2a1->target == 3);
  CHECK(a2a1->length() == 2);

  CHECK_FALSE(compose_paths(a1, a2).has_value());  // non-composable
}

TEST_CASE("compose associativity with zero absorption") {
  Quiver q = square_quiver();
  Rng rng(5);
  std::vector<Path> paths = all_paths(q, 2);
  auto compose3a = [](const Path& p, const Path& qq, const Path& r) -> std::optional<Path> {
    auto pq = compose_paths(p, qq);
    if (!pq) return std::nullopt;
    return compose_paths(*pq, r);
  };
  auto compose3b = [](const Path& p, const Path& qq, const Path& r) -> std::optional<Path> {
    auto qr = compose_paths(qq, r);
    if (!qr) return std::nullopt;
    return compose_paths(p, *qr);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const Path& p = paths[rng.uniform(0, paths.size() - 1)];
    const Path& s = paths[rng.uniform(0, paths.size() - 1)];
    const Path& r = paths[rng.uniform(0, paths.size() - 1)];
    auto x = compose3a(p, s, r), y = compose3b(p, s, r);
    CHECK(x.has_value() == y.has_value());
    if (x) CHECK(*x == *y);
  }
}

TEST_CASE("chain algebra basis (Nakayama (1,1))") {
  QuotientAlgebraBasis basis = build_quotient_basis(chain_quiver(), chain_relations());
  CHECK(basis.dim() == 5);  // e1, e2, e3, a1, a2
  for (int v = 1; v <= 3; ++v) CHECK(basis.index_of(Path::trivial(v)) >= 0);
  Quiver q = chain_quiver();
  CHECK(basis.normal_form(chain_path(q, {"a1", "a2"})).is_zero());
  CHECK(basis.normal_form(Path::trivial(1)) == LinComb::of(Path::trivial(1)));
}

TEST_CASE("Jordan algebra basis k[x]/(x^3)") {
  QuotientAlgebraBasis basis = build_quotient_basis(jordan_quiver(), jordan_relations(3));
  CHECK(basis.dim() == 3);  // e, a, a^2
  Path a{1, 1, {0}}, a2{1, 1, {0, 0}}, a3{1, 1, {0, 0, 0}};
  CHECK(basis.index_of(a) >= 0);
  CHECK(basis.index_of(a2) >= 0);
  CHECK(basis.normal_form(a3).is_zero());
}

TEST_CASE("square algebra basis and b2 b1 = a2 a1") {
  Quiver q = square_quiver();
  QuotientAlgebraBasis basis = build_quotient_basis(q, square_relations());
  CHECK(basis.dim() == 9);
  Path a2a1 = chain_path(q, {"a1", "a2"});
  Path b2b1 = chain_path(q, {"b1", "b2"});
  CHECK(basis.index_of(a2a1) >= 0);
  CHECK(basis.index_of(b2b1) < 0);
  CHECK(basis.normal_form(b2b1) == LinComb::of(a2a1));
}

TEST_CASE("build rejects bad relation sets") {
  Quiver q = chain_quiver();
  RelationSet bad;
  bad.relations = {LinComb::of(chain_path(q, {"a1"}))};  // length-1 term
  bad.nilpotency_bound = 2;
  CHECK_THROWS(build_quotient_basis(q, bad));

  RelationSet bad_n = chain_relations();
  bad_n.nilpotency_bound = 1;
  CHECK_THROWS(build_quotient_basis(q, bad_n));
}

TEST_CASE("verify_regular_ideal") {
  CHECK(verify_regular_ideal(chain_quiver(), chain_relations()));

  RelationSet square_n2 = square_relations();
  square_n2.nilpotency_bound = 2;  // a2 a1 is nonzero in A
  CHECK_FALSE(verify_regular_ideal(square_quiver(), square_n2));

  // Empty relations on an acyclic quiver, N = longest path + 1.
  Quiver q = square_quiver();
  RelationSet empty;
  empty.nilpotency_bound = q.longest_path_length() + 1;
  CHECK(verify_regular_ideal(q, empty));

  CHECK(verify_regular_ideal(jordan_quiver(), jordan_relations(4)));
}

TEST_CASE("dimension matches the rank oracle; e_i in Xi; long paths vanish") {
  for (const auto& alg : test_algebras()) {
    QuotientAlgebraBasis basis = build_quotient_basis(alg.quiver, alg.rho);
    CHECK(basis.dim() == quotient_dim_oracle(alg.quiver, alg.rho));
    for (int v = 1; v <= alg.quiver.n_vertices; ++v) CHECK(basis.index_of(Path::trivial(v)) >= 0);
    for (const Path& p : all_paths(alg.quiver, basis.nilpotency_bound() + 1))
      if (p.length() >= basis.nilpotency_bound()) CHECK(basis.normal_form(p).is_zero());
  }
}

TEST_CASE("normal form is idempotent and linear") {
  for (const auto& alg : test_algebras()) {
    QuotientAlgebraBasis basis = build_quotient_basis(alg.quiver, alg.rho);
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
      LinComb x;
      std::vector<Path> paths = all_paths(alg.quiver, basis.nilpotency_bound() - 1);
      for (const Path& p : paths)
        if (rng.uniform(0, 2) == 0) x.add(p, rng.small_int(-3, 3));
      LinComb nf = basis.normal_form(x);
      CHECK(basis.normal_form(nf) == nf);
      for (const auto& [p, c] : nf.terms) CHECK(basis.index_of(p) >= 0);
    }
  }
}

TEST_CASE("multiplication: worked products") {
  // Chain: a2 . a1 = 0, e2 . a1 = a1.
  {
    Quiver q = chain_quiver();
    QuotientAlgebraBasis basis = build_quotient_basis(q, chain_relations());
    Path a1 = chain_path(q, {"a1"}), a2 = chain_path(q, {"a2"});
    CHECK(basis.multiply(LinComb::of(a2), LinComb::of(a1)).is_zero());
    CHECK(basis.multiply(LinComb::of(Path::trivial(2)), LinComb::of(a1)) == LinComb::of(a1));
  }
  // Jordan n = 3: a.a = a^2, a^2.a = 0.
  {
    QuotientAlgebraBasis basis = build_quotient_basis(jordan_quiver(), jordan_relations(3));
    Path a{1, 1, {0}}, a2{1, 1, {0, 0}};
    CHECK(basis.multiply(LinComb::of(a), LinComb::of(a)) == LinComb::of(a2));
    CHECK(basis.multiply(LinComb::of(a2), LinComb::of(a)).is_zero());
  }
}

TEST_CASE("multiplication is associative and unital (200 seeded triples)") {
  for (const auto& alg : test_algebras()) {
    QuotientAlgebraBasis basis = build_quotient_basis(alg.quiver, alg.rho);
    Rng rng(97);
    LinComb e = basis.unit();
    for (int trial = 0; trial < 200; ++trial) {
      LinComb x = random_element(basis, rng);
      LinComb y = random_element(basis, rng);
      LinComb z = random_element(basis, rng);
      CHECK(basis.multiply(basis.multiply(x, y), z) == basis.multiply(x, basis.multiply(y, z)));
      if (trial < 20) {
        CHECK(basis.multiply(e, x) == x);
        CHECK(basis.multiply(x, e) == x);
      }
    }
  }
}

TEST_SUITE_END();
