#pragma once

// Shared test fixtures: the four algebras the suites exercise throughout
// (the A3 chain with a_2 a_1 = 0, the Jordan algebra k[x]/(x^n), the
// commuting square, and the cyclic quiver), plus small independent oracles.

#include <numeric>

#include "qmod/algebra.hpp"
#include "qmod/cyclic.hpp"
#include "qmod/framed.hpp"
#include "qmod/injective.hpp"
#include "qmod/representation.hpp"

namespace fixtures {

using namespace qmod;

// 1 --a1--> 2 --a2--> 3 with a2 a1 = 0.
inline Quiver chain_quiver() {
  Quiver q;
  q.n_vertices = 3;
  q.arrows = {{"a1", 1, 2}, {"a2", 2, 3}};
  return q;
}

inline Path chain_path(const Quiver& q, std::initializer_list<const char*> names_applied_first) {
  Path p;
  std::vector<int> idx;
  for (const char* n : names_applied_first) idx.push_back(q.arrow_index(n));
  p.arrows = idx;
  p.source = q.arrows[idx.front()].from;
  p.target = q.arrows[idx.back()].to;
  return p;
}

inline RelationSet chain_relations() {
  Quiver q = chain_quiver();
  RelationSet rho;
  rho.relations = {LinComb::of(chain_path(q, {"a1", "a2"}))};
  rho.nilpotency_bound = 2;
  return rho;
}

// Jordan quiver with relation a^n.
inline Quiver jordan_quiver() {
  Quiver q;
  q.n_vertices = 1;
  q.arrows = {{"a", 1, 1}};
  return q;
}

inline RelationSet jordan_relations(int n) {
  RelationSet rho;
  Path p{1, 1, std::vector<int>(n, 0)};
  rho.relations = {LinComb::of(p)};
  rho.nilpotency_bound = n;
  return rho;
}

// The commuting square 1 -> 2,3 -> 4 with a2 a1 = b2 b1.
inline Quiver square_quiver() {
  Quiver q;
  q.n_vertices = 4;
  q.arrows = {{"a1", 1, 2}, {"a2", 2, 4}, {"b1", 1, 3}, {"b2", 3, 4}};
  return q;
}

inline RelationSet square_relations() {
  Quiver q = square_quiver();
  RelationSet rho;
  LinComb r = LinComb::of(chain_path(q, {"a1", "a2"})) - LinComb::of(chain_path(q, {"b1", "b2"}));
  rho.relations = {r};
  rho.nilpotency_bound = 3;
  return rho;
}

struct Algebra {
  Quiver quiver;
  RelationSet rho;
};

// The four test algebras used by the seeded suites.
inline std::vector<Algebra> test_algebras() {
  return {{chain_quiver(), chain_relations()},
          {jordan_quiver(), jordan_relations(3)},
          {jordan_quiver(), jordan_relations(4)},
          {square_quiver(), square_relations()}};
}

inline Mat mat(int rows, int cols, std::initializer_list<long> entries) {
  Mat m(rows, cols);
  auto it = entries.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Rat(*it++);
  return m;
}

// Independent oracle: dimension of the truncated quotient as
// #paths(<N) - rank of the relation span, by a plain dense elimination
// that shares nothing with the library's reduction code.
inline int quotient_dim_oracle(const Quiver& q, const RelationSet& rho) {
  int n = rho.nilpotency_bound;
  std::vector<Path> paths = all_paths(q, n - 1);
  std::map<Path, int> index;
  for (size_t i = 0; i < paths.size(); ++i) index.emplace(paths[i], static_cast<int>(i));
  std::vector<std::vector<Rat>> rows;
  std::vector<Path> all = paths;
  for (const LinComb& r : rho.relations) {
    for (const Path& u : all)
      for (const Path& v : all) {
        std::vector<Rat> vec(paths.size());
        bool nonzero = false;
        for (const auto& [p, c] : r.terms) {
          if (v.target != p.source || u.source != p.target) {
            nonzero = false;
            break;
          }
          Path w = *compose_paths(u, *compose_paths(p, v));
          if (w.length() >= n) continue;
          vec[index.at(w)] += c;
          nonzero = true;
        }
        if (nonzero) {
          bool any = false;
          for (const Rat& x : vec)
            if (sgn(x) != 0) any = true;
          if (any) rows.push_back(vec);
        }
      }
  }
  // Plain Gaussian elimination.
  int rank = 0;
  size_t cols = paths.size();
  for (size_t col = 0; col < cols; ++col) {
    int piv = -1;
    for (size_t r = rank; r < rows.size(); ++r)
      if (sgn(rows[r][col]) != 0) {
        piv = static_cast<int>(r);
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank || sgn(rows[r][col]) == 0) continue;
      Rat f = rows[r][col] / rows[rank][col];
      for (size_t c2 = 0; c2 < cols; ++c2) rows[r][c2] -= f * rows[rank][c2];
    }
    ++rank;
  }
  return static_cast<int>(paths.size()) - rank;
}

// Seeded random linear combination of basis paths.
inline LinComb random_element(const QuotientAlgebraBasis& basis, Rng& rng) {
  LinComb x;
  for (const Path& p : basis.basis)
    if (rng.uniform(0, 2) == 0) x.add(p, rng.small_int(-3, 3));
  return x;
}

inline FramedRep make_framed(const Representation& rep, const DimensionVector& zeta, Rng& rng) {
  FramedRep fr;
  fr.rep = rep;
  fr.zeta = zeta;
  for (int v = 1; v <= rep.quiver.n_vertices; ++v)
    fr.framing.push_back(Mat::rand_small(rng, dim_at(zeta, v), dim_at(rep.dims, v), -3, 3));
  return fr;
}

// Random framed representation over an algebra fixture, deterministic in seed.
inline FramedRep random_framed(const Algebra& alg, std::uint64_t seed, int max_dim = 3, int max_zeta = 2) {
  Rng rng(seed);
  DimensionVector alpha, zeta;
  for (int v = 1; v <= alg.quiver.n_vertices; ++v) {
    alpha.push_back(static_cast<int>(rng.uniform(0, max_dim)));
    zeta.push_back(static_cast<int>(rng.uniform(0, max_zeta)));
  }
  Representation rep = sample_representation(alg.quiver, alg.rho, alpha, rng.raw());
  return make_framed(rep, zeta, rng);
}

// Random stable framed representation (zeta grown until a stable framing
// exists, framings retried).
inline FramedRep random_stable_framed(const Algebra& alg, std::uint64_t seed, int max_dim = 3) {
  Rng rng(seed);
  DimensionVector alpha;
  for (int v = 1; v <= alg.quiver.n_vertices; ++v) alpha.push_back(static_cast<int>(rng.uniform(0, max_dim)));
  Representation rep = sample_representation(alg.quiver, alg.rho, alpha, rng.raw());
  GradedSubspace soc = socle(rep);
  DimensionVector zeta = soc.dims();
  for (auto& z : zeta) z += static_cast<int>(rng.uniform(0, 1));
  for (int attempt = 0; attempt < 64; ++attempt) {
    FramedRep fr = make_framed(rep, zeta, rng);
    if (is_stable(fr)) return fr;
  }
  // The witness framing always works.
  auto [ok, witness] = framing_existence(rep, zeta);
  if (!ok) throw std::logic_error("random_stable_framed: no framing exists");
  return *witness;
}

// Random subrepresentation: closure of random vectors.
inline GradedSubspace random_subrep(const Representation& rep, Rng& rng) {
  std::vector<Mat> cols;
  for (int v = 1; v <= rep.quiver.n_vertices; ++v) {
    int d = dim_at(rep.dims, v);
    cols.push_back(Mat::rand_small(rng, d, d > 0 ? static_cast<int>(rng.uniform(0, 2)) : 0, -2, 2));
  }
  return generated_submodule(rep, GradedSubspace::from_columns(rep.dims, cols));
}

// Random graded subspace with prescribed per-vertex dimensions.
inline GradedSubspace random_graded_subspace(const DimensionVector& ambient, const DimensionVector& dims, Rng& rng) {
  std::vector<Mat> cols;
  for (size_t v = 0; v < ambient.size(); ++v) {
    Mat m(ambient[v], dims[v]);
    while (m.rank() < dims[v]) m = Mat::rand_small(rng, ambient[v], dims[v], -4, 4);
    cols.push_back(m);
  }
  return GradedSubspace::from_columns(ambient, cols);
}

}  // namespace fixtures
