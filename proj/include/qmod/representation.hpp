#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qmod/algebra.hpp"
#include "qmod/matrix.hpp"
#include "qmod/quiver.hpp"

namespace qmod {

// Per-vertex dimensions, indexed dims[v-1] for vertex v.
using DimensionVector = std::vector<int>;

inline int dim_at(const DimensionVector& d, int v) { return d[static_cast<size_t>(v) - 1]; }
inline int total_dim(const DimensionVector& d) {
  int s = 0;
  for (int x : d) s += x;
  return s;
}

struct Representation {
  Quiver quiver;
  DimensionVector dims;
  std::vector<Mat> matrices;  // per arrow index, shape dims[head] x dims[tail]

  void validate() const;
  const Mat& matrix(int arrow) const { return matrices[static_cast<size_t>(arrow)]; }
  Mat& matrix(int arrow) { return matrices[static_cast<size_t>(arrow)]; }
  static Representation zeros(const Quiver& q, const DimensionVector& dims);
};

// Per-vertex subspaces, each in canonical reduced-column-echelon form, so two
// graded subspaces are equal iff their matrices are identical.
struct GradedSubspace {
  DimensionVector ambient;
  std::vector<Mat> basis;  // per vertex, ambient[v] rows

  static GradedSubspace zero(const DimensionVector& ambient);
  static GradedSubspace full(const DimensionVector& ambient);
  static GradedSubspace from_columns(const DimensionVector& ambient, std::vector<Mat> cols);

  DimensionVector dims() const;
  int total() const { return total_dim(dims()); }
  bool is_zero() const { return total() == 0; }
  const Mat& at(int v) const { return basis[static_cast<size_t>(v) - 1]; }
  Mat& at(int v) { return basis[static_cast<size_t>(v) - 1]; }
  bool operator==(const GradedSubspace& o) const { return ambient == o.ambient && basis == o.basis; }
};

struct ModuleMap {
  Representation source, target;
  std::vector<Mat> blocks;  // per vertex, target dim x source dim

  const Mat& at(int v) const { return blocks[static_cast<size_t>(v) - 1]; }
  bool intertwines() const;  // f_{ha} X_a == Y_a f_{ta} for every arrow
};

bool check_relations(const Representation& x, const RelationSet& rho);

// Evaluation X_p of a path (product of arrow matrices, identity for e_i).
Mat path_matrix(const Representation& x, const Path& p);
// Evaluation of a linear combination; all terms from one source must share
// a target. Result maps VertexId -> matrix for the sources present.
std::map<int, Mat> path_action(const Representation& x, const LinComb& c);

bool is_subrepresentation(const GradedSubspace& u, const Representation& x);

// Graded kernel of a per-vertex map collection.
GradedSubspace graded_kernel(const DimensionVector& ambient, const std::vector<Mat>& maps);

// Per-vertex intersection of kernels of outgoing arrows; full space at
// vertices with no outgoing arrows. (Vertex-simple socle; see the
// successive-cycles module for the oriented-cycle refinement.)
GradedSubspace socle(const Representation& x);

// Greatest subrepresentation of x contained in k: decreasing fixed point of
// U |-> U cap all arrow preimages of U.
GradedSubspace maximal_submodule_in(const Representation& x, const GradedSubspace& k);

// Basis of the space of module maps x -> y.
std::vector<ModuleMap> hom_space(const Representation& x, const Representation& y);

// Deterministic seeded sampling of representations satisfying rho exactly.
// Supported: relation-free quivers; single-loop nilpotent (a^n); chains of
// compose-to-zero monomial relations; a single binomial relation p - q with
// a shared tail solved exactly. Throws "unsupported family" otherwise.
Representation sample_representation(const Quiver& q, const RelationSet& rho, const DimensionVector& alpha,
                                     std::uint64_t seed);

// Closure of a graded subspace under all arrow actions (least
// subrepresentation containing it).
GradedSubspace generated_submodule(const Representation& x, const GradedSubspace& seed);

}  // namespace qmod
