#pragma once

#include <array>
#include <map>
#include <string>

#include "qmod/framed.hpp"
#include "qmod/poly.hpp"
#include "qmod/representation.hpp"

namespace qmod {

// The cyclic quiver A^(1)_{n-1}: arrows a_i : i -> i+1 (indices mod n).
struct CyclicQuiverSpec {
  int n = 1;
  DimensionVector alpha;
  DimensionVector zeta;

  Quiver quiver() const;
  int next(int v) const { return v % n + 1; }
  // The shortest cycle at i, as a path (arrows a_i, a_{i+1}, ..., a_{i-1}).
  Path tau(int v) const;
  void validate() const;
};

// Characteristic polynomials of the tau_i actions, monic, exact.
std::vector<Poly> char_polys(const Representation& m, const CyclicQuiverSpec& spec);

// Eigenvalue/multiplicity data parameterizing a fiber of the moduli
// projection: chi_i = prod_j (x - lambda_j)^{(r_j)_i}.
struct RootData {
  struct Root {
    Rat lambda;
    DimensionVector r;
  };
  std::vector<Root> roots;
};

bool validate_root_data(const RootData& rd, const DimensionVector& alpha, std::string* diagnosis = nullptr);

// Root data of a representation, via exact rational root extraction of the
// tau char polys. Throws when some chi_i has a non-rational factor.
RootData root_data_of(const Representation& m, const CyclicQuiverSpec& spec);

// Finite-dimensional module of Jordan strings: at every vertex, Q = sum(zeta)
// strings of length R = max_i r_i; a_i acts as (lambda + shift) on the q = i
// strings and as the identity relabeling elsewhere.
struct JLambdaModule {
  CyclicQuiverSpec spec;
  Rat lambda;
  DimensionVector r;
  int order = 0;  // R = max_i r_i
  Representation rep;
  std::vector<std::array<int, 3>> labels;  // flat -> (q, copy, s); same at every vertex

  int flat(int q, int copy, int s) const;  // 0-based result
  int dim() const { return static_cast<int>(labels.size()); }
};

JLambdaModule build_J_lambda(const CyclicQuiverSpec& spec, const Rat& lambda, const DimensionVector& r);

// One Grassmannian factor per root: (J(lambda_j, r_j), target dims r_j).
std::vector<std::pair<JLambdaModule, DimensionVector>> fiber_components(const CyclicQuiverSpec& spec,
                                                                        const RootData& rd);

// ---- Multihomogeneous Plucker equation systems ----

struct PlueckerTuple {
  int vertex = 1;
  std::vector<int> indices;  // sorted strictly increasing, 1-based flat indices
  bool operator<(const PlueckerTuple& o) const {
    return vertex != o.vertex ? vertex < o.vertex : indices < o.indices;
  }
  bool operator==(const PlueckerTuple& o) const = default;
};

struct EquationTerm {
  Rat coef;
  std::vector<PlueckerTuple> monomial;  // sorted factors
};

struct Equation {
  std::string tag;  // plucker | vanishing | shift-sum | proportionality | cross-vertex
  std::vector<EquationTerm> terms;
};

struct EquationSet {
  int n_vertices = 1;
  std::vector<int> ambient;                      // per vertex: flat dimension
  std::vector<int> wedge;                        // per vertex: exterior power
  std::vector<std::array<int, 3>> index_labels;  // flat -> (q, copy, s)
  std::vector<Equation> equations;
};

// Theorem-5 equation families for Grass_m^{d/dt}(J(lambda, m)) with q copies;
// independent of lambda. Flat index of e_{(copy, s)} is s*q + copy.
EquationSet jordan_pluecker_equations(int m, int q);

// Theorem-6 equation set for Grass_alpha(J(lambda, alpha)) over the cyclic
// quiver; reduces to the Jordan set when n = 1.
EquationSet cyclic_pluecker_equations(const CyclicQuiverSpec& spec, const Rat& lambda);

// Plucker coordinates (maximal minors, lex tuple order) of the canonical
// echelon basis of each per-vertex subspace.
struct PlueckerPoint {
  std::vector<std::map<std::vector<int>, Rat>> coords;  // per vertex
};
PlueckerPoint pluecker_coordinates(const GradedSubspace& u);

struct ResidualReport {
  struct Item {
    std::string tag;
    int equation = 0;
    Rat value;
  };
  std::vector<Item> nonzero;
  bool clean() const { return nonzero.empty(); }
};
ResidualReport evaluate_equations(const EquationSet& eqs, const PlueckerPoint& p);

// Canonicalization: RREF the linear members (eliminating lex-largest
// coordinates), substitute them into the rest, normalize and deduplicate.
EquationSet reduce_equations(const EquationSet& eqs);

// Set equality up to a nonzero scalar per equation (tags ignored).
bool equations_projectively_equal(const EquationSet& a, const EquationSet& b);

// Convenience constructor for hand-written expected equations.
Equation make_equation(const std::string& tag, const std::vector<std::pair<Rat, std::vector<PlueckerTuple>>>& terms);

// ---- Sampling and fiber membership ----

// Representation with prescribed tau char polys (companion/Jordan blocks,
// random unimodular base change). Root block counts are capped by sum(zeta)
// so that stable framings exist.
Representation sample_cyclic_representation(const CyclicQuiverSpec& spec, const RootData& rd, std::uint64_t seed);

// Per-root embedded image of a framed representation inside J(lambda_j, r_j):
// the finite-dimensional shadow of Phi^!, root component by root component.
// Requires char polys of fr.rep to match rd.
std::vector<GradedSubspace> fiber_point(const CyclicQuiverSpec& spec, const RootData& rd, const FramedRep& fr);

}  // namespace qmod
