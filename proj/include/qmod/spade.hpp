#pragma once

#include <array>
#include <compare>

#include "qmod/cyclic.hpp"
#include "qmod/framed.hpp"

namespace qmod {

// A quiver whose strongly connected components are simple cycles, presented
// as an acyclic base quiver Q-hat with cycles pasted into some vertices.
struct SuccessiveDecomposition {
  Quiver original;  // Q
  Quiver base;      // Q-hat (acyclic); arrow k corresponds to base_arrow_of[k] in Q
  std::vector<int> cycle_len;                    // per base vertex: n_i, 0 = plain vertex
  std::vector<std::vector<int>> cycle_vertices;  // base vertex -> Q-vertices at positions 0..max(n,1)-1
  std::vector<std::pair<int, int>> vertex_loc;   // Q-vertex-1 -> (base vertex, position)
  std::vector<std::vector<int>> cycle_arrows;    // base vertex -> Q-arrow of c_{i,j}: i^{(j)} -> i^{(j+1)}
  std::vector<int> base_arrow_of;                // base arrow -> Q-arrow

  int positions(int base_v) const { return cycle_len[base_v - 1] > 0 ? cycle_len[base_v - 1] : 1; }
  int q_vertex(int base_v, int pos) const { return cycle_vertices[base_v - 1][pos]; }
  bool is_cycle(int base_v) const { return cycle_len[base_v - 1] > 0; }
};

// Throws "not a successive-cycle quiver" when some SCC is not a simple cycle.
SuccessiveDecomposition detect_successive(const Quiver& q);

// Per base vertex: eigenvalue data of its cycle operators (multiplicity per
// cycle position). Plain vertices carry the degenerate datum (0, {alpha_v}).
struct MultiRootData {
  std::vector<RootData> per_vertex;

  void validate(const SuccessiveDecomposition& d, const DimensionVector& alpha) const;
};

// Degenerate data everywhere except the listed cycles.
MultiRootData make_multi_root_data(const SuccessiveDecomposition& d, const DimensionVector& alpha,
                                   const std::map<int, RootData>& cycle_roots);  // keyed by base vertex

// Basis label of W-spade: a base path, a root choice and a winding number per
// visited vertex, and the terminal cycle position and framing coordinate.
struct WLabel {
  std::vector<int> path;      // base-arrow indices, in application order
  std::vector<int> roots;     // per visit t = 0..L; roots[0] is the vertex's own root
  std::vector<int> windings;  // per visit; 0 at plain visits
  int terminal_pos = 0;
  int frame = 1;

  auto operator<=>(const WLabel&) const = default;
};

struct SpadeBundle {
  SuccessiveDecomposition decomp;
  MultiRootData roots;
  FramingVector zeta;  // over Q-vertices

  Quiver spade;  // Q-spade
  DimensionVector alpha_tilde;
  Representation w;  // W-spade
  std::vector<std::array<int, 3>> vertex_key;  // spade vertex-1 -> (base_v, pos, root)
  struct ArrowInfo {
    bool is_cycle = false;
    int q_arrow = -1;  // provenance in Q
    int root_from = 0, root_to = 0;
  };
  std::vector<ArrowInfo> arrow_info;
  std::vector<std::vector<WLabel>> labels;  // per spade vertex

  int spade_vertex(int base_v, int pos, int root) const;
  int label_index(int spade_v, const WLabel& l) const;
  // chi-hat at a cycle position: prod_l (x - lambda_l)^{r_l[pos]}.
  Poly char_poly_at(int base_v, int pos) const;
};

SpadeBundle build_spade(const SuccessiveDecomposition& d, const MultiRootData& mrd, const FramingVector& zeta);

// The fiber data (Q-spade, alpha-tilde, W-spade).
struct FiberSpec {
  Quiver quiver;
  DimensionVector alpha_tilde;
  Representation w;
};
FiberSpec fiber_spec(const SuccessiveDecomposition& d, const MultiRootData& mrd, const FramingVector& zeta);

// Section of Theorem 7's bijection: an alpha-tilde submodule of W-spade
// determines a stable framed representation of Q with cycle char polys given
// by the root data.
FramedRep spade_recover(const SpadeBundle& b, const GradedSubspace& u);

// Embedding direction: W-spade coordinates of a framed representation whose
// cycle char polys match the root data (per spade vertex).
std::vector<Mat> spade_embed(const SpadeBundle& b, const FramedRep& fr);

// Socle multiplicities for successive-cycle quivers: vertex simples S(i) and
// cycle simples S(tau, lambda) for rational lambda != 0. Throws
// "irrational spectrum" when a cycle operator has irrational eigenvalues on
// the relevant subspace.
struct SocleReport {
  std::vector<int> vertex_simple;  // per Q-vertex
  struct CycleMult {
    int base_vertex = 0;
    Rat lambda;
    int mult = 0;
  };
  std::vector<CycleMult> cycle_simple;
  std::vector<int> ambient_vertex_simple;            // zeta_i
  std::vector<std::pair<int, int>> ambient_cycle;    // (base vertex, sum of zeta over the cycle)
};
SocleReport cyclic_socle_multiplicities(const Representation& m, const SuccessiveDecomposition& decomp,
                                        const FramingVector& zeta);

// The simple S(tau, lambda) of a pasted cycle, as a representation of Q.
Representation cycle_simple(const SuccessiveDecomposition& d, int base_v, const Rat& lambda);

// Stable framing exists iff every socle multiplicity fits in the ambient
// one; on success a witness framing passing is_stable is returned.
std::pair<bool, std::optional<FramedRep>> framing_existence_cyclic(const Representation& m,
                                                                   const SuccessiveDecomposition& decomp,
                                                                   const FramingVector& zeta);

}  // namespace qmod
