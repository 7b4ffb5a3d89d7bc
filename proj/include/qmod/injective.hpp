#pragma once

#include <string>

#include "qmod/framed.hpp"
#include "qmod/representation.hpp"

namespace qmod {

// J = direct sum over i of I_i tensor V_i, materialized with explicit basis
// labels: the summands of J_i are indexed by pairs (tau in Xi with source i,
// copy p in 1..zeta_{target tau}).
struct InjectiveLabel {
  int basis_path = -1;  // index into QuotientAlgebraBasis::basis
  int copy = 0;         // 1-based
  bool operator==(const InjectiveLabel& o) const = default;
};

struct InjectiveModule {
  QuotientAlgebraBasis algebra;
  FramingVector zeta;
  Representation rep;                                // explicit arrow matrices on J
  std::vector<std::vector<InjectiveLabel>> labels;   // per vertex

  const std::vector<InjectiveLabel>& labels_at(int v) const { return labels[static_cast<size_t>(v) - 1]; }
  int label_index(int v, const InjectiveLabel& l) const;
  // Columns of the V_i^{(e_i)} block of J_i.
  Mat socle_block(int v) const;
};

InjectiveModule build_injective(const QuotientAlgebraBasis& algebra, const FramingVector& zeta);

// Eq.-(2) map Phi_{(M,f)}: block row for label (tau: i ~> j, copy p) is the
// p-th row of f_j X_tau. Intertwining is verified, not assumed.
ModuleMap phi(const FramedRep& fr, const InjectiveModule& j);

// Graded kernel of phi; equals the maximal submodule of M inside ker f.
GradedSubspace kernel_phi(const FramedRep& fr, const InjectiveModule& j);

// Section s of Phi: recovers (M, f) from an injective graded embedding into J
// whose column span is a submodule. Throws on non-injective blocks or when
// the span is not a submodule.
FramedRep recover(const std::vector<Mat>& embedding, const InjectiveModule& j);

bool grass_membership(const GradedSubspace& u, const InjectiveModule& j);

// Index-change sections of the arrow actions on J.
struct DaggerData {
  struct ArrowDagger {
    std::vector<int> jtilde_labels;  // label positions at the head vertex spanning J~
    Mat inclusion;                   // dim J_s x |jtilde|, unit columns
    Mat dagger;                      // dim J_i x |jtilde|, a (J_a dagger = id) section
  };
  std::vector<ArrowDagger> arrows;  // per arrow index
};

DaggerData build_dagger(const InjectiveModule& j);

// Condition (3): U_i inside V_i^{(e_i)} + dagger_a(U_s cap J~_s^{(a)}) for
// every arrow a: i -> s. Coincides with grass_membership.
bool dagger_condition(const GradedSubspace& u, const InjectiveModule& j, const DaggerData& dg);

// Human-readable summary: J dimensions, labels, dagger table and the
// specialization of condition (3) as set inclusions.
std::string dagger_report(const InjectiveModule& j, const DaggerData& dg);

}  // namespace qmod
