#pragma once

#include <optional>
#include <utility>

#include "qmod/representation.hpp"

namespace qmod {

// Dimensions of the framing spaces V_i.
using FramingVector = DimensionVector;

struct FramedRep {
  Representation rep;
  FramingVector zeta;
  std::vector<Mat> framing;  // f_i, shape zeta[i] x alpha[i]

  void validate() const;
  const Mat& f(int v) const { return framing[static_cast<size_t>(v) - 1]; }
  GradedSubspace framing_kernel() const;
};

// A pair of characters (theta, kappa); kappa must be nonnegative on
// dimension vectors, i.e. componentwise nonnegative.
struct Character {
  std::vector<long> weights;          // theta
  std::vector<long> positivity_form;  // kappa

  long theta_of(const DimensionVector& d) const;
  long kappa_of(const DimensionVector& d) const;
  void validate() const;
};

// No nonzero submodule of M inside ker f.
bool is_stable(const FramedRep& fr);

// Q-tilde: Q plus a vertex "infinity" carrying zeta_i arrows i -> infinity.
struct ExtendedQuiver {
  Quiver quiver;
  int infinity = 0;                                  // the added vertex id
  std::vector<std::pair<int, int>> framing_arrows;   // arrow index -> (source vertex, copy)
  DimensionVector extend(const DimensionVector& alpha) const;  // alpha~ with alpha~_inf = 1
};
ExtendedQuiver extend_quiver(const Quiver& q, const FramingVector& zeta);

// Iso (1): framing rows become one-dimensional-target arrow matrices.
Representation framed_to_extended(const FramedRep& fr);
FramedRep extended_to_framed(const Representation& ext, const Quiver& q, const FramingVector& zeta);

// Lemma-1 character cleared of denominators by kappa(alpha) > 0:
// xi'(d) = theta(alpha) kappa(d) - kappa(alpha) theta(d).
Character slope_to_character(const Character& c, const DimensionVector& alpha);

// zeta_i >= dim (soc M)_i; on success a stable witness framing is returned.
std::pair<bool, std::optional<FramedRep>> framing_existence(const Representation& m, const FramingVector& zeta);

// Traces of all words in the arrow matrices vanish (word-span saturation).
bool null_cone_membership(const FramedRep& fr);

// Every product of `bound` operators from the family of cycle words of
// length <= sum(alpha) vanishes. bound <= 0 selects max_i alpha_i.
bool product_of_cycles_vanishes(const FramedRep& fr, int bound = 0);

}  // namespace qmod
