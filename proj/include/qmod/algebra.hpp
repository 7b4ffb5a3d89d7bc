#pragma once

#include <map>
#include <vector>

#include "qmod/quiver.hpp"

namespace qmod {

// The path basis Xi of the truncated quotient A = kQ/(<rho> + (kQ)_{>=1}^N)
// together with a normal-form map. Basis paths are selected greedily in the
// canonical path order, so the basis is deterministic.
class QuotientAlgebraBasis {
 public:
  Quiver quiver;
  RelationSet rho;
  std::vector<Path> basis;  // Xi, canonical order; contains every e_i

  int nilpotency_bound() const { return rho.nilpotency_bound; }
  int dim() const { return static_cast<int>(basis.size()); }

  // Normal form of a path: zero for length >= N, table lookup otherwise.
  LinComb normal_form(const Path& p) const;
  LinComb normal_form(const LinComb& x) const;
  // Product in A of two normal-form elements.
  LinComb multiply(const LinComb& x, const LinComb& y) const;
  LinComb unit() const;  // sum of all e_i

  int index_of(const Path& p) const;  // position in Xi, -1 if absent
  std::vector<int> basis_from(int source) const;
  std::vector<int> basis_from_to(int source, int target) const;

  friend QuotientAlgebraBasis build_quotient_basis(const Quiver& q, const RelationSet& rho);

 private:
  std::map<Path, LinComb> nf_;  // paths of length < N
};

QuotientAlgebraBasis build_quotient_basis(const Quiver& q, const RelationSet& rho);

// Sufficient truncated test for <rho> containing all paths of length N:
// ideal membership is decided by linear algebra over paths of length
// < N + L_max, spanning {u*r*v} truncated at that length.
bool verify_regular_ideal(const Quiver& q, const RelationSet& rho);

inline LinComb normal_form(const LinComb& x, const QuotientAlgebraBasis& basis) { return basis.normal_form(x); }
inline LinComb algebra_multiply(const LinComb& x, const LinComb& y, const QuotientAlgebraBasis& basis) {
  return basis.multiply(x, y);
}

}  // namespace qmod
