#pragma once

#include <optional>
#include <vector>

#include "qmod/rational.hpp"

namespace qmod {

struct MatEchelon;

// Dense matrix over Q with exact Gaussian elimination.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }

  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Rat& s) const;

  Mat transpose() const;
  Rat trace() const;
  bool is_zero() const;

  Mat hstack(const Mat& o) const;   // [this | o]
  Mat vstack(const Mat& o) const;   // [this ; o]
  Mat col_range(int c0, int c1) const;
  Mat row_range(int r0, int r1) const;
  Mat col(int j) const;

  // Reduced row echelon form; pivots[k] = column of the k-th pivot row.
  MatEchelon rref() const;

  int rank() const;
  Rat det() const;

  // Columns form the canonical basis of the right null space.
  Mat kernel() const;

  // Canonical reduced-column-echelon basis of the column space
  // (transpose-RREF-transpose, zero columns dropped). Unique per subspace.
  Mat column_space_echelon() const;

  // Solves (*this) * X = rhs. Returns nullopt when inconsistent. When the
  // matrix does not have full column rank the solution with zero free
  // variables is returned.
  std::optional<Mat> solve(const Mat& rhs) const;

  static Mat rand_small(Rng& rng, int rows, int cols, long lo = -5, long hi = 5);
  // Random integer matrix with determinant +-1 (product of unit triangulars).
  static Mat rand_unimodular(Rng& rng, int n, long lo = -2, long hi = 2);

  // Nilpotent with Jordan blocks of length <= order_bound (and at most
  // max_blocks blocks when positive), conjugated by a random unimodular.
  static Mat rand_nilpotent(Rng& rng, int dim, int order_bound, int max_blocks = 0);

 private:
  int r_ = 0, c_ = 0;
  std::vector<Rat> a_;
};

struct MatEchelon {
  Mat m;
  std::vector<int> pivots;
};

// Subspaces are represented by matrices whose columns span them.
Mat subspace_sum(const Mat& u, const Mat& v);
Mat subspace_intersect(const Mat& u, const Mat& v);
bool subspace_contains(const Mat& u, const Mat& v);  // span(u) >= span(v)
// {x : a x in span(u)}; ambient dimension = a.cols().
Mat preimage(const Mat& a, const Mat& u);
// Columns of the identity extending span(u) to the whole space.
Mat complement_basis(const Mat& u, int ambient);

}  // namespace qmod
