#include "qmod/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmod {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
  Mat out(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Rat& x = at(i, k);
      if (sgn(x) == 0) continue;
      for (int j = 0; j < o.c_; ++j) {
        if (sgn(o.at(k, j)) == 0) continue;
        out.at(i, j) += x * o.at(k, j);
      }
    }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum shape mismatch");
  Mat out(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix difference shape mismatch");
  Mat out(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
  return out;
}

Mat Mat::scaled(const Rat& s) const {
  Mat out(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
  return out;
}

Mat Mat::transpose() const {
  Mat out(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Rat Mat::trace() const {
  if (r_ != c_) throw std::invalid_argument("trace of non-square matrix");
  Rat t = 0;
  for (int i = 0; i < r_; ++i) t += at(i, i);
  return t;
}

bool Mat::is_zero() const {
  for (const Rat& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

Mat Mat::hstack(const Mat& o) const {
  if (r_ != o.r_) throw std::invalid_argument("hstack row mismatch");
  Mat out(r_, c_ + o.c_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) out.at(i, j) = at(i, j);
    for (int j = 0; j < o.c_; ++j) out.at(i, c_ + j) = o.at(i, j);
  }
  return out;
}

Mat Mat::vstack(const Mat& o) const {
  if (c_ != o.c_) throw std::invalid_argument("vstack column mismatch");
  Mat out(r_ + o.r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out.at(i, j) = at(i, j);
  for (int i = 0; i < o.r_; ++i)
    for (int j = 0; j < c_; ++j) out.at(r_ + i, j) = o.at(i, j);
  return out;
}

Mat Mat::col_range(int c0, int c1) const {
  Mat out(r_, c1 - c0);
  for (int i = 0; i < r_; ++i)
    for (int j = c0; j < c1; ++j) out.at(i, j - c0) = at(i, j);
  return out;
}

Mat Mat::row_range(int r0, int r1) const {
  Mat out(r1 - r0, c_);
  for (int i = r0; i < r1; ++i)
    for (int j = 0; j < c_; ++j) out.at(i - r0, j) = at(i, j);
  return out;
}

Mat Mat::col(int j) const { return col_range(j, j + 1); }

MatEchelon Mat::rref() const {
  MatEchelon e{*this, {}};
  Mat& m = e.m;
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int piv = -1;
    for (int i = row; i < r_; ++i)
      if (sgn(m.at(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < c_; ++j) std::swap(m.at(piv, j), m.at(row, j));
    Rat inv = 1 / m.at(row, col);
    for (int j = col; j < c_; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < r_; ++i) {
      if (i == row || sgn(m.at(i, col)) == 0) continue;
      Rat f = m.at(i, col);
      for (int j = col; j < c_; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

int Mat::rank() const { return static_cast<int>(rref().pivots.size()); }

Rat Mat::det() const {
  if (r_ != c_) throw std::invalid_argument("determinant of non-square matrix");
  Mat m = *this;
  Rat d = 1;
  for (int col = 0; col < c_; ++col) {
    int piv = -1;
    for (int i = col; i < r_; ++i)
      if (sgn(m.at(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < c_; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    Rat inv = 1 / m.at(col, col);
    for (int i = col + 1; i < r_; ++i) {
      if (sgn(m.at(i, col)) == 0) continue;
      Rat f = m.at(i, col) * inv;
      for (int j = col; j < c_; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

Mat Mat::kernel() const {
  MatEchelon e = rref();
  std::vector<int> free_cols;
  {
    size_t k = 0;
    for (int j = 0; j < c_; ++j) {
      if (k < e.pivots.size() && e.pivots[k] == j)
        ++k;
      else
        free_cols.push_back(j);
    }
  }
  Mat out(c_, static_cast<int>(free_cols.size()));
  for (size_t fc = 0; fc < free_cols.size(); ++fc) {
    int j = free_cols[fc];
    out.at(j, static_cast<int>(fc)) = 1;
    for (size_t k = 0; k < e.pivots.size(); ++k) out.at(e.pivots[k], static_cast<int>(fc)) = -e.m.at(static_cast<int>(k), j);
  }
  return out;
}

Mat Mat::column_space_echelon() const {
  MatEchelon e = transpose().rref();
  int rk = static_cast<int>(e.pivots.size());
  return e.m.row_range(0, rk).transpose();
}

std::optional<Mat> Mat::solve(const Mat& rhs) const {
  if (rhs.rows() != r_) throw std::invalid_argument("solve: rhs row mismatch");
  Mat aug = hstack(rhs);
  MatEchelon e = aug.rref();
  // Inconsistent iff a pivot falls in the rhs block.
  for (int p : e.pivots)
    if (p >= c_) return std::nullopt;
  Mat x(c_, rhs.cols());
  for (size_t k = 0; k < e.pivots.size(); ++k)
    for (int j = 0; j < rhs.cols(); ++j) x.at(e.pivots[k], j) = e.m.at(static_cast<int>(k), c_ + j);
  return x;
}

Mat Mat::rand_small(Rng& rng, int rows, int cols, long lo, long hi) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rng.small_int(lo, hi);
  return m;
}

Mat Mat::rand_unimodular(Rng& rng, int n, long lo, long hi) {
  Mat upper = Mat::identity(n), lower = Mat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      upper.at(i, j) = rng.small_int(lo, hi);
      lower.at(j, i) = rng.small_int(lo, hi);
    }
  return lower * upper;
}

Mat Mat::rand_nilpotent(Rng& rng, int dim, int order_bound, int max_blocks) {
  if (dim == 0) return Mat(0, 0);
  if (order_bound < 1) throw std::invalid_argument("rand_nilpotent: order bound must be positive");
  std::vector<int> blocks;
  int at = 0;
  while (at < dim) {
    long lo = 1;
    // Force large blocks while the remaining budget of blocks is tight.
    if (max_blocks > 0) {
      int remaining_blocks = max_blocks - static_cast<int>(blocks.size());
      if (remaining_blocks <= 0) throw std::invalid_argument("rand_nilpotent: block budget infeasible");
      lo = std::max<long>(1, dim - at - static_cast<long>(remaining_blocks - 1) * order_bound);
    }
    long hi = std::min<long>(order_bound, dim - at);
    if (lo > hi) throw std::invalid_argument("rand_nilpotent: block budget infeasible");
    int b = static_cast<int>(rng.uniform(lo, hi));
    blocks.push_back(b);
    at += b;
  }
  Mat j(dim, dim);
  at = 0;
  for (int b : blocks) {
    for (int i = 1; i < b; ++i) j.at(at + i - 1, at + i) = 1;
    at += b;
  }
  Mat g = Mat::rand_unimodular(rng, dim);
  return g * j * g.solve(Mat::identity(dim)).value();
}

Mat subspace_sum(const Mat& u, const Mat& v) { return u.hstack(v).column_space_echelon(); }

Mat subspace_intersect(const Mat& u, const Mat& v) {
  if (u.rows() != v.rows()) throw std::invalid_argument("intersect: ambient mismatch");
  if (u.cols() == 0 || v.cols() == 0) return Mat(u.rows(), 0);
  Mat ker = u.hstack(v.scaled(-1)).kernel();
  Mat xs = ker.row_range(0, u.cols());
  return (u * xs).column_space_echelon();
}

bool subspace_contains(const Mat& u, const Mat& v) {
  if (v.cols() == 0) return true;
  return u.hstack(v).rank() == u.rank();
}

Mat preimage(const Mat& a, const Mat& u) {
  // a x = u y  <=>  [a | -u] (x;y) = 0
  Mat ker = a.hstack(u.scaled(-1)).kernel();
  return ker.row_range(0, a.cols()).column_space_echelon();
}

Mat complement_basis(const Mat& u, int ambient) {
  Mat basis = u;
  Mat ext(ambient, 0);
  for (int j = 0; j < ambient; ++j) {
    Mat e(ambient, 1);
    e.at(j, 0) = 1;
    if (!subspace_contains(basis, e)) {
      basis = basis.hstack(e);
      ext = ext.hstack(e);
    }
  }
  return ext;
}

}  // namespace qmod
