#include "qmod/representation.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmod {

void Representation::validate() const {
  quiver.validate();
  if (static_cast<int>(dims.size()) != quiver.n_vertices) throw std::invalid_argument("representation: dims size mismatch");
  if (matrices.size() != quiver.arrows.size()) throw std::invalid_argument("representation: matrix count mismatch");
  for (size_t i = 0; i < matrices.size(); ++i) {
    const auto& a = quiver.arrows[i];
    if (matrices[i].rows() != dim_at(dims, a.to) || matrices[i].cols() != dim_at(dims, a.from))
      throw std::invalid_argument("representation: matrix shape mismatch on " + a.name);
  }
}

Representation Representation::zeros(const Quiver& q, const DimensionVector& dims) {
  Representation x;
  x.quiver = q;
  x.dims = dims;
  for (const auto& a : q.arrows) x.matrices.emplace_back(dim_at(dims, a.to), dim_at(dims, a.from));
  return x;
}

GradedSubspace GradedSubspace::zero(const DimensionVector& ambient) {
  GradedSubspace u;
  u.ambient = ambient;
  for (int d : ambient) u.basis.emplace_back(d, 0);
  return u;
}

GradedSubspace GradedSubspace::full(const DimensionVector& ambient) {
  GradedSubspace u;
  u.ambient = ambient;
  for (int d : ambient) u.basis.push_back(Mat::identity(d));
  return u;
}

GradedSubspace GradedSubspace::from_columns(const DimensionVector& ambient, std::vector<Mat> cols) {
  GradedSubspace u;
  u.ambient = ambient;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (cols[i].rows() != ambient[i]) throw std::invalid_argument("graded subspace: ambient mismatch");
    u.basis.push_back(cols[i].column_space_echelon());
  }
  if (u.basis.size() != ambient.size()) throw std::invalid_argument("graded subspace: vertex count mismatch");
  return u;
}

DimensionVector GradedSubspace::dims() const {
  DimensionVector d;
  for (const Mat& m : basis) d.push_back(m.cols());
  return d;
}

bool ModuleMap::intertwines() const {
  for (size_t i = 0; i < source.quiver.arrows.size(); ++i) {
    const auto& a = source.quiver.arrows[i];
    Mat lhs = blocks[a.to - 1] * source.matrices[i];
    Mat rhs = target.matrices[i] * blocks[a.from - 1];
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool check_relations(const Representation& x, const RelationSet& rho) {
  x.validate();
  for (const LinComb& r : rho.relations) {
    if (r.is_zero()) continue;
    const Path& first = r.terms.begin()->first;
    Mat acc(dim_at(x.dims, first.target), dim_at(x.dims, first.source));
    for (const auto& [p, c] : r.terms) acc = acc + path_matrix(x, p).scaled(c);
    if (!acc.is_zero()) return false;
  }
  return true;
}

Mat path_matrix(const Representation& x, const Path& p) {
  Mat m = Mat::identity(dim_at(x.dims, p.source));
  for (int a : p.arrows) m = x.matrices[a] * m;
  return m;
}

std::map<int, Mat> path_action(const Representation& x, const LinComb& c) {
  std::map<int, Mat> out;
  std::map<int, int> tgt;
  for (const auto& [p, coef] : c.terms) {
    auto it = tgt.find(p.source);
    if (it == tgt.end()) {
      tgt.emplace(p.source, p.target);
      out.emplace(p.source, path_matrix(x, p).scaled(coef));
    } else {
      if (it->second != p.target) throw std::invalid_argument("path_action: mixed targets for one source");
      out.at(p.source) = out.at(p.source) + path_matrix(x, p).scaled(coef);
    }
  }
  return out;
}

bool is_subrepresentation(const GradedSubspace& u, const Representation& x) {
  if (u.ambient != x.dims) throw std::invalid_argument("is_subrepresentation: ambient mismatch");
  for (size_t i = 0; i < x.quiver.arrows.size(); ++i) {
    const auto& a = x.quiver.arrows[i];
    if (!subspace_contains(u.at(a.to), x.matrices[i] * u.at(a.from))) return false;
  }
  return true;
}

GradedSubspace graded_kernel(const DimensionVector& ambient, const std::vector<Mat>& maps) {
  GradedSubspace u;
  u.ambient = ambient;
  for (size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].cols() != ambient[i]) throw std::invalid_argument("graded_kernel: shape mismatch");
    u.basis.push_back(maps[i].kernel().column_space_echelon());
  }
  return u;
}

GradedSubspace socle(const Representation& x) {
  GradedSubspace s;
  s.ambient = x.dims;
  for (int v = 1; v <= x.quiver.n_vertices; ++v) {
    Mat cur = Mat::identity(dim_at(x.dims, v));
    for (int a : x.quiver.arrows_from(v)) cur = subspace_intersect(cur, x.matrices[a].kernel());
    s.basis.push_back(cur.column_space_echelon());
  }
  return s;
}

GradedSubspace maximal_submodule_in(const Representation& x, const GradedSubspace& k) {
  if (k.ambient != x.dims) throw std::invalid_argument("maximal_submodule_in: ambient mismatch");
  GradedSubspace u = k;
  for (auto& m : u.basis) m = m.column_space_echelon();
  while (true) {
    bool changed = false;
    GradedSubspace next = u;
    for (int v = 1; v <= x.quiver.n_vertices; ++v) {
      Mat cur = next.at(v);
      for (int a : x.quiver.arrows_from(v)) cur = subspace_intersect(cur, preimage(x.matrices[a], u.at(x.quiver.arrows[a].to)));
      cur = cur.column_space_echelon();
      if (!(cur == next.at(v))) changed = true;
      next.at(v) = cur;
    }
    u = next;
    if (!changed) break;
  }
  return u;
}

std::vector<ModuleMap> hom_space(const Representation& x, const Representation& y) {
  if (!(x.quiver.n_vertices == y.quiver.n_vertices) || x.quiver.arrows.size() != y.quiver.arrows.size())
    throw std::invalid_argument("hom_space: quivers differ");
  int n = x.quiver.n_vertices;
  std::vector<int> offset(n + 1, 0);
  int total = 0;
  for (int v = 1; v <= n; ++v) {
    offset[v] = total;
    total += dim_at(x.dims, v) * dim_at(y.dims, v);
  }
  // Unknowns: entries of f_v (row-major). Equations: f_{ha} X_a - Y_a f_{ta} = 0.
  int n_eq = 0;
  for (size_t a = 0; a < x.quiver.arrows.size(); ++a)
    n_eq += dim_at(y.dims, x.quiver.arrows[a].to) * dim_at(x.dims, x.quiver.arrows[a].from);
  Mat sys(n_eq, total);
  int row = 0;
  for (size_t a = 0; a < x.quiver.arrows.size(); ++a) {
    int s = x.quiver.arrows[a].from, t = x.quiver.arrows[a].to;
    const Mat& xa = x.matrices[a];
    const Mat& ya = y.matrices[a];
    for (int i = 0; i < dim_at(y.dims, t); ++i)
      for (int j = 0; j < dim_at(x.dims, s); ++j) {
        // sum_k f_t[i,k] xa[k,j] - sum_k ya[i,k] f_s[k,j]
        for (int k = 0; k < dim_at(x.dims, t); ++k) sys.at(row, offset[t] + i * dim_at(x.dims, t) + k) += xa.at(k, j);
        for (int k = 0; k < dim_at(y.dims, s); ++k) sys.at(row, offset[s] + k * dim_at(x.dims, s) + j) -= ya.at(i, k);
        ++row;
      }
  }
  Mat ker = sys.kernel();
  std::vector<ModuleMap> out;
  for (int c = 0; c < ker.cols(); ++c) {
    ModuleMap f;
    f.source = x;
    f.target = y;
    for (int v = 1; v <= n; ++v) {
      Mat fv(dim_at(y.dims, v), dim_at(x.dims, v));
      for (int i = 0; i < fv.rows(); ++i)
        for (int j = 0; j < fv.cols(); ++j) fv.at(i, j) = ker.at(offset[v] + i * fv.cols() + j, c);
      f.blocks.push_back(fv);
    }
    out.push_back(std::move(f));
  }
  return out;
}

GradedSubspace generated_submodule(const Representation& x, const GradedSubspace& seed) {
  GradedSubspace u = seed;
  for (auto& m : u.basis) m = m.column_space_echelon();
  while (true) {
    bool changed = false;
    for (size_t a = 0; a < x.quiver.arrows.size(); ++a) {
      int s = x.quiver.arrows[a].from, t = x.quiver.arrows[a].to;
      Mat img = x.matrices[a] * u.at(s);
      if (!subspace_contains(u.at(t), img)) {
        u.at(t) = subspace_sum(u.at(t), img);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return u;
}

namespace {

// Left kernel basis as rows.
Mat left_kernel_rows(const Mat& m) { return m.transpose().kernel().transpose(); }

}  // namespace

Representation sample_representation(const Quiver& q, const RelationSet& rho, const DimensionVector& alpha,
                                     std::uint64_t seed) {
  q.validate();
  Rng rng(seed);
  Representation x = Representation::zeros(q, alpha);

  if (rho.relations.empty()) {
    for (size_t a = 0; a < q.arrows.size(); ++a)
      x.matrices[a] = Mat::rand_small(rng, dim_at(alpha, q.arrows[a].to), dim_at(alpha, q.arrows[a].from));
    return x;
  }

  // Single loop with relation a^n.
  if (q.arrows.size() == 1 && q.arrows[0].from == q.arrows[0].to && rho.relations.size() == 1 &&
      rho.relations[0].terms.size() == 1) {
    const Path& p = rho.relations[0].terms.begin()->first;
    int n = p.length();
    int k = dim_at(alpha, q.arrows[0].from);
    x.matrices[0] = Mat::rand_nilpotent(rng, k, n);
    if (!check_relations(x, rho)) throw std::logic_error("sample_representation: loop construction failed");
    return x;
  }

  // Monomial compose-to-zero relations and a single binomial p - q: sample
  // arrows in order, then repair. Collect the arrows constrained as the
  // *last* factor of some monomial relation.
  bool monomial_ok = true;
  for (const LinComb& r : rho.relations)
    if (r.terms.size() > 2) monomial_ok = false;
  if (!monomial_ok) throw std::invalid_argument("sample_representation: unsupported family");

  // Random fill first.
  for (size_t a = 0; a < q.arrows.size(); ++a)
    x.matrices[a] = Mat::rand_small(rng, dim_at(alpha, q.arrows[a].to), dim_at(alpha, q.arrows[a].from));

  for (const LinComb& r : rho.relations) {
    if (r.terms.empty()) continue;
    if (r.terms.size() == 1) {
      // Monomial u...ba = 0: force the last arrow onto the left kernel of the rest.
      const Path& p = r.terms.begin()->first;
      Path rest{p.source, q.arrows[p.arrows.back()].from, {p.arrows.begin(), p.arrows.end() - 1}};
      Mat tailmat = path_matrix(x, rest);
      Mat lk = left_kernel_rows(tailmat);
      int last = p.arrows.back();
      Mat r0 = Mat::rand_small(rng, dim_at(alpha, q.arrows[last].to), lk.rows());
      x.matrices[last] = r0 * lk;
    } else {
      // Binomial c1*p + c2*q = 0 with distinct last arrows: resolve the last
      // arrow of q exactly; fall back to sending both composites to zero.
      auto it = r.terms.begin();
      const Path& p1 = it->first;
      Rat c1 = it->second;
      ++it;
      const Path& p2 = it->first;
      Rat c2 = it->second;
      int last2 = p2.arrows.back();
      Path rest2{p2.source, q.arrows[last2].from, {p2.arrows.begin(), p2.arrows.end() - 1}};
      Mat target = path_matrix(x, p1).scaled(-c1 / c2);
      Mat rest_mat = path_matrix(x, rest2);
      auto solved = rest_mat.transpose().solve(target.transpose());
      bool shared_last = !p1.arrows.empty() && p1.arrows.back() == last2;
      if (!shared_last && solved) {
        x.matrices[last2] = solved->transpose();
      } else {
        // Zero both composites: last arrow of each onto the left kernel of its tail.
        for (const Path& pp : {p1, p2}) {
          int last = pp.arrows.back();
          Path rest{pp.source, q.arrows[last].from, {pp.arrows.begin(), pp.arrows.end() - 1}};
          Mat lk = left_kernel_rows(path_matrix(x, rest));
          Mat r0 = Mat::rand_small(rng, dim_at(alpha, q.arrows[last].to), lk.rows());
          x.matrices[last] = r0 * lk;
        }
      }
    }
  }
  if (!check_relations(x, rho)) throw std::invalid_argument("sample_representation: unsupported family");
  return x;
}

}  // namespace qmod
