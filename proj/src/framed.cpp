#include "qmod/framed.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmod {

void FramedRep::validate() const {
  rep.validate();
  if (static_cast<int>(zeta.size()) != rep.quiver.n_vertices) throw std::invalid_argument("framed rep: zeta size mismatch");
  if (framing.size() != zeta.size()) throw std::invalid_argument("framed rep: framing count mismatch");
  for (int v = 1; v <= rep.quiver.n_vertices; ++v)
    if (f(v).rows() != dim_at(zeta, v) || f(v).cols() != dim_at(rep.dims, v))
      throw std::invalid_argument("framed rep: framing shape mismatch");
}

GradedSubspace FramedRep::framing_kernel() const { return graded_kernel(rep.dims, framing); }

long Character::theta_of(const DimensionVector& d) const {
  long s = 0;
  for (size_t i = 0; i < d.size(); ++i) s += weights[i] * d[i];
  return s;
}

long Character::kappa_of(const DimensionVector& d) const {
  long s = 0;
  for (size_t i = 0; i < d.size(); ++i) s += positivity_form[i] * d[i];
  return s;
}

void Character::validate() const {
  for (long k : positivity_form)
    if (k < 0) throw std::invalid_argument("character: kappa must be componentwise nonnegative");
}

bool is_stable(const FramedRep& fr) {
  fr.validate();
  return maximal_submodule_in(fr.rep, fr.framing_kernel()).is_zero();
}

ExtendedQuiver extend_quiver(const Quiver& q, const FramingVector& zeta) {
  if (static_cast<int>(zeta.size()) != q.n_vertices) throw std::invalid_argument("extend_quiver: zeta size mismatch");
  ExtendedQuiver ext;
  ext.quiver = q;
  ext.infinity = q.n_vertices + 1;
  ext.quiver.n_vertices = ext.infinity;
  for (int v = 1; v <= q.n_vertices; ++v)
    for (int p = 1; p <= dim_at(zeta, v); ++p) {
      ext.framing_arrows.emplace_back(v, p);
      ext.quiver.arrows.push_back({"fr_" + std::to_string(v) + "_" + std::to_string(p), v, ext.infinity});
    }
  return ext;
}

DimensionVector ExtendedQuiver::extend(const DimensionVector& alpha) const {
  DimensionVector out = alpha;
  out.push_back(1);
  return out;
}

Representation framed_to_extended(const FramedRep& fr) {
  fr.validate();
  ExtendedQuiver ext = extend_quiver(fr.rep.quiver, fr.zeta);
  Representation out = Representation::zeros(ext.quiver, ext.extend(fr.rep.dims));
  for (size_t a = 0; a < fr.rep.quiver.arrows.size(); ++a) out.matrices[a] = fr.rep.matrices[a];
  size_t base = fr.rep.quiver.arrows.size();
  for (size_t k = 0; k < ext.framing_arrows.size(); ++k) {
    auto [v, copy] = ext.framing_arrows[k];
    Mat row(1, dim_at(fr.rep.dims, v));
    for (int j = 0; j < row.cols(); ++j) row.at(0, j) = fr.f(v).at(copy - 1, j);
    out.matrices[base + k] = row;
  }
  return out;
}

FramedRep extended_to_framed(const Representation& ext, const Quiver& q, const FramingVector& zeta) {
  FramedRep fr;
  fr.rep.quiver = q;
  fr.rep.dims.assign(ext.dims.begin(), ext.dims.end() - 1);
  fr.rep.matrices.assign(ext.matrices.begin(), ext.matrices.begin() + q.arrows.size());
  fr.zeta = zeta;
  size_t k = q.arrows.size();
  for (int v = 1; v <= q.n_vertices; ++v) {
    Mat fv(dim_at(zeta, v), dim_at(fr.rep.dims, v));
    for (int p = 0; p < dim_at(zeta, v); ++p, ++k)
      for (int j = 0; j < fv.cols(); ++j) fv.at(p, j) = ext.matrices[k].at(0, j);
    fr.framing.push_back(fv);
  }
  fr.validate();
  return fr;
}

Character slope_to_character(const Character& c, const DimensionVector& alpha) {
  c.validate();
  long ka = c.kappa_of(alpha);
  if (ka <= 0) throw std::invalid_argument("slope_to_character: kappa(alpha) must be positive");
  long ta = c.theta_of(alpha);
  Character out;
  out.positivity_form = c.positivity_form;
  for (size_t i = 0; i < c.weights.size(); ++i) out.weights.push_back(ta * c.positivity_form[i] - ka * c.weights[i]);
  return out;
}

std::pair<bool, std::optional<FramedRep>> framing_existence(const Representation& m, const FramingVector& zeta) {
  m.validate();
  GradedSubspace soc = socle(m);
  for (int v = 1; v <= m.quiver.n_vertices; ++v)
    if (soc.at(v).cols() > dim_at(zeta, v)) return {false, std::nullopt};

  // Witness: project onto soc M along a complement, then embed soc M into
  // the framing spaces vertexwise.
  FramedRep fr;
  fr.rep = m;
  fr.zeta = zeta;
  for (int v = 1; v <= m.quiver.n_vertices; ++v) {
    int d = dim_at(m.dims, v);
    const Mat& s = soc.at(v);
    Mat compl_ = complement_basis(s, d);
    Mat basis = s.hstack(compl_);
    Mat inv = basis.solve(Mat::identity(d)).value();
    Mat fv(dim_at(zeta, v), d);
    for (int i = 0; i < s.cols(); ++i)
      for (int j = 0; j < d; ++j) fv.at(i, j) = inv.at(i, j);
    fr.framing.push_back(fv);
  }
  if (!is_stable(fr)) throw std::logic_error("framing_existence: witness construction failed");
  return {true, fr};
}

namespace {

// Block embedding of an operator M_s -> M_t into End(direct sum of M_i).
Mat block_embed(const DimensionVector& dims, int s, int t, const Mat& op) {
  int total = total_dim(dims);
  std::vector<int> off(dims.size() + 1, 0);
  for (size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
  Mat out(total, total);
  for (int i = 0; i < op.rows(); ++i)
    for (int j = 0; j < op.cols(); ++j) out.at(off[t - 1] + i, off[s - 1] + j) = op.at(i, j);
  return out;
}

// Echelon span of vectorized operators, with insert-if-independent.
struct OperatorSpan {
  std::map<int, std::vector<Rat>> rows;  // leading index -> reduced vector

  bool insert(std::vector<Rat> v) {
    while (true) {
      int lead = -1;
      for (size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) {
          lead = static_cast<int>(i);
          break;
        }
      if (lead < 0) return false;
      auto it = rows.find(lead);
      if (it == rows.end()) {
        Rat inv = 1 / v[lead];
        for (Rat& x : v) x *= inv;
        rows.emplace(lead, std::move(v));
        return true;
      }
      Rat f = v[lead];
      for (size_t i = 0; i < v.size(); ++i) v[i] -= f * it->second[i];
    }
  }
};

std::vector<Rat> vectorize(const Mat& m) {
  std::vector<Rat> v;
  v.reserve(static_cast<size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

}  // namespace

bool null_cone_membership(const FramedRep& fr) {
  fr.validate();
  const Representation& m = fr.rep;
  int total = total_dim(m.dims);
  if (total == 0) return true;

  std::vector<Mat> gens;
  for (size_t a = 0; a < m.quiver.arrows.size(); ++a)
    gens.push_back(block_embed(m.dims, m.quiver.arrows[a].from, m.quiver.arrows[a].to, m.matrices[a]));

  // Saturate the span of all nonempty words in the generators.
  OperatorSpan span;
  std::vector<Mat> basis;
  std::vector<Mat> frontier;
  for (const Mat& g : gens)
    if (span.insert(vectorize(g))) {
      basis.push_back(g);
      frontier.push_back(g);
    }
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const Mat& w : frontier)
      for (const Mat& g : gens) {
        Mat prod = g * w;
        if (span.insert(vectorize(prod))) {
          basis.push_back(prod);
          next.push_back(prod);
        }
      }
    frontier = std::move(next);
  }
  for (const Mat& b : basis)
    if (sgn(b.trace()) != 0) return false;
  return true;
}

bool product_of_cycles_vanishes(const FramedRep& fr, int bound) {
  fr.validate();
  const Representation& m = fr.rep;
  if (bound <= 0) bound = *std::max_element(m.dims.begin(), m.dims.end());
  int maxlen = total_dim(m.dims);
  if (maxlen == 0) return true;

  // All closed walks of length <= sum(alpha), as block operators.
  std::vector<Mat> cycles;
  std::vector<Path> layer;
  for (int v = 1; v <= m.quiver.n_vertices; ++v) layer.push_back(Path::trivial(v));
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Path> next;
    for (const Path& p : layer)
      for (size_t a = 0; a < m.quiver.arrows.size(); ++a)
        if (m.quiver.arrows[a].from == p.target) {
          Path e = p;
          e.arrows.push_back(static_cast<int>(a));
          e.target = m.quiver.arrows[a].to;
          if (e.target == e.source) cycles.push_back(block_embed(m.dims, e.source, e.target, path_matrix(m, e)));
          next.push_back(e);
        }
    layer = std::move(next);
  }

  OperatorSpan family_span;
  std::vector<Mat> family;
  for (const Mat& c : cycles)
    if (family_span.insert(vectorize(c))) family.push_back(c);

  // P_k = span of products of k family members; P_bound must vanish.
  std::vector<Mat> power = family;
  for (int k = 2; k <= bound; ++k) {
    OperatorSpan sp;
    std::vector<Mat> next;
    for (const Mat& p : power)
      for (const Mat& c : family) {
        Mat prod = p * c;
        if (sp.insert(vectorize(prod))) next.push_back(prod);
      }
    power = std::move(next);
    if (power.empty()) return true;
  }
  for (const Mat& p : power)
    if (!p.is_zero()) return false;
  return true;
}

}  // namespace qmod
