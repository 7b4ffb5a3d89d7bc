#include "qmod/injective.hpp"

#include <sstream>
#include <stdexcept>

namespace qmod {

int InjectiveModule::label_index(int v, const InjectiveLabel& l) const {
  const auto& ls = labels_at(v);
  for (size_t i = 0; i < ls.size(); ++i)
    if (ls[i] == l) return static_cast<int>(i);
  return -1;
}

Mat InjectiveModule::socle_block(int v) const {
  const auto& ls = labels_at(v);
  Mat out(static_cast<int>(ls.size()), dim_at(zeta, v));
  int c = 0;
  for (size_t i = 0; i < ls.size(); ++i)
    if (algebra.basis[ls[i].basis_path].is_trivial()) out.at(static_cast<int>(i), c++) = 1;
  if (c != dim_at(zeta, v)) throw std::logic_error("socle_block: e-label count mismatch");
  return out;
}

InjectiveModule build_injective(const QuotientAlgebraBasis& algebra, const FramingVector& zeta) {
  const Quiver& q = algebra.quiver;
  if (static_cast<int>(zeta.size()) != q.n_vertices) throw std::invalid_argument("build_injective: zeta size mismatch");

  InjectiveModule j;
  j.algebra = algebra;
  j.zeta = zeta;
  j.labels.resize(q.n_vertices);
  DimensionVector dims(q.n_vertices, 0);
  for (int v = 1; v <= q.n_vertices; ++v) {
    for (int bi : algebra.basis_from(v)) {
      int tgt = algebra.basis[bi].target;
      for (int p = 1; p <= dim_at(zeta, tgt); ++p) j.labels[v - 1].push_back({bi, p});
    }
    dims[v - 1] = static_cast<int>(j.labels[v - 1].size());
  }

  j.rep = Representation::zeros(q, dims);
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int i = q.arrows[a].from, k = q.arrows[a].to;
    Mat& m = j.rep.matrices[a];
    // a . tau*^{(p)} = sum over sigma in Xi from k of coeff_tau(nf(sigma a)) sigma*^{(p)}.
    for (size_t col = 0; col < j.labels[i - 1].size(); ++col) {
      const InjectiveLabel& src = j.labels[i - 1][col];
      const Path& tau = algebra.basis[src.basis_path];
      for (size_t row = 0; row < j.labels[k - 1].size(); ++row) {
        const InjectiveLabel& dst = j.labels[k - 1][row];
        if (dst.copy != src.copy) continue;
        const Path& sigma = algebra.basis[dst.basis_path];
        if (sigma.target != tau.target) continue;
        Path sa = *compose_paths(sigma, Path{i, k, {static_cast<int>(a)}});
        LinComb nf = algebra.normal_form(sa);
        auto it = nf.terms.find(tau);
        if (it != nf.terms.end()) m.at(static_cast<int>(row), static_cast<int>(col)) = it->second;
      }
    }
  }
  if (!check_relations(j.rep, algebra.rho)) throw std::logic_error("build_injective: J violates the relations");
  return j;
}

ModuleMap phi(const FramedRep& fr, const InjectiveModule& j) {
  fr.validate();
  if (fr.zeta != j.zeta) throw std::invalid_argument("phi: zeta mismatch");
  const Quiver& q = j.algebra.quiver;
  ModuleMap out;
  out.source = fr.rep;
  out.target = j.rep;
  for (int v = 1; v <= q.n_vertices; ++v) {
    const auto& ls = j.labels_at(v);
    Mat block(static_cast<int>(ls.size()), dim_at(fr.rep.dims, v));
    for (size_t r = 0; r < ls.size(); ++r) {
      const Path& tau = j.algebra.basis[ls[r].basis_path];
      Mat row = fr.f(tau.target) * path_matrix(fr.rep, tau);
      for (int c = 0; c < block.cols(); ++c) block.at(static_cast<int>(r), c) = row.at(ls[r].copy - 1, c);
    }
    out.blocks.push_back(std::move(block));
  }
  if (!out.intertwines()) throw std::logic_error("phi: map does not intertwine (rep violates the relations?)");
  return out;
}

GradedSubspace kernel_phi(const FramedRep& fr, const InjectiveModule& j) {
  ModuleMap m = phi(fr, j);
  return graded_kernel(fr.rep.dims, m.blocks);
}

FramedRep recover(const std::vector<Mat>& embedding, const InjectiveModule& j) {
  const Quiver& q = j.algebra.quiver;
  if (static_cast<int>(embedding.size()) != q.n_vertices) throw std::invalid_argument("recover: block count mismatch");
  DimensionVector alpha;
  for (int v = 1; v <= q.n_vertices; ++v) {
    const Mat& f = embedding[v - 1];
    if (f.rows() != dim_at(j.rep.dims, v)) throw std::invalid_argument("recover: block row mismatch");
    if (f.rank() != f.cols()) throw std::invalid_argument("recover: non-injective block");
    alpha.push_back(f.cols());
  }
  {
    std::vector<Mat> cols = embedding;
    if (!is_subrepresentation(GradedSubspace::from_columns(j.rep.dims, cols), j.rep))
      throw std::invalid_argument("recover: column span is not a submodule");
  }

  FramedRep fr;
  fr.zeta = j.zeta;
  fr.rep.quiver = q;
  fr.rep.dims = alpha;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int s = q.arrows[a].from, t = q.arrows[a].to;
    auto x = embedding[t - 1].solve(j.rep.matrices[a] * embedding[s - 1]);
    if (!x) throw std::logic_error("recover: intertwining solve inconsistent");
    fr.rep.matrices.push_back(*x);
  }
  for (int v = 1; v <= q.n_vertices; ++v) {
    // f_v = projection of the embedding onto the e_v-labeled block.
    const auto& ls = j.labels_at(v);
    Mat fv(dim_at(j.zeta, v), dim_at(alpha, v));
    int r = 0;
    for (size_t i = 0; i < ls.size(); ++i)
      if (j.algebra.basis[ls[i].basis_path].is_trivial()) {
        for (int c = 0; c < fv.cols(); ++c) fv.at(r, c) = embedding[v - 1].at(static_cast<int>(i), c);
        ++r;
      }
    fr.framing.push_back(std::move(fv));
  }
  fr.validate();
  return fr;
}

bool grass_membership(const GradedSubspace& u, const InjectiveModule& j) { return is_subrepresentation(u, j.rep); }

DaggerData build_dagger(const InjectiveModule& j) {
  const Quiver& q = j.algebra.quiver;
  DaggerData out;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int i = q.arrows[a].from, s = q.arrows[a].to;
    DaggerData::ArrowDagger d;
    Path arrow_path{i, s, {static_cast<int>(a)}};
    const auto& ls = j.labels_at(s);
    for (size_t li = 0; li < ls.size(); ++li) {
      const Path& sigma = j.algebra.basis[ls[li].basis_path];
      if (!j.algebra.normal_form(*compose_paths(sigma, arrow_path)).is_zero()) d.jtilde_labels.push_back(static_cast<int>(li));
    }
    d.inclusion = Mat(dim_at(j.rep.dims, s), static_cast<int>(d.jtilde_labels.size()));
    for (size_t c = 0; c < d.jtilde_labels.size(); ++c) d.inclusion.at(d.jtilde_labels[c], static_cast<int>(c)) = 1;

    // Index change: sigma*^{(p)} -> (1/c) eta*^{(p)} when nf(sigma a) = c eta.
    Mat dag(dim_at(j.rep.dims, i), static_cast<int>(d.jtilde_labels.size()));
    bool simple = true;
    for (size_t c = 0; c < d.jtilde_labels.size() && simple; ++c) {
      const InjectiveLabel& l = ls[d.jtilde_labels[c]];
      LinComb nf = j.algebra.normal_form(*compose_paths(j.algebra.basis[l.basis_path], arrow_path));
      if (nf.terms.size() != 1) {
        simple = false;
        break;
      }
      int bi = j.algebra.index_of(nf.terms.begin()->first);
      int row = bi >= 0 ? j.label_index(i, {bi, l.copy}) : -1;
      if (row < 0) {
        simple = false;
        break;
      }
      dag.at(row, static_cast<int>(c)) = 1 / nf.terms.begin()->second;
    }
    if (!simple || !(j.rep.matrices[a] * dag == d.inclusion)) {
      auto solved = j.rep.matrices[a].solve(d.inclusion);
      if (!solved) throw std::logic_error("build_dagger: arrow action has no section on J~");
      dag = *solved;
    }
    d.dagger = std::move(dag);
    out.arrows.push_back(std::move(d));
  }
  return out;
}

bool dagger_condition(const GradedSubspace& u, const InjectiveModule& j, const DaggerData& dg) {
  if (u.ambient != j.rep.dims) throw std::invalid_argument("dagger_condition: ambient mismatch");
  const Quiver& q = j.algebra.quiver;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int i = q.arrows[a].from, s = q.arrows[a].to;
    const auto& d = dg.arrows[a];
    Mat w = subspace_intersect(u.at(s), d.inclusion);
    Mat coords = d.inclusion.transpose() * w;  // unit columns, so this extracts J~ coordinates
    Mat ambient = j.socle_block(i).hstack(d.dagger * coords);
    if (!subspace_contains(ambient, u.at(i))) return false;
  }
  return true;
}

namespace {

std::string label_str(const InjectiveModule& j, int v, const InjectiveLabel& l) {
  const Path& tau = j.algebra.basis[l.basis_path];
  std::ostringstream os;
  os << "V" << tau.target << "^(" << tau.display(j.algebra.quiver) << ")";
  if (dim_at(j.zeta, tau.target) > 1) os << "[" << l.copy << "]";
  (void)v;
  return os.str();
}

// Set-expression for dagger_a(U_s cap J~): "U_s" when J~ = J_s, "(U_s cap V_s)"
// when J~ is the socle block, the explicit label list otherwise.
std::string jtilde_str(const InjectiveModule& j, int s, const DaggerData::ArrowDagger& d) {
  size_t all = j.labels_at(s).size();
  if (d.jtilde_labels.size() == all) return "U" + std::to_string(s);
  bool socle_only = true;
  size_t e_count = 0;
  for (size_t i = 0; i < all; ++i)
    if (j.algebra.basis[j.labels_at(s)[i].basis_path].is_trivial()) ++e_count;
  for (int li : d.jtilde_labels)
    if (!j.algebra.basis[j.labels_at(s)[li].basis_path].is_trivial()) socle_only = false;
  if (socle_only && d.jtilde_labels.size() == e_count) return "(U" + std::to_string(s) + " ∩ V" + std::to_string(s) + ")";
  std::ostringstream os;
  os << "(U" << s << " ∩ [";
  for (size_t c = 0; c < d.jtilde_labels.size(); ++c) {
    if (c) os << " ⊕ ";
    os << label_str(j, s, j.labels_at(s)[d.jtilde_labels[c]]);
  }
  os << "])";
  return os.str();
}

}  // namespace

std::string dagger_report(const InjectiveModule& j, const DaggerData& dg) {
  const Quiver& q = j.algebra.quiver;
  std::ostringstream os;
  os << "J dimensions:";
  for (int v = 1; v <= q.n_vertices; ++v) os << " dim J" << v << " = " << dim_at(j.rep.dims, v);
  os << "\n";
  for (int v = 1; v <= q.n_vertices; ++v) {
    os << "J" << v << " =";
    const auto& ls = j.labels_at(v);
    if (ls.empty()) os << " 0";
    for (size_t i = 0; i < ls.size(); ++i) os << (i ? " ⊕ " : " ") << label_str(j, v, ls[i]);
    os << "\n";
  }
  os << "membership conditions:\n";
  for (int v = 1; v <= q.n_vertices; ++v)
    if (q.arrows_from(v).empty()) os << "U" << v << " ⊆ V" << v << "\n";
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int i = q.arrows[a].from, s = q.arrows[a].to;
    os << "U" << i << " ⊆ V" << i << " ⊕ " << jtilde_str(j, s, dg.arrows[a]) << "\n";
  }
  os << "dagger table:\n";
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& d = dg.arrows[a];
    int s = q.arrows[a].to;
    for (size_t c = 0; c < d.jtilde_labels.size(); ++c) {
      const InjectiveLabel& l = j.labels_at(s)[d.jtilde_labels[c]];
      os << "†_" << q.arrows[a].name << ": " << label_str(j, s, l) << " → ";
      bool printed = false;
      for (int r = 0; r < d.dagger.rows(); ++r)
        if (sgn(d.dagger.at(r, static_cast<int>(c))) != 0) {
          if (printed) os << " + ";
          if (d.dagger.at(r, static_cast<int>(c)) != 1) os << rat_str(d.dagger.at(r, static_cast<int>(c))) << "*";
          os << label_str(j, q.arrows[a].from, j.labels_at(q.arrows[a].from)[r]);
          printed = true;
        }
      if (!printed) os << "0";
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace qmod
