#include "qmod/spade.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmod {

namespace {

// Kosaraju strongly connected components; returns per-vertex component id.
std::vector<int> scc_ids(const Quiver& q, int& count) {
  int n = q.n_vertices;
  std::vector<std::vector<int>> fwd(n + 1), bwd(n + 1);
  for (const auto& a : q.arrows) {
    fwd[a.from].push_back(a.to);
    bwd[a.to].push_back(a.from);
  }
  std::vector<bool> seen(n + 1, false);
  std::vector<int> order;
  for (int s = 1; s <= n; ++s) {
    if (seen[s]) continue;
    // Iterative post-order.
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    seen[s] = true;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < fwd[v].size()) {
        int w = fwd[v][i++];
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n + 1, -1);
  count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<int> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : bwd[v])
        if (comp[w] < 0) {
          comp[w] = count;
          stack.push_back(w);
        }
    }
    ++count;
  }
  return comp;
}

}  // namespace

SuccessiveDecomposition detect_successive(const Quiver& q) {
  q.validate();
  int count = 0;
  std::vector<int> comp = scc_ids(q, count);

  // Group vertices per component; a component is cyclic when it has more
  // than one vertex or carries a loop.
  std::vector<std::vector<int>> members(count);
  for (int v = 1; v <= q.n_vertices; ++v) members[comp[v]].push_back(v);
  std::vector<bool> cyclic(count, false);
  for (const auto& a : q.arrows)
    if (comp[a.from] == comp[a.to]) cyclic[comp[a.from]] = true;

  // Base vertices ordered by their smallest Q-vertex.
  std::vector<int> comp_order(count);
  for (int c = 0; c < count; ++c) comp_order[c] = c;
  std::sort(comp_order.begin(), comp_order.end(), [&](int a, int b) { return members[a].front() < members[b].front(); });

  SuccessiveDecomposition d;
  d.original = q;
  d.base.n_vertices = count;
  d.cycle_len.assign(count, 0);
  d.cycle_vertices.resize(count);
  d.cycle_arrows.resize(count);
  d.vertex_loc.assign(q.n_vertices, {0, 0});

  std::vector<int> base_id(count, 0);  // component -> base vertex
  for (int k = 0; k < count; ++k) base_id[comp_order[k]] = k + 1;

  std::vector<int> in_cycle_arrow(q.arrows.size(), 0);
  for (int c = 0; c < count; ++c) {
    int bv = base_id[c];
    if (!cyclic[c]) {
      d.cycle_vertices[bv - 1] = {members[c].front()};
      d.vertex_loc[members[c].front() - 1] = {bv, 0};
      continue;
    }
    // Every vertex of a cyclic component needs exactly one in-component
    // out-arrow and one in-component in-arrow.
    std::map<int, int> next_arrow;
    std::vector<int> indeg(q.n_vertices + 1, 0);
    for (size_t a = 0; a < q.arrows.size(); ++a) {
      if (comp[q.arrows[a].from] != c || comp[q.arrows[a].to] != c) continue;
      if (next_arrow.count(q.arrows[a].from))
        throw std::invalid_argument("not a successive-cycle quiver: vertex " + std::to_string(q.arrows[a].from) +
                                    " has two cycle arrows");
      next_arrow[q.arrows[a].from] = static_cast<int>(a);
      ++indeg[q.arrows[a].to];
    }
    for (int v : members[c])
      if (!next_arrow.count(v) || indeg[v] != 1)
        throw std::invalid_argument("not a successive-cycle quiver: component of vertex " + std::to_string(v) +
                                    " is not a simple cycle");
    int n = static_cast<int>(members[c].size());
    int start = members[c].front();
    std::vector<int> verts, arrows;
    int at = start;
    for (int step = 0; step < n; ++step) {
      verts.push_back(at);
      int a = next_arrow.at(at);
      arrows.push_back(a);
      in_cycle_arrow[a] = 1;
      at = q.arrows[a].to;
    }
    if (at != start || std::set<int>(verts.begin(), verts.end()).size() != static_cast<size_t>(n))
      throw std::invalid_argument("not a successive-cycle quiver: component of vertex " + std::to_string(start) +
                                  " is not a simple cycle");
    d.cycle_len[bv - 1] = n;
    d.cycle_vertices[bv - 1] = verts;
    d.cycle_arrows[bv - 1] = arrows;
    for (int j = 0; j < n; ++j) d.vertex_loc[verts[j] - 1] = {bv, j};
  }

  for (size_t a = 0; a < q.arrows.size(); ++a) {
    if (in_cycle_arrow[a]) continue;
    const auto& ar = q.arrows[a];
    d.base.arrows.push_back({ar.name, d.vertex_loc[ar.from - 1].first, d.vertex_loc[ar.to - 1].first});
    d.base_arrow_of.push_back(static_cast<int>(a));
  }
  if (!d.base.is_acyclic()) throw std::logic_error("detect_successive: contracted quiver is not acyclic");
  return d;
}

void MultiRootData::validate(const SuccessiveDecomposition& d, const DimensionVector& alpha) const {
  if (per_vertex.size() != static_cast<size_t>(d.base.n_vertices))
    throw std::invalid_argument("multi root data: base vertex count mismatch");
  for (int bv = 1; bv <= d.base.n_vertices; ++bv) {
    const RootData& rd = per_vertex[bv - 1];
    if (!d.is_cycle(bv)) {
      if (rd.roots.size() != 1 || sgn(rd.roots[0].lambda) != 0 || rd.roots[0].r.size() != 1 ||
          rd.roots[0].r[0] != dim_at(alpha, d.q_vertex(bv, 0)))
        throw std::invalid_argument("multi root data: plain vertex " + std::to_string(bv) +
                                    " must carry the degenerate datum");
      continue;
    }
    DimensionVector cycle_alpha;
    for (int j = 0; j < d.positions(bv); ++j) cycle_alpha.push_back(dim_at(alpha, d.q_vertex(bv, j)));
    std::string why;
    if (!validate_root_data(rd, cycle_alpha, &why))
      throw std::invalid_argument("multi root data: cycle at base vertex " + std::to_string(bv) + ": " + why);
  }
}

MultiRootData make_multi_root_data(const SuccessiveDecomposition& d, const DimensionVector& alpha,
                                   const std::map<int, RootData>& cycle_roots) {
  MultiRootData mrd;
  for (int bv = 1; bv <= d.base.n_vertices; ++bv) {
    auto it = cycle_roots.find(bv);
    if (it != cycle_roots.end()) {
      mrd.per_vertex.push_back(it->second);
    } else if (!d.is_cycle(bv)) {
      RootData rd;
      rd.roots.push_back({Rat(0), {dim_at(alpha, d.q_vertex(bv, 0))}});
      mrd.per_vertex.push_back(rd);
    } else {
      throw std::invalid_argument("make_multi_root_data: missing root data for cycle at base vertex " +
                                  std::to_string(bv));
    }
  }
  mrd.validate(d, alpha);
  return mrd;
}

int SpadeBundle::spade_vertex(int base_v, int pos, int root) const {
  for (size_t i = 0; i < vertex_key.size(); ++i)
    if (vertex_key[i] == std::array<int, 3>{base_v, pos, root}) return static_cast<int>(i) + 1;
  throw std::invalid_argument("spade_vertex: no such vertex");
}

int SpadeBundle::label_index(int spade_v, const WLabel& l) const {
  const auto& ls = labels[spade_v - 1];
  auto it = std::find(ls.begin(), ls.end(), l);
  if (it == ls.end()) return -1;
  return static_cast<int>(it - ls.begin());
}

Poly SpadeBundle::char_poly_at(int base_v, int pos) const {
  Poly p = Poly::constant(Rat(1));
  for (const auto& root : roots.per_vertex[base_v - 1].roots) p = p * Poly::x_minus(root.lambda).pow(root.r[pos]);
  return p;
}

namespace {

// All paths in the acyclic base quiver from v, as arrow-index lists in
// application order, ordered by (length, lex).
std::vector<std::vector<int>> base_paths_from(const Quiver& base, int v) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::pair<std::vector<int>, int>> layer{{{}, v}};
  while (!layer.empty()) {
    std::vector<std::pair<std::vector<int>, int>> next;
    for (const auto& [p, at] : layer)
      for (size_t a = 0; a < base.arrows.size(); ++a)
        if (base.arrows[a].from == at) {
          auto e = p;
          e.push_back(static_cast<int>(a));
          out.push_back(e);
          next.push_back({e, base.arrows[a].to});
        }
    layer = std::move(next);
  }
  return out;
}

// Max string length of root l at base vertex bv (1 at plain vertices).
int string_len(const SuccessiveDecomposition& d, const MultiRootData& mrd, int bv, int l) {
  if (!d.is_cycle(bv)) return 1;
  const auto& r = mrd.per_vertex[bv - 1].roots[l].r;
  return *std::max_element(r.begin(), r.end());
}

}  // namespace

SpadeBundle build_spade(const SuccessiveDecomposition& d, const MultiRootData& mrd, const FramingVector& zeta) {
  if (static_cast<int>(zeta.size()) != d.original.n_vertices) throw std::invalid_argument("build_spade: zeta size mismatch");
  SpadeBundle b;
  b.decomp = d;
  b.roots = mrd;
  b.zeta = zeta;

  // Vertices i^{(j,l)} and their target dimensions.
  for (int bv = 1; bv <= d.base.n_vertices; ++bv)
    for (int pos = 0; pos < d.positions(bv); ++pos)
      for (int l = 0; l < static_cast<int>(mrd.per_vertex[bv - 1].roots.size()); ++l) {
        b.vertex_key.push_back({bv, pos, l});
        b.alpha_tilde.push_back(mrd.per_vertex[bv - 1].roots[l].r[pos]);
      }
  b.spade.n_vertices = static_cast<int>(b.vertex_key.size());

  // Basis labels per vertex: path, then root choices, windings, terminal data.
  std::vector<std::vector<std::vector<int>>> paths(d.base.n_vertices + 1);
  for (int bv = 1; bv <= d.base.n_vertices; ++bv) paths[bv] = base_paths_from(d.base, bv);

  b.labels.resize(b.vertex_key.size());
  for (size_t sv = 0; sv < b.vertex_key.size(); ++sv) {
    auto [bv, pos, l0] = b.vertex_key[sv];
    (void)pos;
    for (const auto& path : paths[bv]) {
      std::vector<int> visit(1, bv);
      for (int k : path) visit.push_back(d.base.arrows[k].to);
      int L = static_cast<int>(path.size());
      // Root choices per visit (visit 0 fixed to l0).
      std::vector<int> roots(L + 1, 0), windings(L + 1, 0);
      roots[0] = l0;
      std::function<void(int)> rec_roots = [&](int t) {
        if (t > L) {
          std::function<void(int)> rec_wind = [&](int u) {
            if (u > L) {
              int term = visit[L];
              for (int tp = 0; tp < d.positions(term); ++tp)
                for (int fr = 1; fr <= dim_at(zeta, d.q_vertex(term, tp)); ++fr)
                  b.labels[sv].push_back({path, roots, windings, tp, fr});
              return;
            }
            for (int s = 0; s < string_len(d, mrd, visit[u], roots[u]); ++s) {
              windings[u] = s;
              rec_wind(u + 1);
            }
            windings[u] = 0;
          };
          rec_wind(0);
          return;
        }
        for (int l = 0; l < static_cast<int>(mrd.per_vertex[visit[t] - 1].roots.size()); ++l) {
          roots[t] = l;
          rec_roots(t + 1);
        }
        roots[t] = 0;
      };
      rec_roots(1);
    }
  }

  DimensionVector wdims;
  for (const auto& ls : b.labels) wdims.push_back(static_cast<int>(ls.size()));

  // Arrows of Q-spade, in Q-arrow order.
  struct PendingArrow {
    std::string name;
    int from, to;
    SpadeBundle::ArrowInfo info;
  };
  std::vector<PendingArrow> pending;
  for (size_t qa = 0; qa < d.original.arrows.size(); ++qa) {
    int from_q = d.original.arrows[qa].from, to_q = d.original.arrows[qa].to;
    auto [bfrom, jfrom] = d.vertex_loc[from_q - 1];
    auto [bto, jto] = d.vertex_loc[to_q - 1];
    bool is_cycle_arrow = false;
    if (bfrom == bto && d.is_cycle(bfrom)) {
      const auto& ca = d.cycle_arrows[bfrom - 1];
      if (ca[jfrom] == static_cast<int>(qa)) is_cycle_arrow = true;
    }
    if (is_cycle_arrow) {
      for (int l = 0; l < static_cast<int>(mrd.per_vertex[bfrom - 1].roots.size()); ++l)
        pending.push_back({d.original.arrows[qa].name + "_r" + std::to_string(l + 1),
                           b.spade_vertex(bfrom, jfrom, l), b.spade_vertex(bto, jto, l),
                           {true, static_cast<int>(qa), l, l}});
    } else {
      for (int lf = 0; lf < static_cast<int>(mrd.per_vertex[bfrom - 1].roots.size()); ++lf)
        for (int lt = 0; lt < static_cast<int>(mrd.per_vertex[bto - 1].roots.size()); ++lt)
          pending.push_back({d.original.arrows[qa].name + "_" + std::to_string(lf + 1) + "_" + std::to_string(lt + 1),
                             b.spade_vertex(bfrom, jfrom, lf), b.spade_vertex(bto, jto, lt),
                             {false, static_cast<int>(qa), lf, lt}});
    }
  }
  for (const auto& p : pending) {
    b.spade.arrows.push_back({p.name, p.from, p.to});
    b.arrow_info.push_back(p.info);
  }

  // W-spade matrices.
  b.w = Representation::zeros(b.spade, wdims);
  std::vector<std::map<WLabel, int>> lookup(b.vertex_key.size());
  for (size_t sv = 0; sv < b.labels.size(); ++sv)
    for (size_t i = 0; i < b.labels[sv].size(); ++i) lookup[sv].emplace(b.labels[sv][i], static_cast<int>(i));

  for (size_t sa = 0; sa < b.spade.arrows.size(); ++sa) {
    int src = b.spade.arrows[sa].from, dst = b.spade.arrows[sa].to;
    const auto& info = b.arrow_info[sa];
    Mat& m = b.w.matrices[sa];
    auto [bv, pos, l0] = b.vertex_key[src - 1];
    const Rat lambda = b.roots.per_vertex[bv - 1].roots[l0].lambda;
    for (size_t col = 0; col < b.labels[src - 1].size(); ++col) {
      const WLabel& lab = b.labels[src - 1][col];
      if (info.is_cycle) {
        // On its own tensor factor the cycle acts as lambda + shift at the
        // step that crosses the departure position, and as a relabeling at
        // every other step.
        bool shift_here;
        if (lab.path.empty()) {
          shift_here = (lab.terminal_pos == pos);
        } else {
          int qa0 = d.base_arrow_of[lab.path[0]];
          shift_here = (d.vertex_loc[d.original.arrows[qa0].from - 1].second == pos);
        }
        if (!shift_here) {
          m.at(lookup[dst - 1].at(lab), static_cast<int>(col)) += Rat(1);
        } else {
          WLabel img = lab;
          m.at(lookup[dst - 1].at(img), static_cast<int>(col)) += lambda;
          if (lab.windings[0] > 0) {
            img.windings[0] -= 1;
            m.at(lookup[dst - 1].at(img), static_cast<int>(col)) += Rat(1);
          }
        }
      } else {
        // Base arrows: evaluation at zero of the source factor (windings[0]
        // must be 0, the trivial-path block dies) composed with the label
        // transport into the matching root component.
        if (lab.path.empty()) continue;
        if (d.base_arrow_of[lab.path[0]] != info.q_arrow) continue;
        if (lab.roots[1] != info.root_to) continue;
        if (lab.windings[0] != 0) continue;
        WLabel img;
        img.path.assign(lab.path.begin() + 1, lab.path.end());
        img.roots.assign(lab.roots.begin() + 1, lab.roots.end());
        img.windings.assign(lab.windings.begin() + 1, lab.windings.end());
        img.terminal_pos = lab.terminal_pos;
        img.frame = lab.frame;
        m.at(lookup[dst - 1].at(img), static_cast<int>(col)) += Rat(1);
      }
    }
  }
  return b;
}

FiberSpec fiber_spec(const SuccessiveDecomposition& d, const MultiRootData& mrd, const FramingVector& zeta) {
  SpadeBundle b = build_spade(d, mrd, zeta);
  return {b.spade, b.alpha_tilde, b.w};
}

namespace {

// Offsets of the per-root blocks of a Q-vertex inside the stacked W/U spaces.
struct VertexBlocks {
  std::vector<int> spade_vertices;  // per root l
  std::vector<int> woff, uoff;
  int wtotal = 0, utotal = 0;
};

VertexBlocks blocks_at(const SpadeBundle& b, const GradedSubspace* u, int bv, int pos) {
  VertexBlocks out;
  int nroots = static_cast<int>(b.roots.per_vertex[bv - 1].roots.size());
  for (int l = 0; l < nroots; ++l) {
    int sv = b.spade_vertex(bv, pos, l);
    out.spade_vertices.push_back(sv);
    out.woff.push_back(out.wtotal);
    out.wtotal += dim_at(b.w.dims, sv);
    out.uoff.push_back(out.utotal);
    if (u) out.utotal += u->at(sv).cols();
  }
  return out;
}

}  // namespace

FramedRep spade_recover(const SpadeBundle& b, const GradedSubspace& u) {
  if (u.ambient != b.w.dims) throw std::invalid_argument("spade_recover: ambient mismatch");
  if (!is_subrepresentation(u, b.w)) throw std::invalid_argument("spade_recover: not a submodule of W-spade");
  if (u.dims() != b.alpha_tilde) throw std::invalid_argument("spade_recover: dimension vector differs from alpha-tilde");

  const SuccessiveDecomposition& d = b.decomp;
  FramedRep fr;
  fr.rep.quiver = d.original;
  fr.zeta = b.zeta;

  // Per Q-vertex: stacked embedding of the recovered module into W.
  std::vector<Mat> embed(d.original.n_vertices);
  std::vector<VertexBlocks> blocks(d.original.n_vertices);
  fr.rep.dims.assign(d.original.n_vertices, 0);
  for (int qv = 1; qv <= d.original.n_vertices; ++qv) {
    auto [bv, pos] = d.vertex_loc[qv - 1];
    VertexBlocks bl = blocks_at(b, &u, bv, pos);
    Mat f(bl.wtotal, bl.utotal);
    for (size_t l = 0; l < bl.spade_vertices.size(); ++l) {
      const Mat& ul = u.at(bl.spade_vertices[l]);
      for (int i = 0; i < ul.rows(); ++i)
        for (int j = 0; j < ul.cols(); ++j) f.at(bl.woff[l] + i, bl.uoff[l] + j) = ul.at(i, j);
    }
    embed[qv - 1] = f;
    blocks[qv - 1] = bl;
    fr.rep.dims[qv - 1] = bl.utotal;
  }

  // Q-arrow matrices on W (sums of the spade blocks), then the restriction.
  for (size_t qa = 0; qa < d.original.arrows.size(); ++qa) {
    int from_q = d.original.arrows[qa].from, to_q = d.original.arrows[qa].to;
    const VertexBlocks& bs = blocks[from_q - 1];
    const VertexBlocks& bt = blocks[to_q - 1];
    Mat big(bt.wtotal, bs.wtotal);
    for (size_t sa = 0; sa < b.spade.arrows.size(); ++sa) {
      if (b.arrow_info[sa].q_arrow != static_cast<int>(qa)) continue;
      int lf = b.arrow_info[sa].root_from, lt = b.arrow_info[sa].root_to;
      const Mat& block = b.w.matrices[sa];
      for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j) big.at(bt.woff[lt] + i, bs.woff[lf] + j) += block.at(i, j);
    }
    auto x = embed[to_q - 1].solve(big * embed[from_q - 1]);
    if (!x) throw std::logic_error("spade_recover: intertwining solve inconsistent");
    fr.rep.matrices.push_back(*x);
  }

  // Framing: value at zero of the trivial-path block, summed over roots.
  for (int qv = 1; qv <= d.original.n_vertices; ++qv) {
    auto [bv, pos] = d.vertex_loc[qv - 1];
    const VertexBlocks& bl = blocks[qv - 1];
    Mat fv(dim_at(b.zeta, qv), bl.utotal);
    for (size_t l = 0; l < bl.spade_vertices.size(); ++l) {
      int sv = bl.spade_vertices[l];
      for (int frame = 1; frame <= dim_at(b.zeta, qv); ++frame) {
        WLabel lab;
        lab.roots = {static_cast<int>(l)};
        lab.windings = {0};
        lab.terminal_pos = pos;
        lab.frame = frame;
        int row = b.label_index(sv, lab);
        if (row < 0) throw std::logic_error("spade_recover: missing trivial-path label");
        for (int c = 0; c < bl.utotal; ++c) fv.at(frame - 1, c) += embed[qv - 1].at(bl.woff[l] + row, c);
      }
    }
    fr.framing.push_back(std::move(fv));
  }
  fr.validate();
  return fr;
}

std::vector<Mat> spade_embed(const SpadeBundle& b, const FramedRep& fr) {
  const SuccessiveDecomposition& d = b.decomp;
  fr.validate();
  if (fr.zeta != b.zeta) throw std::invalid_argument("spade_embed: zeta mismatch");

  // Cycle operators, their projectors and nilpotent parts per Q-vertex.
  std::vector<Mat> tau(d.original.n_vertices), proj, nilp;
  std::vector<std::vector<Mat>> projs(d.original.n_vertices), nilps(d.original.n_vertices);
  for (int qv = 1; qv <= d.original.n_vertices; ++qv) {
    auto [bv, pos] = d.vertex_loc[qv - 1];
    int dm = dim_at(fr.rep.dims, qv);
    if (!d.is_cycle(bv)) {
      tau[qv - 1] = Mat::identity(dm);
      projs[qv - 1] = {Mat::identity(dm)};
      nilps[qv - 1] = {Mat(dm, dm)};
      continue;
    }
    int n = d.cycle_len[bv - 1];
    Path cyc;
    cyc.source = cyc.target = qv;
    for (int k = 0; k < n; ++k) cyc.arrows.push_back(d.cycle_arrows[bv - 1][(pos + k) % n]);
    Mat t = path_matrix(fr.rep, cyc);
    if (!(charpoly(t) == b.char_poly_at(bv, pos)))
      throw std::invalid_argument("spade_embed: cycle char poly at vertex " + std::to_string(qv) +
                                  " does not match the root data");
    tau[qv - 1] = t;
    for (const auto& root : b.roots.per_vertex[bv - 1].roots) {
      int mult = root.r[pos];
      projs[qv - 1].push_back(mult > 0 ? spectral_projector(t, root.lambda, mult) : Mat(dm, dm));
      Mat nl = t;
      for (int i = 0; i < dm; ++i) nl.at(i, i) -= root.lambda;
      nilps[qv - 1].push_back(nl);
    }
  }

  // Transport along the cycle from position `from` to position `to`.
  auto segment = [&](int bv, int from, int to) {
    int qv = d.q_vertex(bv, from);
    Mat seg = Mat::identity(dim_at(fr.rep.dims, qv));
    if (!d.is_cycle(bv)) return seg;
    int n = d.cycle_len[bv - 1];
    int at = from;
    while (at != to) {
      seg = fr.rep.matrices[d.cycle_arrows[bv - 1][at]] * seg;
      at = (at + 1) % n;
    }
    return seg;
  };

  std::vector<Mat> out;
  for (size_t sv = 0; sv < b.vertex_key.size(); ++sv) {
    auto [bv, pos, l0] = b.vertex_key[sv];
    int qv = d.q_vertex(bv, pos);
    Mat block(static_cast<int>(b.labels[sv].size()), dim_at(fr.rep.dims, qv));
    for (size_t li = 0; li < b.labels[sv].size(); ++li) {
      const WLabel& lab = b.labels[sv][li];
      Mat op = projs[qv - 1][l0];
      for (int s = 0; s < lab.windings[0]; ++s) op = nilps[qv - 1][l0] * op;
      int cur_bv = bv, cur_pos = pos;
      for (size_t t = 0; t < lab.path.size(); ++t) {
        int qa = d.base_arrow_of[lab.path[t]];
        int exit_pos = d.vertex_loc[d.original.arrows[qa].from - 1].second;
        op = segment(cur_bv, cur_pos, exit_pos) * op;
        op = fr.rep.matrices[qa] * op;
        cur_bv = d.vertex_loc[d.original.arrows[qa].to - 1].first;
        cur_pos = d.vertex_loc[d.original.arrows[qa].to - 1].second;
        int qv2 = d.q_vertex(cur_bv, cur_pos);
        int root = lab.roots[t + 1];
        op = projs[qv2 - 1][root] * op;
        for (int s = 0; s < lab.windings[t + 1]; ++s) op = nilps[qv2 - 1][root] * op;
      }
      op = segment(cur_bv, cur_pos, lab.terminal_pos) * op;
      int qend = d.q_vertex(cur_bv, lab.terminal_pos);
      Mat row = fr.f(qend) * op;
      for (int c = 0; c < block.cols(); ++c) block.at(static_cast<int>(li), c) = row.at(lab.frame - 1, c);
    }
    out.push_back(std::move(block));
  }
  return out;
}

Representation cycle_simple(const SuccessiveDecomposition& d, int base_v, const Rat& lambda) {
  if (!d.is_cycle(base_v)) throw std::invalid_argument("cycle_simple: not a cycle vertex");
  int n = d.cycle_len[base_v - 1];
  DimensionVector dims(d.original.n_vertices, 0);
  for (int j = 0; j < n; ++j) dims[d.q_vertex(base_v, j) - 1] = 1;
  Representation s = Representation::zeros(d.original, dims);
  for (int j = 0; j < n; ++j) {
    Mat m(1, 1);
    m.at(0, 0) = (j == n - 1) ? lambda : Rat(1);
    s.matrices[d.cycle_arrows[base_v - 1][j]] = m;
  }
  return s;
}

SocleReport cyclic_socle_multiplicities(const Representation& m, const SuccessiveDecomposition& decomp,
                                        const FramingVector& zeta) {
  m.validate();
  SocleReport rep;
  GradedSubspace soc = socle(m);
  for (int v = 1; v <= m.quiver.n_vertices; ++v) rep.vertex_simple.push_back(soc.at(v).cols());
  rep.ambient_vertex_simple.assign(zeta.begin(), zeta.end());

  for (int bv = 1; bv <= decomp.base.n_vertices; ++bv) {
    if (!decomp.is_cycle(bv)) continue;
    int n = decomp.cycle_len[bv - 1];
    int zsum = 0;
    for (int j = 0; j < n; ++j) zsum += dim_at(zeta, decomp.q_vertex(bv, j));
    rep.ambient_cycle.emplace_back(bv, zsum);

    // Maximal submodule supported on the cycle and killed by the arrows
    // leaving it.
    GradedSubspace k = GradedSubspace::zero(m.dims);
    std::set<int> cycle_arrow_set(decomp.cycle_arrows[bv - 1].begin(), decomp.cycle_arrows[bv - 1].end());
    for (int j = 0; j < n; ++j) {
      int qv = decomp.q_vertex(bv, j);
      Mat cur = Mat::identity(dim_at(m.dims, qv));
      for (int a : m.quiver.arrows_from(qv))
        if (!cycle_arrow_set.count(a)) cur = subspace_intersect(cur, m.matrices[a].kernel());
      k.at(qv) = cur.column_space_echelon();
    }
    GradedSubspace nsub = maximal_submodule_in(m, k);

    int p0 = decomp.q_vertex(bv, 0);
    const Mat& basis = nsub.at(p0);
    if (basis.cols() == 0) continue;
    Path cyc;
    cyc.source = cyc.target = p0;
    for (int j = 0; j < n; ++j) cyc.arrows.push_back(decomp.cycle_arrows[bv - 1][j]);
    Mat tau = path_matrix(m, cyc);
    Mat restricted = basis.solve(tau * basis).value();
    RationalRoots rr = rational_roots(charpoly(restricted));
    if (!rr.splits())
      throw std::domain_error("irrational spectrum: cycle at base vertex " + std::to_string(bv) +
                              " has non-rational eigenvalues on the relevant subspace (" + rr.remainder.str() + ")");
    for (const auto& [lambda, mult] : rr.roots) {
      if (sgn(lambda) == 0) continue;
      (void)mult;
      int count = static_cast<int>(hom_space(cycle_simple(decomp, bv, lambda), m).size());
      rep.cycle_simple.push_back({bv, lambda, count});
    }
  }
  return rep;
}

std::pair<bool, std::optional<FramedRep>> framing_existence_cyclic(const Representation& m,
                                                                   const SuccessiveDecomposition& decomp,
                                                                   const FramingVector& zeta) {
  SocleReport rep = cyclic_socle_multiplicities(m, decomp, zeta);
  for (int v = 1; v <= m.quiver.n_vertices; ++v)
    if (rep.vertex_simple[v - 1] > dim_at(zeta, v)) return {false, std::nullopt};
  for (const auto& cm : rep.cycle_simple) {
    int zsum = 0;
    for (const auto& [bv, z] : rep.ambient_cycle)
      if (bv == cm.base_vertex) zsum = z;
    if (cm.mult > zsum) return {false, std::nullopt};
  }

  // Witness: per vertex, map the socle pieces to independent framing slots
  // and kill a complement. Vertex simples embed into V_i; each S(tau,lambda)
  // copy receives a unit slot spread over the cycle's framing spaces.
  FramedRep fr;
  fr.rep = m;
  fr.zeta = zeta;
  GradedSubspace soc = socle(m);

  struct CyclePiece {
    int base_vertex;
    std::vector<ModuleMap> homs;
    std::vector<std::pair<int, int>> slots;  // per copy: (position, frame coordinate)
  };
  std::vector<CyclePiece> pieces;
  for (int bv = 1; bv <= decomp.base.n_vertices; ++bv) {
    if (!decomp.is_cycle(bv)) continue;
    // Slot pool over the cycle; independence is only needed within one
    // eigenvalue's isotypic part, so the pool restarts per lambda.
    std::vector<std::pair<int, int>> pool;
    for (int j = 0; j < decomp.cycle_len[bv - 1]; ++j)
      for (int c = 1; c <= dim_at(zeta, decomp.q_vertex(bv, j)); ++c) pool.emplace_back(j, c);
    for (const auto& cm : rep.cycle_simple) {
      if (cm.base_vertex != bv) continue;
      CyclePiece piece;
      piece.base_vertex = bv;
      piece.homs = hom_space(cycle_simple(decomp, bv, cm.lambda), m);
      for (size_t k = 0; k < piece.homs.size(); ++k) piece.slots.push_back(pool[k]);
      pieces.push_back(std::move(piece));
    }
  }

  for (int v = 1; v <= m.quiver.n_vertices; ++v) {
    int dm = dim_at(m.dims, v);
    auto [bv, pos] = decomp.vertex_loc[v - 1];
    (void)bv;
    Mat parts = soc.at(v);
    std::vector<std::pair<int, int>> col_origin;  // (piece index , copy) for the non-socle columns
    for (size_t pi = 0; pi < pieces.size(); ++pi)
      for (size_t k = 0; k < pieces[pi].homs.size(); ++k) {
        const Mat& blk = pieces[pi].homs[k].blocks[v - 1];
        if (blk.cols() == 1 && !blk.is_zero()) {
          parts = parts.hstack(blk);
          col_origin.emplace_back(static_cast<int>(pi), static_cast<int>(k));
        }
      }
    Mat compl_cols = complement_basis(parts, dm);
    Mat basis = parts.hstack(compl_cols);
    if (basis.rank() != dm) throw std::logic_error("framing_existence_cyclic: socle pieces are not independent");
    Mat inv = basis.solve(Mat::identity(dm)).value();
    Mat fv(dim_at(zeta, v), dm);
    // Vertex-simple part onto the leading coordinates of V_v.
    for (int i = 0; i < soc.at(v).cols(); ++i)
      for (int c = 0; c < dm; ++c) fv.at(i, c) += inv.at(i, c);
    // Cycle copies onto their slots.
    for (size_t ci = 0; ci < col_origin.size(); ++ci) {
      auto [pi, k] = col_origin[ci];
      auto [slot_pos, slot_coord] = pieces[pi].slots[k];
      if (decomp.q_vertex(pieces[pi].base_vertex, slot_pos) != v) continue;
      int row = slot_coord - 1;
      int basis_col = soc.at(v).cols() + static_cast<int>(ci);
      for (int c = 0; c < dm; ++c) fv.at(row, c) += inv.at(basis_col, c);
    }
    fr.framing.push_back(std::move(fv));
  }
  if (!is_stable(fr)) throw std::logic_error("framing_existence_cyclic: witness construction failed");
  return {true, fr};
}

}  // namespace qmod
