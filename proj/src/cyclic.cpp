#include "qmod/cyclic.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmod {

Quiver CyclicQuiverSpec::quiver() const {
  Quiver q;
  q.n_vertices = n;
  for (int i = 1; i <= n; ++i) q.arrows.push_back({"a" + std::to_string(i), i, i % n + 1});
  return q;
}

Path CyclicQuiverSpec::tau(int v) const {
  Path p;
  p.source = p.target = v;
  for (int k = 0; k < n; ++k) p.arrows.push_back((v - 1 + k) % n);
  return p;
}

void CyclicQuiverSpec::validate() const {
  if (n < 1) throw std::invalid_argument("cyclic spec: n must be >= 1");
  if (static_cast<int>(alpha.size()) != n || static_cast<int>(zeta.size()) != n)
    throw std::invalid_argument("cyclic spec: dimension vector length mismatch");
  for (int x : alpha)
    if (x < 0) throw std::invalid_argument("cyclic spec: negative alpha");
  for (int x : zeta)
    if (x < 0) throw std::invalid_argument("cyclic spec: negative zeta");
}

std::vector<Poly> char_polys(const Representation& m, const CyclicQuiverSpec& spec) {
  spec.validate();
  std::vector<Poly> out;
  for (int v = 1; v <= spec.n; ++v) out.push_back(charpoly(path_matrix(m, spec.tau(v))));
  return out;
}

bool validate_root_data(const RootData& rd, const DimensionVector& alpha, std::string* diagnosis) {
  auto fail = [&](const std::string& why) {
    if (diagnosis) *diagnosis = why;
    return false;
  };
  DimensionVector sum(alpha.size(), 0);
  std::set<Rat> seen;
  for (const auto& root : rd.roots) {
    if (!seen.insert(root.lambda).second) return fail("repeated eigenvalue " + rat_str(root.lambda));
    if (root.r.size() != alpha.size()) return fail("multiplicity vector length mismatch");
    int total = 0;
    for (size_t i = 0; i < root.r.size(); ++i) {
      if (root.r[i] < 0) return fail("negative multiplicity");
      sum[i] += root.r[i];
      total += root.r[i];
    }
    if (total == 0) return fail("root with zero multiplicity vector");
    if (sgn(root.lambda) != 0)
      for (size_t i = 1; i < root.r.size(); ++i)
        if (root.r[i] != root.r[0])
          return fail("nonzero root " + rat_str(root.lambda) + " with unequal multiplicities");
  }
  if (sum != alpha) return fail("multiplicities do not sum to alpha");
  return true;
}

RootData root_data_of(const Representation& m, const CyclicQuiverSpec& spec) {
  std::vector<Poly> chis = char_polys(m, spec);
  std::map<Rat, DimensionVector> roots;
  for (int i = 0; i < spec.n; ++i) {
    RationalRoots rr = rational_roots(chis[i]);
    if (!rr.splits())
      throw std::invalid_argument("char poly at vertex " + std::to_string(i + 1) + " has a non-rational factor: " +
                                  rr.remainder.str());
    for (const auto& [lambda, mult] : rr.roots) {
      auto it = roots.find(lambda);
      if (it == roots.end()) it = roots.emplace(lambda, DimensionVector(spec.n, 0)).first;
      it->second[i] = mult;
    }
  }
  RootData rd;
  for (auto& [lambda, r] : roots) rd.roots.push_back({lambda, r});
  return rd;
}

int JLambdaModule::flat(int q, int copy, int s) const {
  int off = 0;
  for (int v = 1; v < q; ++v) off += dim_at(spec.zeta, v);
  int qtot = total_dim(spec.zeta);
  return s * qtot + off + (copy - 1);
}

JLambdaModule build_J_lambda(const CyclicQuiverSpec& spec, const Rat& lambda, const DimensionVector& r) {
  spec.validate();
  if (static_cast<int>(r.size()) != spec.n) throw std::invalid_argument("build_J_lambda: r length mismatch");
  int order = *std::max_element(r.begin(), r.end());
  if (order <= 0) throw std::invalid_argument("build_J_lambda: r must be nonzero");

  JLambdaModule j;
  j.spec = spec;
  j.lambda = lambda;
  j.r = r;
  j.order = order;
  int qtot = total_dim(spec.zeta);
  for (int s = 0; s < order; ++s)
    for (int q = 1; q <= spec.n; ++q)
      for (int copy = 1; copy <= dim_at(spec.zeta, q); ++copy) j.labels.push_back({q, copy, s});

  int d = order * qtot;
  Quiver quiver = spec.quiver();
  j.rep = Representation::zeros(quiver, DimensionVector(spec.n, d));
  for (int i = 1; i <= spec.n; ++i) {
    Mat& m = j.rep.matrices[i - 1];  // J_i -> J_{i+1}
    for (int col = 0; col < d; ++col) {
      auto [q, copy, s] = j.labels[col];
      if (q != i) {
        m.at(col, col) = 1;
      } else {
        m.at(col, col) = lambda;
        if (s > 0) m.at(j.flat(q, copy, s - 1), col) = Rat(1);
      }
    }
  }
  return j;
}

std::vector<std::pair<JLambdaModule, DimensionVector>> fiber_components(const CyclicQuiverSpec& spec,
                                                                        const RootData& rd) {
  std::string why;
  if (!validate_root_data(rd, spec.alpha, &why)) throw std::invalid_argument("invalid root data: " + why);
  std::vector<std::pair<JLambdaModule, DimensionVector>> out;
  for (const auto& root : rd.roots) out.emplace_back(build_J_lambda(spec, root.lambda, root.r), root.r);
  return out;
}

// ---- tuple utilities ----

namespace {

std::vector<std::vector<int>> combinations(int d, int m) {
  std::vector<std::vector<int>> out;
  if (m < 0 || m > d) return out;
  std::vector<int> cur(m);
  for (int i = 0; i < m; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    if (m == 0) break;
    int i = m - 1;
    while (i >= 0 && cur[i] == d - (m - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int k = i + 1; k < m; ++k) cur[k] = cur[k - 1] + 1;
  }
  return out;
}

// Sorts a tuple, counting transpositions. Nullopt when an index repeats.
std::optional<std::pair<std::vector<int>, int>> sort_with_sign(std::vector<int> t) {
  int sign = 1;
  for (size_t i = 1; i < t.size(); ++i)
    for (size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
      std::swap(t[j], t[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return std::nullopt;
  return std::make_pair(std::move(t), sign);
}

struct EquationBuilder {
  std::map<std::vector<PlueckerTuple>, Rat> acc;

  void add(const Rat& coef, std::vector<PlueckerTuple> monomial) {
    if (sgn(coef) == 0) return;
    std::sort(monomial.begin(), monomial.end());
    auto it = acc.find(monomial);
    if (it == acc.end()) {
      acc.emplace(std::move(monomial), coef);
    } else {
      it->second += coef;
      if (sgn(it->second) == 0) acc.erase(it);
    }
  }

  std::optional<Equation> finish(const std::string& tag) const {
    if (acc.empty()) return std::nullopt;
    Equation eq;
    eq.tag = tag;
    for (const auto& [mono, coef] : acc) eq.terms.push_back({coef, mono});
    return eq;
  }
};

std::string equation_fingerprint(const Equation& eq) {
  // Projective normalization: divide by the leading coefficient.
  std::ostringstream os;
  const Rat& lead = eq.terms.front().coef;
  for (const auto& t : eq.terms) {
    os << rat_str(t.coef / lead) << "|";
    for (const auto& f : t.monomial) {
      os << f.vertex << ":";
      for (int i : f.indices) os << i << ",";
      os << ";";
    }
    os << "#";
  }
  return os.str();
}

// Theorem-5 families at one vertex: ambient dimension d (strings of length R,
// q-strata of size qtot), exterior power m, strata stride qtot.
void emit_theorem5(EquationSet& out, int vertex, int d, int m, int qtot, std::set<std::string>& seen) {
  // (i) Plucker relations.
  for (const auto& I : combinations(d, m - 1))
    for (const auto& K : combinations(d, m + 1)) {
      EquationBuilder b;
      for (int l = 0; l <= m; ++l) {
        std::vector<int> t1 = I;
        t1.push_back(K[l]);
        auto s1 = sort_with_sign(std::move(t1));
        if (!s1) continue;
        std::vector<int> t2;
        for (int i = 0; i <= m; ++i)
          if (i != l) t2.push_back(K[i]);
        Rat coef = (l % 2 == 0 ? 1 : -1) * s1->second;
        b.add(coef, {PlueckerTuple{vertex, s1->first}, PlueckerTuple{vertex, t2}});
      }
      if (auto eq = b.finish("plucker"))
        if (seen.insert(equation_fingerprint(*eq)).second) out.equations.push_back(std::move(*eq));
    }
  // (ii) stratum vanishing: p_L = 0 when the j-th smallest index exceeds qtot*j.
  for (const auto& L : combinations(d, m)) {
    bool vanish = false;
    for (int j = 1; j <= m; ++j)
      if (L[j - 1] > qtot * j) vanish = true;
    if (!vanish) continue;
    EquationBuilder b;
    b.add(Rat(1), {PlueckerTuple{vertex, L}});
    if (auto eq = b.finish("vanishing"))
      if (seen.insert(equation_fingerprint(*eq)).second) out.equations.push_back(std::move(*eq));
  }
  // (iii) shift sums: sum over nonzero {0,1}-patterns of p_{L + qtot*eps} = 0,
  // out-of-range shifted indices contributing zero.
  for (const auto& L : combinations(d, m)) {
    EquationBuilder b;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> t = L;
      bool ok = true;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) {
          t[i] += qtot;
          if (t[i] > d) ok = false;
        }
      if (!ok) continue;
      auto s = sort_with_sign(std::move(t));
      if (!s) continue;
      b.add(Rat(s->second), {PlueckerTuple{vertex, s->first}});
    }
    if (auto eq = b.finish("shift-sum"))
      if (seen.insert(equation_fingerprint(*eq)).second) out.equations.push_back(std::move(*eq));
  }
}

Rat tuple_minor(const Mat& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) sub.at(static_cast<int>(i), static_cast<int>(j)) = a.at(rows[i] - 1, cols[j] - 1);
  return sub.det();
}

}  // namespace

EquationSet jordan_pluecker_equations(int m, int q) {
  if (m < 1 || q < 1) throw std::invalid_argument("jordan_pluecker_equations: m, q must be positive");
  CyclicQuiverSpec spec{1, {m}, {q}};
  return cyclic_pluecker_equations(spec, Rat(0));
}

EquationSet cyclic_pluecker_equations(const CyclicQuiverSpec& spec, const Rat& lambda) {
  spec.validate();
  int qtot = total_dim(spec.zeta);
  int order = *std::max_element(spec.alpha.begin(), spec.alpha.end());
  if (order <= 0 || qtot <= 0) throw std::invalid_argument("cyclic_pluecker_equations: empty ambient");
  if (sgn(lambda) != 0)
    for (int x : spec.alpha)
      if (x != spec.alpha[0])
        throw std::invalid_argument("cyclic_pluecker_equations: nonzero eigenvalue requires equal alpha (Lemma 7)");

  JLambdaModule jmod = build_J_lambda(spec, lambda, spec.alpha);
  int d = jmod.dim();

  EquationSet out;
  out.n_vertices = spec.n;
  out.ambient.assign(spec.n, d);
  out.wedge = spec.alpha;
  out.index_labels = jmod.labels;

  std::set<std::string> seen;
  for (int v = 1; v <= spec.n; ++v) emit_theorem5(out, v, d, spec.alpha[v - 1], qtot, seen);
  if (spec.n == 1) return out;

  if (sgn(lambda) != 0) {
    // a_i is invertible; a_i(U_i) = U_{i+1} becomes proportionality of the
    // compound image of omega_i with omega_{i+1}: all 2x2 minors vanish.
    int m = spec.alpha[0];
    auto tuples = combinations(d, m);
    for (int i = 1; i <= spec.n; ++i) {
      int next = spec.next(i);
      const Mat& a = jmod.rep.matrices[i - 1];
      std::map<std::vector<int>, std::vector<std::pair<std::vector<int>, Rat>>> compound;
      for (const auto& K : tuples) {
        auto& row = compound[K];
        for (const auto& T : tuples) {
          Rat c = tuple_minor(a, K, T);
          if (sgn(c) != 0) row.emplace_back(T, c);
        }
      }
      for (size_t ki = 0; ki < tuples.size(); ++ki)
        for (size_t li = ki + 1; li < tuples.size(); ++li) {
          EquationBuilder b;
          for (const auto& [T, c] : compound[tuples[ki]])
            b.add(c, {PlueckerTuple{i, T}, PlueckerTuple{next, tuples[li]}});
          for (const auto& [T, c] : compound[tuples[li]])
            b.add(-c, {PlueckerTuple{i, T}, PlueckerTuple{next, tuples[ki]}});
          if (auto eq = b.finish("proportionality"))
            if (seen.insert(equation_fingerprint(*eq)).second) out.equations.push_back(std::move(*eq));
        }
    }
    return out;
  }

  // lambda = 0: bilinear cross-vertex relations with the prime shift
  // (q,copy,s) -> (q,copy,s+1) on q = i, identity elsewhere.
  for (int i = 1; i <= spec.n; ++i) {
    int next = spec.next(i);
    int mi = spec.alpha[i - 1], mn = spec.alpha[next - 1];
    if (mi < 1) continue;
    auto prime = [&](int flat) -> int {
      auto [q, copy, s] = jmod.labels[flat - 1];
      (void)copy;
      (void)s;
      if (q != i) return flat;
      return flat + qtot <= d ? flat + qtot : -1;
    };
    for (const auto& jt : combinations(d, mi - 1)) {
      bool admissible = true;
      for (int idx : jt)
        if (jmod.labels[idx - 1][2] >= mi) admissible = false;
      if (!admissible) continue;
      std::vector<int> jprimed;
      bool jok = true;
      for (int idx : jt) {
        int p = prime(idx);
        if (p < 0) jok = false;
        jprimed.push_back(p);
      }
      if (!jok) continue;
      for (const auto& K : combinations(d, mn + 1)) {
        EquationBuilder b;
        for (int l = 0; l <= mn; ++l) {
          int kp = prime(K[l]);
          if (kp < 0) continue;
          std::vector<int> t1 = jprimed;
          t1.push_back(kp);
          auto s1 = sort_with_sign(std::move(t1));
          if (!s1) continue;
          std::vector<int> t2;
          for (int x = 0; x <= mn; ++x)
            if (x != l) t2.push_back(K[x]);
          Rat coef = (l % 2 == 0 ? 1 : -1) * s1->second;
          b.add(coef, {PlueckerTuple{i, s1->first}, PlueckerTuple{next, t2}});
        }
        if (auto eq = b.finish("cross-vertex"))
          if (seen.insert(equation_fingerprint(*eq)).second) out.equations.push_back(std::move(*eq));
      }
    }
  }
  return out;
}

PlueckerPoint pluecker_coordinates(const GradedSubspace& u) {
  PlueckerPoint p;
  for (size_t v = 0; v < u.basis.size(); ++v) {
    const Mat& b = u.basis[v];
    std::map<std::vector<int>, Rat> coords;
    for (const auto& rows : combinations(b.rows(), b.cols())) {
      std::vector<int> cols(b.cols());
      for (int i = 0; i < b.cols(); ++i) cols[i] = i + 1;
      coords.emplace(rows, tuple_minor(b, rows, cols));
    }
    if (b.cols() == 0) coords.emplace(std::vector<int>{}, Rat(1));
    p.coords.push_back(std::move(coords));
  }
  return p;
}

ResidualReport evaluate_equations(const EquationSet& eqs, const PlueckerPoint& p) {
  if (static_cast<int>(p.coords.size()) != eqs.n_vertices)
    throw std::invalid_argument("evaluate_equations: vertex count mismatch");
  for (int v = 0; v < eqs.n_vertices; ++v) {
    bool nonzero = false;
    for (const auto& [t, c] : p.coords[v]) {
      if (static_cast<int>(t.size()) != eqs.wedge[v]) throw std::invalid_argument("evaluate_equations: wedge power mismatch");
      for (int i : t)
        if (i < 1 || i > eqs.ambient[v]) throw std::invalid_argument("evaluate_equations: index out of ambient");
      if (sgn(c) != 0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("evaluate_equations: zero coordinate vector is not projective");
  }
  auto coord = [&](const PlueckerTuple& t) -> Rat {
    const auto& m = p.coords[t.vertex - 1];
    auto it = m.find(t.indices);
    return it == m.end() ? Rat(0) : it->second;
  };
  ResidualReport rep;
  for (size_t e = 0; e < eqs.equations.size(); ++e) {
    Rat val = 0;
    for (const auto& term : eqs.equations[e].terms) {
      Rat prod = term.coef;
      for (const auto& f : term.monomial) prod *= coord(f);
      val += prod;
    }
    if (sgn(val) != 0) rep.nonzero.push_back({eqs.equations[e].tag, static_cast<int>(e), val});
  }
  return rep;
}

EquationSet reduce_equations(const EquationSet& eqs) {
  // Linear rows keyed by their lex-largest coordinate; fully inter-reduced.
  std::map<PlueckerTuple, std::map<PlueckerTuple, Rat>> rows;
  auto reduce_vec = [&](std::map<PlueckerTuple, Rat> v) {
    while (true) {
      PlueckerTuple piv;
      bool found = false;
      Rat f;
      for (auto it = v.rbegin(); it != v.rend(); ++it)
        if (rows.count(it->first)) {
          piv = it->first;
          f = it->second;
          found = true;
          break;
        }
      if (!found) break;
      for (const auto& [t, c] : rows.at(piv)) {
        auto e = v.find(t);
        if (e == v.end()) {
          v.emplace(t, -f * c);
        } else {
          e->second -= f * c;
          if (sgn(e->second) == 0) v.erase(e);
        }
      }
    }
    return v;
  };
  std::vector<const Equation*> nonlinear;
  for (const auto& eq : eqs.equations) {
    bool linear = true;
    for (const auto& t : eq.terms)
      if (t.monomial.size() != 1) linear = false;
    if (!linear) {
      nonlinear.push_back(&eq);
      continue;
    }
    std::map<PlueckerTuple, Rat> v;
    for (const auto& t : eq.terms) v[t.monomial[0]] = t.coef;
    v = reduce_vec(std::move(v));
    if (v.empty()) continue;
    PlueckerTuple piv = v.rbegin()->first;
    Rat inv = 1 / v.rbegin()->second;
    for (auto& [t, c] : v) c *= inv;
    for (auto& [pt, row] : rows) {
      auto e = row.find(piv);
      if (e == row.end()) continue;
      Rat f = e->second;
      row.erase(e);
      for (const auto& [t, c] : v) {
        if (t == piv) continue;
        auto x = row.find(t);
        if (x == row.end()) {
          row.emplace(t, -f * c);
        } else {
          x->second -= f * c;
          if (sgn(x->second) == 0) row.erase(x);
        }
      }
    }
    rows.emplace(piv, std::move(v));
  }

  EquationSet out;
  out.n_vertices = eqs.n_vertices;
  out.ambient = eqs.ambient;
  out.wedge = eqs.wedge;
  out.index_labels = eqs.index_labels;
  std::set<std::string> seen;
  for (const auto& [piv, row] : rows) {
    EquationBuilder b;
    for (const auto& [t, c] : row) b.add(c, {t});
    if (auto eq = b.finish("reduced-linear"))
      if (seen.insert(equation_fingerprint(*eq)).second) out.equations.push_back(std::move(*eq));
  }
  for (const Equation* src : nonlinear) {
    // Substitute pivot coordinates factor by factor until none remain.
    std::map<std::vector<PlueckerTuple>, Rat> work;
    for (const auto& t : src->terms) {
      auto mono = t.monomial;
      std::sort(mono.begin(), mono.end());
      work[mono] += t.coef;
    }
    while (true) {
      bool changed = false;
      std::map<std::vector<PlueckerTuple>, Rat> next;
      for (const auto& [mono, coef] : work) {
        if (sgn(coef) == 0) continue;
        int hit = -1;
        for (size_t i = 0; i < mono.size(); ++i)
          if (rows.count(mono[i])) {
            hit = static_cast<int>(i);
            break;
          }
        if (hit < 0) {
          next[mono] += coef;
          continue;
        }
        changed = true;
        const auto& row = rows.at(mono[hit]);
        for (const auto& [t, c] : row) {
          if (t == mono[hit]) continue;
          auto m2 = mono;
          m2[hit] = t;
          std::sort(m2.begin(), m2.end());
          next[m2] += -coef * c;  // pivot = -(tail)
        }
      }
      work = std::move(next);
      if (!changed) break;
    }
    EquationBuilder b;
    for (const auto& [mono, coef] : work) b.add(coef, mono);
    if (auto eq = b.finish("reduced"))
      if (seen.insert(equation_fingerprint(*eq)).second) out.equations.push_back(std::move(*eq));
  }
  return out;
}

bool equations_projectively_equal(const EquationSet& a, const EquationSet& b) {
  std::multiset<std::string> fa, fb;
  for (const auto& eq : a.equations) fa.insert(equation_fingerprint(eq));
  for (const auto& eq : b.equations) fb.insert(equation_fingerprint(eq));
  return fa == fb;
}

Equation make_equation(const std::string& tag, const std::vector<std::pair<Rat, std::vector<PlueckerTuple>>>& terms) {
  EquationBuilder b;
  for (const auto& [coef, mono] : terms) b.add(coef, mono);
  auto eq = b.finish(tag);
  if (!eq) throw std::invalid_argument("make_equation: empty equation");
  return *eq;
}

Representation sample_cyclic_representation(const CyclicQuiverSpec& spec, const RootData& rd, std::uint64_t seed) {
  spec.validate();
  std::string why;
  if (!validate_root_data(rd, spec.alpha, &why)) throw std::invalid_argument("invalid root data: " + why);
  Rng rng(seed);
  Quiver q = spec.quiver();
  Representation x = Representation::zeros(q, spec.alpha);
  int cap = std::max(1, total_dim(spec.zeta));

  // Per-vertex offsets of the root blocks.
  std::vector<int> off(spec.n, 0);
  std::vector<std::vector<int>> block_off(rd.roots.size(), std::vector<int>(spec.n, 0));
  for (size_t jr = 0; jr < rd.roots.size(); ++jr)
    for (int i = 0; i < spec.n; ++i) {
      block_off[jr][i] = off[i];
      off[i] += rd.roots[jr].r[i];
    }

  for (size_t jr = 0; jr < rd.roots.size(); ++jr) {
    const auto& root = rd.roots[jr];
    for (int i = 1; i <= spec.n; ++i) {
      int nxt = spec.next(i);
      int rows = root.r[nxt - 1], cols = root.r[i - 1];
      Mat block(rows, cols);
      if (sgn(root.lambda) != 0) {
        // Constant multiplicity r around the cycle; the wrap arrow carries
        // lambda + nilpotent, the others are identities.
        if (i < spec.n) {
          block = Mat::identity(cols);
        } else {
          block = Mat::rand_nilpotent(rng, cols, cols, cap);
          for (int t = 0; t < cols; ++t) block.at(t, t) += root.lambda;
        }
      } else {
        // Strictly index-decreasing entries keep every cycle composite nilpotent.
        for (int rr = 0; rr < rows; ++rr)
          for (int cc = rr + 1; cc < cols; ++cc) block.at(rr, cc) = rng.small_int(-3, 3);
      }
      for (int rr = 0; rr < rows; ++rr)
        for (int cc = 0; cc < cols; ++cc) x.matrices[i - 1].at(block_off[jr][nxt - 1] + rr, block_off[jr][i - 1] + cc) = block.at(rr, cc);
    }
  }

  // Random exact base change per vertex.
  std::vector<Mat> g, ginv;
  for (int i = 0; i < spec.n; ++i) {
    Mat gi = Mat::rand_unimodular(rng, spec.alpha[i]);
    g.push_back(gi);
    ginv.push_back(gi.solve(Mat::identity(spec.alpha[i])).value());
  }
  for (int i = 1; i <= spec.n; ++i) x.matrices[i - 1] = g[spec.next(i) - 1] * x.matrices[i - 1] * ginv[i - 1];
  return x;
}

std::vector<GradedSubspace> fiber_point(const CyclicQuiverSpec& spec, const RootData& rd, const FramedRep& fr) {
  fr.validate();
  std::string why;
  if (!validate_root_data(rd, spec.alpha, &why)) throw std::invalid_argument("invalid root data: " + why);
  if (fr.rep.dims != spec.alpha || fr.zeta != spec.zeta) throw std::invalid_argument("fiber_point: dimension mismatch");
  // Char polys must match the root data exactly.
  std::vector<Poly> chis = char_polys(fr.rep, spec);
  for (int i = 0; i < spec.n; ++i) {
    Poly expect = Poly::constant(Rat(1));
    for (const auto& root : rd.roots) expect = expect * Poly::x_minus(root.lambda).pow(root.r[i]);
    if (!(expect == chis[i])) throw std::invalid_argument("fiber_point: char polys do not match root data");
  }

  std::vector<GradedSubspace> out;
  for (const auto& root : rd.roots) {
    JLambdaModule jmod = build_J_lambda(spec, root.lambda, root.r);
    std::vector<Mat> cols;
    for (int i = 1; i <= spec.n; ++i) {
      Mat taui = path_matrix(fr.rep, spec.tau(i));
      Mat proj = root.r[i - 1] > 0 ? spectral_projector(taui, root.lambda, root.r[i - 1])
                                   : Mat(taui.rows(), taui.cols());
      Mat block(jmod.dim(), dim_at(fr.rep.dims, i));
      // Transport i -> q along the cycle, then powers of (tau_q - lambda).
      Mat seg = Mat::identity(dim_at(fr.rep.dims, i));
      int at = i;
      std::map<int, Mat> seg_to;  // vertex -> transport matrix
      seg_to[i] = seg;
      for (int step = 1; step < spec.n; ++step) {
        seg = fr.rep.matrices[at - 1] * seg;
        at = spec.next(at);
        seg_to[at] = seg;
      }
      for (int qv = 1; qv <= spec.n; ++qv) {
        Mat tq = path_matrix(fr.rep, spec.tau(qv));
        Mat nq = tq;
        for (int t = 0; t < nq.rows(); ++t) nq.at(t, t) -= root.lambda;
        Mat op = seg_to.at(qv) * proj;
        for (int s = 0; s < jmod.order; ++s) {
          if (s > 0) op = nq * op;
          Mat row = fr.f(qv) * op;
          for (int copy = 1; copy <= dim_at(spec.zeta, qv); ++copy) {
            int flat = jmod.flat(qv, copy, s);
            for (int c = 0; c < block.cols(); ++c) block.at(flat, c) = row.at(copy - 1, c);
          }
        }
      }
      cols.push_back(std::move(block));
    }
    out.push_back(GradedSubspace::from_columns(jmod.rep.dims, cols));
  }
  return out;
}

}  // namespace qmod
