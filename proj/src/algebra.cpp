#include "qmod/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmod {

namespace {

// Sparse vectors over the ordered path list, echelonized with the pivot at
// the *largest* canonical position. The non-pivot positions are then exactly
// the greedy maximal independent set taken in canonical order, and full
// reduction yields normal forms supported on it.
struct TrailingEchelon {
  std::map<int, std::map<int, Rat>> rows;  // pivot index -> row, pivot coeff 1

  std::map<int, Rat> reduce(std::map<int, Rat> v) const {
    while (true) {
      int target = -1;
      Rat f;
      for (auto it = v.rbegin(); it != v.rend(); ++it) {
        if (rows.count(it->first)) {
          target = it->first;
          f = it->second;
          break;
        }
      }
      if (target < 0) break;
      for (const auto& [j, c] : rows.at(target)) {
        auto e = v.find(j);
        if (e == v.end()) {
          v.emplace(j, -f * c);
        } else {
          e->second -= f * c;
          if (sgn(e->second) == 0) v.erase(e);
        }
      }
    }
    return v;
  }

  bool insert(std::map<int, Rat> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    int piv = v.rbegin()->first;
    Rat inv = 1 / v.rbegin()->second;
    for (auto& [j, c] : v) c *= inv;
    // Keep existing rows fully reduced against the new pivot.
    for (auto& [p, row] : rows) {
      auto e = row.find(piv);
      if (e == row.end()) continue;
      Rat f = e->second;
      for (const auto& [j, c] : v) {
        if (j == piv) {
          row.erase(j);
          continue;
        }
        auto t = row.find(j);
        if (t == row.end()) {
          row.emplace(j, -f * c);
        } else {
          t->second -= f * c;
          if (sgn(t->second) == 0) row.erase(t);
        }
      }
    }
    rows.emplace(piv, std::move(v));
    return true;
  }
};

struct PathSpace {
  std::vector<Path> paths;  // canonical order
  std::map<Path, int> index;

  explicit PathSpace(const Quiver& q, int maxlen) {
    paths = all_paths(q, maxlen);
    for (size_t i = 0; i < paths.size(); ++i) index.emplace(paths[i], static_cast<int>(i));
  }
};

// Span of {u * r * v} truncated below `cap`, echelonized.
TrailingEchelon ideal_span(const Quiver& q, const RelationSet& rho, const PathSpace& ps, int cap) {
  TrailingEchelon ech;
  std::vector<Path> all = all_paths(q, cap - 1);
  for (const LinComb& r : rho.relations) {
    if (r.is_zero()) continue;
    int src = r.terms.begin()->first.source;
    int tgt = r.terms.begin()->first.target;
    int minlen = cap;
    for (const auto& [p, c] : r.terms) minlen = std::min(minlen, p.length());
    for (const Path& v : all) {
      if (v.target != src || v.length() + minlen >= cap) continue;
      for (const Path& u : all) {
        if (u.source != tgt || u.length() + minlen + v.length() >= cap) continue;
        std::map<int, Rat> vec;
        for (const auto& [p, c] : r.terms) {
          if (u.length() + p.length() + v.length() >= cap) continue;
          Path w = *compose_paths(u, *compose_paths(p, v));
          int idx = ps.index.at(w);
          auto it = vec.find(idx);
          if (it == vec.end()) {
            vec.emplace(idx, c);
          } else {
            it->second += c;
            if (sgn(it->second) == 0) vec.erase(it);
          }
        }
        if (!vec.empty()) ech.insert(std::move(vec));
      }
    }
  }
  return ech;
}

}  // namespace

LinComb QuotientAlgebraBasis::normal_form(const Path& p) const {
  if (p.length() >= nilpotency_bound()) return LinComb::zero();
  auto it = nf_.find(p);
  if (it == nf_.end()) throw std::invalid_argument("normal_form: path not in table: " + p.display(quiver));
  return it->second;
}

LinComb QuotientAlgebraBasis::normal_form(const LinComb& x) const {
  LinComb out;
  for (const auto& [p, c] : x.terms) {
    if (p.length() >= nilpotency_bound()) continue;
    out = out + normal_form(p).scaled(c);
  }
  return out;
}

LinComb QuotientAlgebraBasis::multiply(const LinComb& x, const LinComb& y) const {
  LinComb out;
  for (const auto& [p, a] : x.terms)
    for (const auto& [q, b] : y.terms) {
      auto pq = compose_paths(p, q);
      if (!pq || pq->length() >= nilpotency_bound()) continue;
      out = out + normal_form(*pq).scaled(a * b);
    }
  return out;
}

LinComb QuotientAlgebraBasis::unit() const {
  LinComb e;
  for (int v = 1; v <= quiver.n_vertices; ++v) e.add(Path::trivial(v), Rat(1));
  return e;
}

int QuotientAlgebraBasis::index_of(const Path& p) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), p);
  if (it == basis.end() || !(*it == p)) return -1;
  return static_cast<int>(it - basis.begin());
}

std::vector<int> QuotientAlgebraBasis::basis_from(int source) const {
  std::vector<int> out;
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i].source == source) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> QuotientAlgebraBasis::basis_from_to(int source, int target) const {
  std::vector<int> out;
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i].source == source && basis[i].target == target) out.push_back(static_cast<int>(i));
  return out;
}

QuotientAlgebraBasis build_quotient_basis(const Quiver& q, const RelationSet& rho) {
  q.validate();
  rho.validate(q);
  int n = rho.nilpotency_bound;

  QuotientAlgebraBasis out;
  out.quiver = q;
  out.rho = rho;

  PathSpace ps(q, n - 1);
  TrailingEchelon ech = ideal_span(q, rho, ps, n);

  for (int i = 0; i < static_cast<int>(ps.paths.size()); ++i)
    if (!ech.rows.count(i)) out.basis.push_back(ps.paths[i]);

  for (int i = 0; i < static_cast<int>(ps.paths.size()); ++i) {
    std::map<int, Rat> rem = ech.reduce({{i, Rat(1)}});
    LinComb nf;
    for (const auto& [j, c] : rem) nf.add(ps.paths[j], c);
    out.nf_.emplace(ps.paths[i], std::move(nf));
  }
  return out;
}

bool verify_regular_ideal(const Quiver& q, const RelationSet& rho) {
  q.validate();
  rho.validate(q);
  int n = rho.nilpotency_bound;
  int cap = n + std::max(rho.max_term_length(), 2);

  PathSpace ps(q, cap - 1);
  TrailingEchelon ech = ideal_span(q, rho, ps, cap);

  for (int i = 0; i < static_cast<int>(ps.paths.size()); ++i) {
    if (ps.paths[i].length() != n) continue;
    if (!ech.reduce({{i, Rat(1)}}).empty()) return false;
  }
  return true;
}

}  // namespace qmod
