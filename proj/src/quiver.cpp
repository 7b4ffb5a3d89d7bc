#include "qmod/quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmod {

void Quiver::validate() const {
  if (n_vertices < 0) throw std::invalid_argument("quiver: negative vertex count");
  std::set<std::string> names;
  for (const Arrow& a : arrows) {
    if (a.from < 1 || a.from > n_vertices || a.to < 1 || a.to > n_vertices)
      throw std::invalid_argument("quiver: arrow endpoint out of range: " + a.name);
    if (!names.insert(a.name).second) throw std::invalid_argument("quiver: duplicate arrow id " + a.name);
  }
}

int Quiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown arrow id " + name);
}

std::vector<int> Quiver::arrows_from(int v) const {
  std::vector<int> out;
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].from == v) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Quiver::arrows_into(int v) const {
  std::vector<int> out;
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].to == v) out.push_back(static_cast<int>(i));
  return out;
}

bool Quiver::is_acyclic() const {
  std::vector<int> indeg(n_vertices + 1, 0);
  for (const Arrow& a : arrows) ++indeg[a.to];
  std::vector<int> queue;
  for (int v = 1; v <= n_vertices; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  int seen = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    ++seen;
    for (const Arrow& a : arrows)
      if (a.from == v && --indeg[a.to] == 0) queue.push_back(a.to);
  }
  return seen == n_vertices;
}

int Quiver::longest_path_length() const {
  if (!is_acyclic()) throw std::invalid_argument("longest_path_length on cyclic quiver");
  std::vector<int> best(n_vertices + 1, 0);
  // n passes of relaxation suffice on a DAG.
  for (int pass = 0; pass < n_vertices; ++pass)
    for (const Arrow& a : arrows) best[a.to] = std::max(best[a.to], best[a.from] + 1);
  int m = 0;
  for (int v = 1; v <= n_vertices; ++v) m = std::max(m, best[v]);
  return m;
}

void Path::validate(const Quiver& q) const {
  if (source < 1 || source > q.n_vertices || target < 1 || target > q.n_vertices)
    throw std::invalid_argument("path: endpoint out of range");
  int at = source;
  for (int idx : arrows) {
    if (idx < 0 || idx >= static_cast<int>(q.arrows.size())) throw std::invalid_argument("path: bad arrow index");
    if (q.arrows[idx].from != at) throw std::invalid_argument("path: arrows do not compose");
    at = q.arrows[idx].to;
  }
  if (at != target) throw std::invalid_argument("path: target mismatch");
}

std::string Path::display(const Quiver& q) const {
  if (is_trivial()) return "e_" + std::to_string(source);
  std::ostringstream os;
  for (auto it = arrows.rbegin(); it != arrows.rend(); ++it) {
    if (it != arrows.rbegin()) os << " ";
    os << q.arrows[*it].name;
  }
  return os.str();
}

std::optional<Path> compose_paths(const Path& p, const Path& q) {
  if (q.target != p.source) return std::nullopt;
  Path r;
  r.source = q.source;
  r.target = p.target;
  r.arrows = q.arrows;
  r.arrows.insert(r.arrows.end(), p.arrows.begin(), p.arrows.end());
  return r;
}

LinComb LinComb::of(const Path& p, const Rat& c) {
  LinComb x;
  x.add(p, c);
  return x;
}

void LinComb::add(const Path& p, const Rat& c) {
  if (sgn(c) == 0) return;
  auto it = terms.find(p);
  if (it == terms.end()) {
    terms.emplace(p, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

LinComb LinComb::operator+(const LinComb& o) const {
  LinComb r = *this;
  for (const auto& [p, c] : o.terms) r.add(p, c);
  return r;
}

LinComb LinComb::operator-(const LinComb& o) const {
  LinComb r = *this;
  for (const auto& [p, c] : o.terms) r.add(p, -c);
  return r;
}

LinComb LinComb::scaled(const Rat& s) const {
  LinComb r;
  if (sgn(s) == 0) return r;
  for (const auto& [p, c] : terms) r.terms.emplace(p, c * s);
  return r;
}

std::string LinComb::display(const Quiver& q) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms) {
    Rat a = c;
    if (!first) {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    if (a != 1) os << rat_str(a) << "*";
    os << p.display(q);
  }
  return os.str();
}

void RelationSet::validate(const Quiver& q) const {
  if (nilpotency_bound < 2) throw std::invalid_argument("relation set: nilpotency bound must be >= 2");
  for (const LinComb& r : relations) {
    if (r.is_zero()) continue;
    int src = -1, tgt = -1;
    for (const auto& [p, c] : r.terms) {
      p.validate(q);
      if (p.length() < 2) throw std::invalid_argument("relation set: term of length < 2");
      if (src < 0) {
        src = p.source;
        tgt = p.target;
      } else if (p.source != src || p.target != tgt) {
        throw std::invalid_argument("relation set: terms with different endpoints");
      }
    }
  }
}

int RelationSet::max_term_length() const {
  int m = 0;
  for (const LinComb& r : relations)
    for (const auto& [p, c] : r.terms) m = std::max(m, p.length());
  return m;
}

std::vector<Path> all_paths(const Quiver& q, int maxlen) {
  std::vector<Path> out;
  std::vector<Path> layer;
  for (int v = 1; v <= q.n_vertices; ++v) layer.push_back(Path::trivial(v));
  out = layer;
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Path> next;
    for (const Path& p : layer)
      for (size_t i = 0; i < q.arrows.size(); ++i)
        if (q.arrows[i].from == p.target) {
          Path e = p;
          e.arrows.push_back(static_cast<int>(i));
          e.target = q.arrows[i].to;
          next.push_back(e);
        }
    layer = std::move(next);
    out.insert(out.end(), layer.begin(), layer.end());
    if (layer.empty()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qmod
