#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmod/rational.hpp"

namespace qmod {

// Vertices are 1..n; arrows are referenced by index into `arrows`.
struct Quiver {
  struct Arrow {
    std::string name;
    int from = 0;
    int to = 0;
  };

  int n_vertices = 0;
  std::vector<Arrow> arrows;

  void validate() const;
  int arrow_index(const std::string& name) const;
  std::vector<int> arrows_from(int v) const;
  std::vector<int> arrows_into(int v) const;
  bool is_acyclic() const;
  int longest_path_length() const;  // acyclic quivers only
};

// Arrows are stored in order of application: arrows[0] acts first. The
// paper writes composites right-to-left, so the path "a2 a1" is {a1, a2}.
struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;

  static Path trivial(int v) { return Path{v, v, {}}; }
  int length() const { return static_cast<int>(arrows.size()); }
  bool is_trivial() const { return arrows.empty(); }
  void validate(const Quiver& q) const;
  std::string display(const Quiver& q) const;

  // Canonical order: length, then arrow index sequence, then source.
  bool operator<(const Path& o) const {
    if (length() != o.length()) return length() < o.length();
    if (arrows != o.arrows) return arrows < o.arrows;
    return source < o.source;
  }
  bool operator==(const Path& o) const { return source == o.source && target == o.target && arrows == o.arrows; }
};

// p after q; nullopt is the distinguished zero of the path algebra.
std::optional<Path> compose_paths(const Path& p, const Path& q);

// Linear combination of paths with exact coefficients; zero coefficients
// are never stored.
struct LinComb {
  std::map<Path, Rat> terms;

  static LinComb zero() { return {}; }
  static LinComb of(const Path& p, const Rat& c = Rat(1));
  bool is_zero() const { return terms.empty(); }
  void add(const Path& p, const Rat& c);
  LinComb operator+(const LinComb& o) const;
  LinComb operator-(const LinComb& o) const;
  LinComb scaled(const Rat& s) const;
  bool operator==(const LinComb& o) const { return terms == o.terms; }
  std::string display(const Quiver& q) const;
};

struct RelationSet {
  std::vector<LinComb> relations;
  int nilpotency_bound = 2;  // N: paths of length >= N vanish in the quotient

  // Common endpoints, every term of length >= 2, N >= 2.
  void validate(const Quiver& q) const;
  int max_term_length() const;
};

// All paths of length <= maxlen in canonical order.
std::vector<Path> all_paths(const Quiver& q, int maxlen);

}  // namespace qmod
