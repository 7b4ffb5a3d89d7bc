#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qmod {

// Exact rational scalar. Everything in this library computes over Q;
// there is no floating point anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat x(num, den);
  x.canonicalize();
  return x;
}

// Parses "p", "-p" or "p/q".
inline Rat rat_parse(const std::string& s) {
  Rat x;
  if (x.set_str(s, 10) != 0 || sgn(Rat(x.get_den())) <= 0)
    throw std::invalid_argument("bad rational literal: " + s);
  x.canonicalize();
  return x;
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

// Deterministic seeded RNG. uniform() avoids std::uniform_int_distribution,
// whose output is implementation-defined; golden outputs depend on this.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  std::uint64_t raw() { return gen(); }

  long uniform(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("uniform: empty range");
    return lo + static_cast<long>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rat small_int(long lo = -5, long hi = 5) { return Rat(uniform(lo, hi)); }
};

}  // namespace qmod
