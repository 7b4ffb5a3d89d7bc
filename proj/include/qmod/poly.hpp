#pragma once

#include <string>
#include <vector>

#include "qmod/matrix.hpp"
#include "qmod/rational.hpp"

namespace qmod {

// Univariate polynomial over Q, coefficients lowest-degree-first.
// Zero polynomial has empty coefficient list.
struct Poly {
  std::vector<Rat> c;

  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const Rat& x);
  static Poly x_minus(const Rat& lambda);  // x - lambda
  static Poly monomial(int degree, const Rat& coeff = Rat(1));

  void trim();
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  Rat eval(const Rat& x) const;
  bool operator==(const Poly& o) const { return c == o.c; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rat& s) const;
  Poly pow(int k) const;

  // Division with remainder: *this = q * d + r, deg r < deg d.
  std::pair<Poly, Poly> divrem(const Poly& d) const;

  // Substitute x -> x + a.
  Poly shifted(const Rat& a) const;

  // Multiplicative inverse modulo x^k (constant term must be nonzero).
  Poly inverse_mod_xk(int k) const;

  std::string str(const std::string& var = "x") const;
};

// Monic characteristic polynomial det(xI - A). Faddeev-LeVerrier, exact.
Poly charpoly(const Mat& a);

// Evaluate a polynomial at a square matrix.
Mat eval_at(const Poly& p, const Mat& a);

// Rational roots with multiplicities; remainder carries the part of p with
// no rational roots (constant iff p splits over Q).
struct RationalRoots {
  std::vector<std::pair<Rat, int>> roots;
  Poly remainder;
  bool splits() const { return remainder.degree() <= 0; }
};
RationalRoots rational_roots(const Poly& p);

// Projector onto the generalized eigenspace of `a` for eigenvalue lambda of
// multiplicity mult, as a polynomial in `a`. Requires (x-lambda)^mult to
// divide charpoly(a) with the quotient coprime to (x-lambda).
Mat spectral_projector(const Mat& a, const Rat& lambda, int mult);

}  // namespace qmod
