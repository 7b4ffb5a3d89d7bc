#include "qmod/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace qmod {

Poly Poly::constant(const Rat& x) { return Poly(std::vector<Rat>{x}); }

Poly Poly::x_minus(const Rat& lambda) { return Poly(std::vector<Rat>{-lambda, Rat(1)}); }

Poly Poly::monomial(int degree, const Rat& coeff) {
  std::vector<Rat> c(degree + 1);
  c[degree] = coeff;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

Rat Poly::eval(const Rat& x) const {
  Rat v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> out(std::max(c.size(), o.c.size()));
  for (size_t i = 0; i < c.size(); ++i) out[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) out[i] += o.c[i];
  return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(Rat(-1)); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> out(c.size() + o.c.size() - 1);
  for (size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    for (size_t j = 0; j < o.c.size(); ++j) out[i + j] += c[i] * o.c[j];
  }
  return Poly(std::move(out));
}

Poly Poly::scaled(const Rat& s) const {
  std::vector<Rat> out(c);
  for (Rat& x : out) x *= s;
  return Poly(std::move(out));
}

Poly Poly::pow(int k) const {
  Poly r = Poly::constant(Rat(1));
  for (int i = 0; i < k; ++i) r = r * (*this);
  return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
  if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
  Poly r = *this;
  std::vector<Rat> q(degree() >= d.degree() ? degree() - d.degree() + 1 : 0);
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int k = r.degree() - d.degree();
    Rat f = r.c.back() / d.c.back();
    q[k] = f;
    for (size_t i = 0; i < d.c.size(); ++i) r.c[k + i] -= f * d.c[i];
    r.trim();
  }
  return {Poly(std::move(q)), r};
}

Poly Poly::shifted(const Rat& a) const {
  // Horner in (x + a).
  Poly r;
  Poly lin(std::vector<Rat>{a, Rat(1)});
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * lin + Poly::constant(*it);
  return r;
}

Poly Poly::inverse_mod_xk(int k) const {
  if (is_zero() || sgn(c[0]) == 0) throw std::invalid_argument("inverse_mod_xk: unit constant term required");
  std::vector<Rat> inv(k);
  inv[0] = 1 / c[0];
  for (int i = 1; i < k; ++i) {
    Rat s = 0;
    for (int j = 1; j <= i; ++j) {
      if (j < static_cast<int>(c.size())) s += c[j] * inv[i - j];
    }
    inv[i] = -s / c[0];
  }
  return Poly(std::move(inv));
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (sgn(c[i]) == 0) continue;
    Rat a = c[i];
    if (!first) {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    if (i == 0 || a != 1) {
      os << rat_str(a);
      if (i > 0) os << "*";
    }
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly charpoly(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("charpoly of non-square matrix");
  int n = a.rows();
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  Mat m = Mat::identity(n);
  for (int k = 1; k <= n; ++k) {
    m = a * m;
    Rat ck = -m.trace() / k;
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) m.at(i, i) += ck;
  }
  return Poly(std::move(c));
}

Mat eval_at(const Poly& p, const Mat& a) {
  int n = a.rows();
  Mat r(n, n);
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
    r = r * a;
    for (int i = 0; i < n; ++i) r.at(i, i) += *it;
  }
  return r;
}

RationalRoots rational_roots(const Poly& p) {
  RationalRoots out;
  if (p.is_zero()) {
    out.remainder = p;
    return out;
  }
  Poly rest = p;
  // Zero root first.
  int zmult = 0;
  while (!rest.is_zero() && sgn(rest.c[0]) == 0) {
    rest.c.erase(rest.c.begin());
    rest.trim();
    ++zmult;
  }
  if (zmult > 0) out.roots.push_back({Rat(0), zmult});
  // Candidate nonzero roots p/q: p | numerator of c0, q | numerator of lead
  // after clearing denominators.
  if (rest.degree() >= 1) {
    mpz_class lcm = 1;
    for (const Rat& x : rest.c) lcm = lcm / gcd(lcm, x.get_den()) * x.get_den();
    std::vector<mpz_class> ic;
    for (const Rat& x : rest.c) ic.push_back(mpz_class(x.get_num() * (lcm / x.get_den())));
    mpz_class a0 = abs(ic.front()), an = abs(ic.back());
    std::vector<mpz_class> ps, qs;
    for (mpz_class d = 1; d * d <= a0; ++d)
      if (a0 % d == 0) {
        ps.push_back(d);
        ps.push_back(a0 / d);
      }
    for (mpz_class d = 1; d * d <= an; ++d)
      if (an % d == 0) {
        qs.push_back(d);
        qs.push_back(an / d);
      }
    std::vector<Rat> candidates;
    for (const auto& pn : ps)
      for (const auto& qd : qs) {
        Rat r(pn, qd);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Rat& cand : candidates) {
      int mult = 0;
      while (!rest.is_zero() && rest.degree() >= 1 && sgn(rest.eval(cand)) == 0) {
        rest = rest.divrem(Poly::x_minus(cand)).first;
        ++mult;
      }
      if (mult > 0) out.roots.push_back({cand, mult});
    }
  }
  out.remainder = rest;
  return out;
}

Mat spectral_projector(const Mat& a, const Rat& lambda, int mult) {
  Poly chi = charpoly(a);
  Poly factor = Poly::x_minus(lambda).pow(mult);
  auto [q, r] = chi.divrem(factor);
  if (!r.is_zero()) throw std::invalid_argument("spectral_projector: multiplicity does not divide charpoly");
  if (sgn(q.eval(lambda)) == 0) throw std::invalid_argument("spectral_projector: quotient not coprime to root");
  // u with u*q == 1 mod (x-lambda)^mult, computed as a series in (x-lambda).
  Poly u = q.shifted(lambda).inverse_mod_xk(mult).shifted(-lambda);
  return eval_at(u * q, a);
}

}  // namespace qmod
