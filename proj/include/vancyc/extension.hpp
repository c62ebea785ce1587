#ifndef VANCYC_EXTENSION_HPP
#define VANCYC_EXTENSION_HPP

#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "vancyc/factor.hpp"
#include "vancyc/rational.hpp"
#include "vancyc/upoly.hpp"

namespace vancyc {

// A simple extension Q[s]/(p) with p monic irreducible over Q. Only one
// extension layer is supported anywhere in the engine.
class ExtensionField {
 public:
  explicit ExtensionField(QPoly modulus, std::string var = "s")
      : modulus_(modulus.monic()), var_(std::move(var)) {
    if (modulus_.degree() < 2)
      throw Error(ErrorCode::Internal, "extension modulus must have degree >= 2");
  }

  const QPoly& modulus() const { return modulus_; }
  int degree() const { return modulus_.degree(); }
  const std::string& var() const { return var_; }

 private:
  QPoly modulus_;
  std::string var_;
};

using ExtFieldPtr = std::shared_ptr<const ExtensionField>;

// Element of Q[s]/(p), stored reduced mod p. A null field pointer marks a
// context-free rational constant; binary operations unify contexts.
class ExtScalar {
 public:
  ExtScalar() : rep_() {}
  ExtScalar(long n) : rep_(n == 0 ? QPoly() : QPoly::constant(Rational(n))) {}
  ExtScalar(int n) : ExtScalar(static_cast<long>(n)) {}
  ExtScalar(const Rational& r)
      : rep_(r.is_zero() ? QPoly() : QPoly::constant(r)) {}
  ExtScalar(ExtFieldPtr field, QPoly rep) : field_(std::move(field)), rep_(std::move(rep)) {
    reduce();
  }

  static ExtScalar generator(ExtFieldPtr field) {
    return ExtScalar(std::move(field), QPoly::x());
  }

  const ExtFieldPtr& field() const { return field_; }
  const QPoly& rep() const { return rep_; }

  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rational to_rational() const {
    if (!is_rational())
      throw Error(ErrorCode::NonrationalExponent, "value is not rational: " + str());
    return rep_.is_zero() ? Rational(0) : rep_.coeff(0);
  }

  ExtScalar operator-() const { return ExtScalar(field_, -rep_); }
  ExtScalar operator+(const ExtScalar& o) const {
    return ExtScalar(unify(o), rep_ + o.rep_);
  }
  ExtScalar operator-(const ExtScalar& o) const {
    return ExtScalar(unify(o), rep_ - o.rep_);
  }
  ExtScalar operator*(const ExtScalar& o) const {
    return ExtScalar(unify(o), rep_ * o.rep_);
  }
  ExtScalar operator/(const ExtScalar& o) const { return *this * o.inverse(); }
  ExtScalar& operator+=(const ExtScalar& o) { *this = *this + o; return *this; }
  ExtScalar& operator-=(const ExtScalar& o) { *this = *this - o; return *this; }
  ExtScalar& operator*=(const ExtScalar& o) { *this = *this * o; return *this; }

  ExtScalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::Internal, "inverse of zero");
    if (is_rational()) return ExtScalar(field_, QPoly::constant(rep_.coeff(0).inverse()));
    auto [g, a, b] = poly_xgcd(rep_, field_->modulus());
    if (g.degree() != 0)
      throw Error(ErrorCode::Internal, "extension modulus is not irreducible");
    return ExtScalar(field_, a);
  }

  bool operator==(const ExtScalar& o) const { return rep_ == o.rep_; }
  bool operator!=(const ExtScalar& o) const { return !(*this == o); }

  // Deterministic total order for sorting; not a field order.
  bool operator<(const ExtScalar& o) const {
    if (rep_.degree() != o.rep_.degree()) return rep_.degree() < o.rep_.degree();
    for (int i = rep_.degree(); i >= 0; --i)
      if (rep_.coeff(i) != o.rep_.coeff(i)) return rep_.coeff(i) < o.rep_.coeff(i);
    return false;
  }

  std::string str() const { return rep_.str(field_ ? field_->var() : "s"); }

  friend std::ostream& operator<<(std::ostream& os, const ExtScalar& x) {
    return os << x.str();
  }

 private:
  ExtFieldPtr unify(const ExtScalar& o) const {
    if (field_ && o.field_ && field_ != o.field_)
      throw Error(ErrorCode::Internal, "mixed extension fields");
    return field_ ? field_ : o.field_;
  }
  void reduce() {
    if (field_ && rep_.degree() >= field_->degree())
      rep_ = rep_ % field_->modulus();
  }

  ExtFieldPtr field_;
  QPoly rep_;
};

inline ExtScalar operator*(const Rational& a, const ExtScalar& b) { return ExtScalar(a) * b; }

// Lagrange interpolation through distinct points.
inline QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  QPoly acc;
  for (size_t i = 0; i < xs.size(); ++i) {
    QPoly li = QPoly::constant(Rational(1));
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      QPoly num(std::vector<Rational>{-xs[j], Rational(1)});
      li = li * num.scaled((xs[i] - xs[j]).inverse());
    }
    acc = acc + li.scaled(ys[i]);
  }
  return acc;
}

struct ExtRoots {
  std::vector<ExtScalar> roots;       // roots of q found in the extension
  std::vector<int> leftover_degrees;  // degrees of K-irreducible nonlinear factors
};

// Roots in Q[s]/(p) of a squarefree q in Q[lambda], by the norm method:
// N_k = Res_s(p(s), q(lambda - k s)) for a shift k making N_k squarefree;
// the Q-irreducible factors of N_k cut out the K-irreducible factors of
// q(lambda - k s) as gcds, and the linear ones yield the roots.
inline ExtRoots roots_in_extension(const QPoly& q, const ExtFieldPtr& field) {
  ExtRoots out;
  if (q.degree() == 1) {
    out.roots.push_back(ExtScalar(-(q.coeff(0) / q.coeff(1))));
    return out;
  }
  const QPoly& p = field->modulus();
  for (long k = 0;; ++k) {
    // Interpolate N_k(lambda) from resultant values at rational points.
    int dn = q.degree() * p.degree();
    std::vector<Rational> xs, ys;
    long t = 0;
    while (static_cast<int>(xs.size()) < dn + 1) {
      Rational pt(t);
      // q(pt - k s) as a polynomial in s.
      QPoly in_s = q.evaluate_in<QPoly>(
          QPoly(std::vector<Rational>{pt, Rational(-k)}), QPoly::constant(Rational(1)),
          [](const Rational& c) { return QPoly::constant(c); });
      xs.push_back(pt);
      ys.push_back(poly_resultant(p, in_s));
      t = (t > 0) ? -t : -t + 1;
    }
    QPoly norm = interpolate(xs, ys).monic();
    if (poly_gcd(norm, norm.derivative()).degree() != 0) continue;  // bad shift

    ExtScalar s = ExtScalar::generator(field);
    ExtScalar minus_ks = ExtScalar(Rational(-k)) * s;
    // q_k(lambda) = q(lambda - k s) over K.
    UPoly<ExtScalar> qk;
    {
      std::vector<ExtScalar> cs;
      for (const auto& c : q.coeffs()) cs.push_back(ExtScalar(c));
      qk = UPoly<ExtScalar>(std::move(cs)).shifted(minus_ks);
    }
    for (const auto& [ni, mult] : factor_over_q(norm)) {
      (void)mult;  // norm is squarefree
      std::vector<ExtScalar> cs;
      for (const auto& c : ni.coeffs()) cs.push_back(ExtScalar(c));
      UPoly<ExtScalar> gi = poly_gcd(qk, UPoly<ExtScalar>(std::move(cs)));
      if (gi.degree() == 1) {
        // root of q_k is r; root of q is r - k s.
        ExtScalar r = -(gi.coeff(0) / gi.coeff(1));
        out.roots.push_back(r + minus_ks);
      } else if (gi.degree() > 1) {
        out.leftover_degrees.push_back(gi.degree());
      }
    }
    return out;
  }
}

}  // namespace vancyc

#endif  // VANCYC_EXTENSION_HPP
