#ifndef VANCYC_UPOLY_HPP
#define VANCYC_UPOLY_HPP

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vancyc/errors.hpp"
#include "vancyc/rational.hpp"

namespace vancyc {

// Dense univariate polynomial over a field K, coefficients low degree first.
// Zero polynomial has an empty coefficient vector and degree -1.
template <typename K>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(const K& a) { return UPoly(std::vector<K>{a}); }
  static UPoly x() { return UPoly(std::vector<K>{K(0), K(1)}); }
  // c0 + c1 x + ... from an initializer-style list of longs (test helper).
  static UPoly from_ints(const std::vector<long>& v) {
    std::vector<K> c;
    c.reserve(v.size());
    for (long a : v) c.push_back(K(a));
    return UPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : K(0);
  }
  const K& leading() const {
    if (is_zero()) throw Error(ErrorCode::Internal, "leading coeff of zero poly");
    return c_.back();
  }

  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  UPoly operator-() const {
    std::vector<K> r(c_);
    for (auto& a : r) a = -a;
    return UPoly(std::move(r));
  }

  UPoly operator+(const UPoly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), K(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UPoly(std::move(r));
  }
  UPoly operator-(const UPoly& o) const { return *this + (-o); }

  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<K> r(c_.size() + o.c_.size() - 1, K(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] += c_[i] * o.c_[j];
    return UPoly(std::move(r));
  }

  UPoly scaled(const K& a) const {
    if (a == K(0)) return UPoly();
    std::vector<K> r(c_);
    for (auto& x : r) x = x * a;
    return UPoly(std::move(r));
  }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<UPoly, UPoly> divrem(const UPoly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::Internal, "division by zero polynomial");
    UPoly r = *this;
    std::vector<K> q(std::max(0, degree() - d.degree() + 1), K(0));
    const K lead_inv = K(1) / d.leading();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int shift = r.degree() - d.degree();
      K factor = r.leading() * lead_inv;
      q[shift] = factor;
      // r -= factor * x^shift * d
      for (int i = 0; i <= d.degree(); ++i)
        r.c_[i + shift] -= factor * d.c_[i];
      r.trim();
    }
    return {UPoly(std::move(q)), r};
  }

  UPoly operator/(const UPoly& d) const { return divrem(d).first; }
  UPoly operator%(const UPoly& d) const { return divrem(d).second; }

  bool divides(const UPoly& other) const { return other.divrem(*this).second.is_zero(); }

  UPoly monic() const {
    if (is_zero()) return *this;
    return scaled(K(1) / leading());
  }

  UPoly derivative() const {
    if (degree() <= 0) return UPoly();
    std::vector<K> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
    return UPoly(std::move(r));
  }

  K evaluate(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Evaluation with value type possibly larger than K (e.g. matrices, extension
  // elements); V needs V*V, V+V and construction from K via the caller-supplied
  // embedding.
  template <typename V, typename Embed>
  V evaluate_in(const V& x, const V& one, Embed embed) const {
    V acc = one;  // placeholder, replaced on first iteration
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if (first) {
        acc = embed(*it);
        first = false;
      } else {
        acc = acc * x + embed(*it);
      }
    }
    if (first) return embed(K(0));
    return acc;
  }

  // p(x + a).
  UPoly shifted(const K& a) const {
    UPoly result;
    UPoly lin(std::vector<K>{a, K(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      result = result * lin + constant(*it);
    return result;
  }

  std::string str(const std::string& var = "s") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool firstterm = true;
    for (int i = degree(); i >= 0; --i) {
      K a = coeff(i);
      if (a == K(0)) continue;
      std::ostringstream term;
      if (i == 0) {
        term << a;
      } else {
        if (!(a == K(1))) {
          if (a == -K(1)) term << "-";
          else term << a << "*";
        }
        term << var;
        if (i > 1) term << "^" << i;
      }
      std::string t = term.str();
      if (!firstterm) {
        if (!t.empty() && t[0] == '-') os << " - " << t.substr(1);
        else os << " + " << t;
      } else {
        os << t;
      }
      firstterm = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }
  std::vector<K> c_;
};

// Monic gcd via the Euclidean algorithm.
template <typename K>
UPoly<K> poly_gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    UPoly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <typename K>
std::tuple<UPoly<K>, UPoly<K>, UPoly<K>> poly_xgcd(const UPoly<K>& a, const UPoly<K>& b) {
  UPoly<K> r0 = a, r1 = b;
  UPoly<K> s0 = UPoly<K>::constant(K(1)), s1;
  UPoly<K> t0, t1 = UPoly<K>::constant(K(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    r0 = std::move(r1); r1 = std::move(r);
    UPoly<K> s = s0 - q * s1; s0 = std::move(s1); s1 = std::move(s);
    UPoly<K> t = t0 - q * t1; t0 = std::move(t1); t1 = std::move(t);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  K inv = K(1) / r0.leading();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

// Resultant of two polynomials via the Euclidean remainder sequence.
template <typename K>
K poly_resultant(UPoly<K> a, UPoly<K> b) {
  if (a.is_zero() || b.is_zero()) return K(0);
  K sign(1), acc(1);
  while (b.degree() > 0) {
    UPoly<K> r = a % b;
    if (r.is_zero()) return K(0);
    // res(a,b) = (-1)^{deg a * deg b} lc(b)^{deg a - deg r} res(b,r)
    if ((a.degree() % 2) && (b.degree() % 2)) sign = -sign;
    K lc = b.leading();
    K p(1);
    for (int i = 0; i < a.degree() - r.degree(); ++i) p = p * lc;
    acc = acc * p;
    a = std::move(b);
    b = std::move(r);
  }
  // b is a nonzero constant: res(a, b) = b^{deg a}
  K p(1);
  for (int i = 0; i < a.degree(); ++i) p = p * b.coeff(0);
  return sign * acc * p;
}

}  // namespace vancyc

#endif  // VANCYC_UPOLY_HPP
