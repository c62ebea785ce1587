#ifndef VANCYC_MPOLY_HPP
#define VANCYC_MPOLY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vancyc/errors.hpp"
#include "vancyc/rational.hpp"

namespace vancyc {

// Exponent vector; length equals the variable count of the owning MPoly.
using Monomial = std::vector<unsigned>;

inline unsigned mono_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0u);
}

// Degrevlex: higher total degree wins; ties broken by the rightmost
// nonzero entry of the difference being negative for the larger monomial.
inline bool degrevlex_less(const Monomial& a, const Monomial& b) {
  unsigned da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

struct DegRevLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return degrevlex_less(a, b);
  }
};

inline bool mono_divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] + b[i];
    if (r[i] < a[i]) throw Error(ErrorCode::Internal, "exponent overflow");
  }
  return r;
}

inline Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

// Sparse multivariate polynomial over Q. Terms are kept in a degrevlex
// ordered map with no zero coefficients, so the representation is canonical.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(std::vector<std::string> vars, const Rational& c) {
    MPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_[Monomial(p.vars_.size(), 0)] = c;
    return p;
  }
  static MPoly monomial(std::vector<std::string> vars, Monomial m, const Rational& c) {
    MPoly p(std::move(vars));
    if (m.size() != p.vars_.size())
      throw Error(ErrorCode::Internal, "monomial length mismatch");
    if (!c.is_zero()) p.terms_[std::move(m)] = c;
    return p;
  }
  static MPoly variable(std::vector<std::string> vars, size_t i) {
    Monomial m(vars.size(), 0);
    m.at(i) = 1;
    return monomial(std::move(vars), std::move(m), Rational(1));
  }

  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const std::map<Monomial, Rational, DegRevLexLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
  }
  Rational constant_coeff() const {
    Monomial one(vars_.size(), 0);
    auto it = terms_.find(one);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
  }

  // Largest term in degrevlex.
  std::pair<Monomial, Rational> leading_term() const {
    if (is_zero()) throw Error(ErrorCode::Internal, "leading term of zero polynomial");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r(vars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  MPoly operator+(const MPoly& o) const {
    check_vars(o);
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const {
    check_vars(o);
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    check_vars(o);
    MPoly r(vars_);
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) r.add_term(mono_mul(m1, m2), c1 * c2);
    return r;
  }
  MPoly& operator+=(const MPoly& o) { *this = *this + o; return *this; }
  MPoly& operator-=(const MPoly& o) { *this = *this - o; return *this; }

  MPoly scaled(const Rational& a) const {
    MPoly r(vars_);
    if (a.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_[m] = c * a;
    return r;
  }

  MPoly pow(unsigned e) const {
    MPoly r = constant(vars_, Rational(1));
    for (unsigned i = 0; i < e; ++i) r = r * (*this);
    return r;
  }

  bool operator==(const MPoly& o) const {
    return vars_ == o.vars_ && terms_ == o.terms_;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly partial_derivative(size_t i) const {
    if (i >= vars_.size()) throw Error(ErrorCode::Internal, "variable index out of range");
    MPoly r(vars_);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      Monomial d = m;
      d[i] -= 1;
      r.add_term(d, c * Rational(static_cast<long>(m[i])));
    }
    return r;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size())
      throw Error(ErrorCode::Internal, "evaluation point length mismatch");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (size_t i = 0; i < m.size(); ++i)
        for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
      acc += t;
    }
    return acc;
  }

  // Canonical form: degrevlex descending.
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rational a = c;
      if (first) {
        if (a.sign() < 0) { os << "-"; a = -a; }
      } else {
        os << (a.sign() < 0 ? " - " : " + ");
        if (a.sign() < 0) a = -a;
      }
      first = false;
      bool has_vars = mono_degree(m) > 0;
      if (!has_vars || !a.is_one()) {
        os << a;
        if (has_vars) os << "*";
      }
      bool firstvar = true;
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!firstvar) os << "*";
        firstvar = false;
        os << vars_[i];
        if (m[i] > 1) os << "^" << m[i];
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const MPoly& p) {
    return os << p.str();
  }

 private:
  void check_vars(const MPoly& o) const {
    if (vars_ != o.vars_) throw Error(ErrorCode::Internal, "variable list mismatch");
  }

  std::vector<std::string> vars_;
  std::map<Monomial, Rational, DegRevLexLess> terms_;
};

}  // namespace vancyc

#endif  // VANCYC_MPOLY_HPP
