#ifndef VANCYC_RATIONAL_HPP
#define VANCYC_RATIONAL_HPP

#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "vancyc/errors.hpp"

namespace vancyc {

// Exact rational number. Always in lowest terms with positive denominator
// (gmp canonical form).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(int n) : v_(n) {}
  Rational(long num, long den) : v_(static_cast<signed long>(num), static_cast<signed long>(den)) {
    if (den == 0) throw Error(ErrorCode::Internal, "zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q".
  static Rational parse(const std::string& text) {
    mpq_class v;
    if (v.set_str(text, 10) != 0)
      throw Error(ErrorCode::SyntaxError, "bad rational literal '" + text + "'");
    if (v.get_den() == 0)
      throw Error(ErrorCode::SyntaxError, "zero denominator in '" + text + "'");
    v.canonicalize();
    return Rational(std::move(v));
  }

  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw Error(ErrorCode::Internal, "division by zero");
    return Rational(mpq_class(v_ / o.v_));
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  Rational inverse() const {
    if (is_zero()) throw Error(ErrorCode::Internal, "inverse of zero");
    return Rational(mpq_class(1 / v_));
  }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  // Largest integer <= this.
  Rational floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(mpq_class(q));
  }

  // Representative in [0,1) of this mod 1.
  Rational mod1() const { return *this - floor(); }

  // Exact conversion; throws if not a machine-size integer.
  long to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
      throw Error(ErrorCode::Internal, "rational does not fit a machine integer");
    return v_.get_num().get_si();
  }

  std::string str() const { return v_.get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_;
  }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace vancyc

#endif  // VANCYC_RATIONAL_HPP
