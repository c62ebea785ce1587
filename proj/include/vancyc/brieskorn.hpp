#ifndef VANCYC_BRIESKORN_HPP
#define VANCYC_BRIESKORN_HPP

#include <optional>
#include <string>
#include <vector>

#include "vancyc/eigen.hpp"
#include "vancyc/groebner.hpp"
#include "vancyc/matrix.hpp"

namespace vancyc {

// Class of g dx_1^...^dx_n in the completed Brieskorn module, written on
// the staircase basis as truncated u-polynomials: coeff(i, j) multiplies
// u^i b_j. Exact up to and including order N.
struct ReductionResult {
  int precision = 0;                              // N
  std::vector<std::vector<Rational>> coeff_by_order;  // [i][j], i = 0..N

  Rational coeff(int order, int j) const { return coeff_by_order[order][j]; }
};

// One reduction step sends g dx to r dx + u (sum_i d q_i/d x_i) dx where
// g = r + sum q_i f_i is the division against the original generators.
inline ReductionResult reduce_form(const MPoly& g, const MilnorData& md, int precision) {
  if (precision < 0) throw Error(ErrorCode::Internal, "negative precision");
  ReductionResult out;
  out.precision = precision;
  out.coeff_by_order.assign(precision + 1, std::vector<Rational>(md.staircase.size(), Rational(0)));
  MPoly carry = g;
  size_t n = g.nvars();
  for (int i = 0; i <= precision && !carry.is_zero(); ++i) {
    auto [r, q] = md.gb.normal_form_with_quotients(carry);
    for (size_t j = 0; j < md.staircase.size(); ++j)
      out.coeff_by_order[i][j] = r.coeff(md.staircase[j]);
    MPoly next(g.vars());
    for (size_t v = 0; v < n; ++v) next += q[v].partial_derivative(v);
    carry = std::move(next);
  }
  return out;
}

// Free truncated-series lattice with t acting as A(u) + u^2 d/du.
template <typename K>
struct MicroModule {
  int dim = 0;
  int precision = 0;               // N
  std::vector<Matrix<K>> a;        // A_0 .. A_N
  std::vector<std::string> basis;  // staircase monomials or synthetic labels

  const Matrix<K>& a0() const { return a[0]; }
  bool empty() const { return dim == 0; }
};

inline std::string monomial_label(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

// Lattice presentation of the t-action on the Milnor-algebra basis:
// column j of A(u) is the reduction of f * b_j.
inline MicroModule<Rational> t_matrix(const MPoly& f, const MilnorData& md, int precision) {
  MicroModule<Rational> mm;
  mm.dim = md.mu;
  mm.precision = precision;
  mm.a.assign(precision + 1, Matrix<Rational>(md.mu, md.mu));
  for (const auto& m : md.staircase) mm.basis.push_back(monomial_label(m, f.vars()));
  for (int j = 0; j < md.mu; ++j) {
    MPoly fbj = detail::term_mul(f, md.staircase[j], Rational(1));
    ReductionResult rr = reduce_form(fbj, md, precision);
    for (int i = 0; i <= precision; ++i)
      for (int k = 0; k < md.mu; ++k) mm.a[i].at(k, j) = rr.coeff(i, k);
  }
  return mm;
}

inline MicroModule<Rational> t_matrix(const MPoly& f, int precision) {
  std::vector<MPoly> gens;
  for (size_t i = 0; i < f.nvars(); ++i) gens.push_back(f.partial_derivative(i));
  return t_matrix(f, milnor_data(buchberger(gens)), precision);
}

inline MicroModule<ExtScalar> lift_module(const MicroModule<Rational>& mm, const ExtFieldPtr& field) {
  MicroModule<ExtScalar> out;
  out.dim = mm.dim;
  out.precision = mm.precision;
  out.basis = mm.basis;
  for (const auto& ai : mm.a) out.a.push_back(lift_to_extension(ai, field));
  return out;
}

// Weights w with sum a_i w_i = 1 for every exponent vector of f, when they
// are uniquely determined. Used as a cross-check on quasi-homogeneous input.
inline std::optional<std::vector<Rational>> quasi_homogeneous_weights(const MPoly& f) {
  size_t n = f.nvars();
  if (f.is_zero()) return std::nullopt;
  Matrix<Rational> sys(static_cast<int>(f.term_count()), static_cast<int>(n) + 1);
  int row = 0;
  for (const auto& [m, c] : f.terms()) {
    for (size_t i = 0; i < n; ++i) sys.at(row, static_cast<int>(i)) = Rational(static_cast<long>(m[i]));
    sys.at(row, static_cast<int>(n)) = Rational(1);
    ++row;
  }
  auto pivots = sys.row_reduce();
  // inconsistent if the augmented column is a pivot
  if (!pivots.empty() && pivots.back() == static_cast<int>(n)) return std::nullopt;
  if (static_cast<int>(pivots.size()) != static_cast<int>(n)) return std::nullopt;  // underdetermined
  std::vector<Rational> w(n);
  for (size_t i = 0; i < n; ++i) w[i] = sys.at(static_cast<int>(i), static_cast<int>(n));
  for (const auto& wi : w)
    if (wi.sign() <= 0) return std::nullopt;
  return w;
}

}  // namespace vancyc

#endif  // VANCYC_BRIESKORN_HPP
