#ifndef VANCYC_EIGEN_HPP
#define VANCYC_EIGEN_HPP

#include <algorithm>
#include <variant>
#include <vector>

#include "vancyc/extension.hpp"
#include "vancyc/factor.hpp"
#include "vancyc/matrix.hpp"

namespace vancyc {

enum class ExtensionPolicy { rational_only, allow_one_extension };

template <typename K>
struct SpectralEntry {
  K eigenvalue;
  Matrix<K> basis;  // columns: generalized eigenspace basis
  int multiplicity;
};
template <typename K>
using SpectralSplit = std::vector<SpectralEntry<K>>;

namespace detail {

inline Error irreducible_error(const std::string& factor) {
  return Error(ErrorCode::IrreducibleFactor,
               "irreducible factor of degree > 1: " + factor);
}

}  // namespace detail

// All roots with multiplicity over Q; throws IrreducibleFactor if the
// polynomial does not split.
inline std::vector<std::pair<Rational, int>> all_roots(const QPoly& p) {
  std::vector<std::pair<Rational, int>> roots;
  for (const auto& [f, mult] : factor_over_q(p)) {
    if (f.degree() == 1)
      roots.emplace_back(-(f.coeff(0) / f.coeff(1)), mult);
    else
      throw detail::irreducible_error(f.str("t"));
  }
  return roots;
}

// All roots with multiplicity in Q[s]/(p). Polynomials with rational
// coefficients are factored over Q and the nonlinear factors are chased
// into the extension by the norm method; for genuinely extension-valued
// coefficients only rational roots are extracted (the engine never needs
// extension roots of such polynomials — their residues must be rational).
inline std::vector<std::pair<ExtScalar, int>> all_roots(const UPoly<ExtScalar>& p) {
  bool rational_coeffs = true;
  ExtFieldPtr field;
  for (const auto& c : p.coeffs()) {
    if (!c.is_rational()) rational_coeffs = false;
    if (c.field()) field = c.field();
  }
  std::vector<std::pair<ExtScalar, int>> roots;
  if (rational_coeffs) {
    std::vector<Rational> qc;
    for (const auto& c : p.coeffs()) qc.push_back(c.is_zero() ? Rational(0) : c.rep().coeff(0));
    QPoly q(std::move(qc));
    for (const auto& [f, mult] : factor_over_q(q)) {
      if (f.degree() == 1) {
        roots.emplace_back(ExtScalar(-(f.coeff(0) / f.coeff(1))), mult);
      } else if (field) {
        ExtRoots er = roots_in_extension(f, field);
        if (!er.leftover_degrees.empty()) throw detail::irreducible_error(f.str("t"));
        for (const auto& r : er.roots) roots.emplace_back(r, mult);
      } else {
        throw detail::irreducible_error(f.str("t"));
      }
    }
    return roots;
  }
  // Rational-root deflation for extension-valued coefficients.
  UPoly<ExtScalar> rest = p;
  while (rest.degree() >= 1) {
    // A rational root kills every s-coordinate; use the lowest coordinate
    // polynomial for candidates.
    std::vector<Rational> coord0;
    for (const auto& c : rest.coeffs()) coord0.push_back(c.rep().coeff(0));
    QPoly q0(std::move(coord0));
    bool found = false;
    if (!q0.is_zero()) {
      for (const auto& [f, mult] : factor_over_q(q0)) {
        (void)mult;
        if (f.degree() != 1) continue;
        Rational cand = -(f.coeff(0) / f.coeff(1));
        if (rest.evaluate(ExtScalar(cand)).is_zero()) {
          int count = 0;
          UPoly<ExtScalar> lin(std::vector<ExtScalar>{ExtScalar(-cand), ExtScalar(1)});
          while (rest.evaluate(ExtScalar(cand)).is_zero() && rest.degree() >= 1) {
            rest = rest / lin;
            ++count;
          }
          roots.emplace_back(ExtScalar(cand), count);
          found = true;
          break;
        }
      }
    }
    if (!found) throw detail::irreducible_error("(nonrational spectrum over extension)");
  }
  return roots;
}

// Eigenspace decomposition into generalized eigenspaces. Throws
// IrreducibleFactor when the characteristic polynomial does not split
// over the coefficient field.
template <typename K>
SpectralSplit<K> split_spectrum(const Matrix<K>& m) {
  if (!m.is_square()) throw Error(ErrorCode::Internal, "split_spectrum of non-square matrix");
  int n = m.rows();
  auto roots = all_roots(char_poly(m));
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SpectralSplit<K> out;
  int total = 0;
  for (const auto& [c, mult] : roots) {
    Matrix<K> shifted = m - Matrix<K>::identity(n).scaled(c);
    Matrix<K> ker = shifted.power(n).kernel();
    if (ker.cols() != mult)
      throw Error(ErrorCode::Internal, "generalized eigenspace dimension mismatch");
    out.push_back(SpectralEntry<K>{c, ker, mult});
    total += mult;
  }
  if (total != n)
    throw Error(ErrorCode::Internal, "eigenvalue multiplicities do not sum to dimension");
  return out;
}

// split_spectrum over Q with the extension policy of the engine: under
// allow_one_extension a nonlinear irreducible factor p restarts the
// computation over Q[s]/(p).
using SplitResult =
    std::variant<SpectralSplit<Rational>, std::pair<ExtFieldPtr, SpectralSplit<ExtScalar>>>;

inline Matrix<ExtScalar> lift_to_extension(const Matrix<Rational>& m, const ExtFieldPtr& field) {
  Matrix<ExtScalar> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      r.at(i, j) = ExtScalar(field, m.at(i, j).is_zero()
                                        ? QPoly()
                                        : QPoly::constant(m.at(i, j)));
  return r;
}

inline SplitResult split_spectrum(const Matrix<Rational>& m, ExtensionPolicy policy) {
  if (policy == ExtensionPolicy::rational_only) return split_spectrum(m);
  try {
    return split_spectrum(m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IrreducibleFactor) throw;
  }
  // Restart over Q[s]/(p) for the first nonlinear irreducible factor.
  QPoly pfac;
  for (const auto& [f, mult] : factor_over_q(char_poly(m))) {
    (void)mult;
    if (f.degree() > 1) { pfac = f; break; }
  }
  auto field = std::make_shared<const ExtensionField>(pfac);
  return std::make_pair(field, split_spectrum(lift_to_extension(m, field)));
}

// Unique solution X of a X - X b = c; spectra of a and b must be disjoint
// (checked exactly via the resultant of the characteristic polynomials).
template <typename K>
Matrix<K> solve_sylvester(const Matrix<K>& a, const Matrix<K>& b, const Matrix<K>& c) {
  if (!a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.rows())
    throw Error(ErrorCode::Internal, "sylvester shape mismatch");
  if (poly_resultant(char_poly(a), char_poly(b)) == K(0))
    throw Error(ErrorCode::SingularSylvester, "spectra of a and b intersect");
  int p = a.rows(), q = b.rows();
  // (I_q (x) a - b^T (x) I_p) vec(X) = vec(c), columns stacked.
  Matrix<K> sys(p * q, p * q);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) {
      int row = j * p + i;
      for (int k = 0; k < p; ++k) sys.at(row, j * p + k) += a.at(i, k);
      for (int l = 0; l < q; ++l) sys.at(row, l * p + i) -= b.at(l, j);
    }
  Matrix<K> rhs(p * q, 1);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) rhs.at(j * p + i, 0) = c.at(i, j);
  Matrix<K> sol = sys.solve(rhs);
  Matrix<K> x(p, q);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) x.at(i, j) = sol.at(j * p + i, 0);
  return x;
}

template <typename K>
struct JordanEntry {
  K eigenvalue;
  std::vector<int> block_sizes;  // descending
};

// Jordan block sizes from the rank sequence of powers of (m - cI).
template <typename K>
std::vector<JordanEntry<K>> jordan_data(const Matrix<K>& m) {
  if (!m.is_square()) throw Error(ErrorCode::Internal, "jordan_data of non-square matrix");
  int n = m.rows();
  auto roots = all_roots(char_poly(m));
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<JordanEntry<K>> out;
  for (const auto& [c, mult] : roots) {
    Matrix<K> shifted = m - Matrix<K>::identity(n).scaled(c);
    std::vector<int> ranks{n};  // rank of power 0
    Matrix<K> pw = Matrix<K>::identity(n);
    for (int k = 1; k <= mult + 1; ++k) {
      pw = pw * shifted;
      ranks.push_back(pw.rank());
    }
    JordanEntry<K> entry{c, {}};
    for (int k = 1; k <= mult; ++k) {
      int exactly_k = (ranks[k - 1] - ranks[k]) - (ranks[k] - ranks[k + 1]);
      for (int i = 0; i < exactly_k; ++i) entry.block_sizes.push_back(k);
    }
    std::sort(entry.block_sizes.rbegin(), entry.block_sizes.rend());
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace vancyc

#endif  // VANCYC_EIGEN_HPP
