#ifndef VANCYC_LOGMONOMIAL_HPP
#define VANCYC_LOGMONOMIAL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "vancyc/errors.hpp"
#include "vancyc/rational.hpp"

namespace vancyc {

// Normal-crossing monomial problem: f = prod_{i in J} x_i^{e_i} with a
// rank-1 twist of residue alpha_i along x_i = 0 for i in J'.
struct NCProblem {
  int nvars = 0;
  std::vector<int> j;                                    // 0-based, sorted
  std::vector<int> jprime;                               // superset of j, sorted
  std::map<int, long> e;                                 // exponents, keys = j
  std::map<int, Rational> alpha;                         // residues, keys = jprime
  std::optional<std::pair<Rational, Rational>> window;   // eigenvalues in [a, b)
  std::optional<long> degree_bound;                      // or: bound on nu_{i0}
};

// Per cohomological degree p: (eigenvalue, multiplicity), sorted by
// eigenvalue. Degrees run 0 .. |J'|-1.
struct NCSpectrum {
  int i0 = -1;
  std::vector<std::vector<std::pair<Rational, int>>> by_degree;
};

namespace detail {

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline void validate(const NCProblem& prob) {
  if (prob.j.empty()) throw Error(ErrorCode::EmptyJ, "J must be nonempty");
  if (!prob.window && !prob.degree_bound)
    throw Error(ErrorCode::WindowUnbounded, "need an eigenvalue window or a degree bound");
  if (!std::includes(prob.jprime.begin(), prob.jprime.end(), prob.j.begin(), prob.j.end()))
    throw Error(ErrorCode::SyntaxError, "J must be contained in J'");
  for (int i : prob.jprime)
    if (i < 0 || i >= prob.nvars) throw Error(ErrorCode::SyntaxError, "index out of range");
  for (int i : prob.j) {
    auto it = prob.e.find(i);
    if (it == prob.e.end() || it->second < 1)
      throw Error(ErrorCode::SyntaxError, "exponents e_i >= 1 required for i in J");
  }
  for (int i : prob.jprime) {
    auto it = prob.alpha.find(i);
    Rational a = it == prob.alpha.end() ? Rational(0) : it->second;
    if (a < Rational(0) || !(a < Rational(1)))
      throw Error(ErrorCode::SyntaxError, "residues must lie in [0,1)");
  }
}

inline Rational residue(const NCProblem& prob, int i) {
  auto it = prob.alpha.find(i);
  return it == prob.alpha.end() ? Rational(0) : it->second;
}

// True when some twist residue on J' \ J is nonzero: the stalk cohomology
// vanishes identically then.
inline bool twist_kills_stalk(const NCProblem& prob) {
  for (int i : prob.jprime)
    if (std::find(prob.j.begin(), prob.j.end(), i) == prob.j.end() &&
        !(residue(prob, i) == Rational(0)))
      return true;
  return false;
}

// Monomials x^nu live in A_0 iff nu_i + alpha_i = e_i * lambda for all
// i in J, with lambda the common t∂t-eigenvalue. Given lambda there is at
// most one such nu; this reports whether it exists in N^J.
inline bool a0_monomial_exists(const NCProblem& prob, const Rational& lambda) {
  for (int i : prob.j) {
    Rational nu = Rational(prob.e.at(i)) * lambda - residue(prob, i);
    if (nu < Rational(0) || !nu.is_integer()) return false;
  }
  return true;
}

}  // namespace detail

// t∂t-eigenvalues on H^p of the relative logarithmic de Rham stalk at the
// origin, with multiplicities. For each A_0-monomial of eigenvalue lambda
// the degree-p multiplicity is C(|J'|-1, p): the wedge directions
// J \ {i0} and the kernel/cokernel pairs of x_i∂_i for i in J' \ J.
inline NCSpectrum nc_spectrum(const NCProblem& prob, std::optional<int> i0_choice = std::nullopt) {
  detail::validate(prob);
  int i0 = i0_choice.value_or(prob.j.front());
  if (std::find(prob.j.begin(), prob.j.end(), i0) == prob.j.end())
    throw Error(ErrorCode::SyntaxError, "i0 must lie in J");

  NCSpectrum out;
  out.i0 = i0;
  int r = static_cast<int>(prob.jprime.size()) - 1;
  out.by_degree.assign(static_cast<size_t>(r) + 1, {});
  if (detail::twist_kills_stalk(prob)) return out;

  long e0 = prob.e.at(i0);
  Rational a0 = detail::residue(prob, i0);
  long nu_max;
  if (prob.window) {
    const auto& [lo, hi] = *prob.window;
    if (!(lo < hi)) return out;
    nu_max = (Rational(e0) * hi - a0).floor().to_long() + 1;
  } else {
    nu_max = *prob.degree_bound;
  }

  for (long nu0 = 0; nu0 <= nu_max; ++nu0) {
    Rational lambda = (Rational(nu0) + a0) / Rational(e0);
    if (prob.window) {
      const auto& [lo, hi] = *prob.window;
      if (lambda < lo) continue;
      if (!(lambda < hi)) break;
    }
    if (!detail::a0_monomial_exists(prob, lambda)) continue;
    for (int p = 0; p <= r; ++p)
      out.by_degree[static_cast<size_t>(p)].emplace_back(
          lambda, static_cast<int>(detail::binomial(r, p)));
  }
  return out;
}

// Dimensions, per degree p, of the generalized alpha-eigenspace of t∂t on
// the stalk — the nearby-cycle stalk for the monodromy eigenvalue
// exp(-2 pi i alpha), counted at the representative alpha in [0,1).
inline std::vector<long> psi_stalk_dims(const NCProblem& prob, const Rational& alpha) {
  detail::validate(prob);
  if (alpha < Rational(0) || !(alpha < Rational(1)))
    throw Error(ErrorCode::SyntaxError, "alpha must lie in [0,1)");
  int r = static_cast<int>(prob.jprime.size()) - 1;
  std::vector<long> dims(static_cast<size_t>(r) + 1, 0);
  if (detail::twist_kills_stalk(prob)) return dims;
  if (!detail::a0_monomial_exists(prob, alpha)) return dims;
  for (int p = 0; p <= r; ++p) dims[static_cast<size_t>(p)] = detail::binomial(r, p);
  return dims;
}

}  // namespace vancyc

#endif  // VANCYC_LOGMONOMIAL_HPP
