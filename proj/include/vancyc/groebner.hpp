#ifndef VANCYC_GROEBNER_HPP
#define VANCYC_GROEBNER_HPP

#include <deque>
#include <utility>
#include <vector>

#include "vancyc/mpoly.hpp"

namespace vancyc {

namespace detail {

// c * x^m * p
inline MPoly term_mul(const MPoly& p, const Monomial& m, const Rational& c) {
  MPoly r(p.vars());
  for (const auto& [pm, pc] : p.terms()) r.add_term(mono_mul(pm, m), pc * c);
  return r;
}

}  // namespace detail

// Grobner basis in degrevlex with cofactor tracking: every basis element
// g_k is stored together with the cofactors expressing it as an exact
// combination of the original generators.
class GroebnerBasis {
 public:
  std::vector<MPoly> generators;            // the original f_i
  std::vector<MPoly> basis;                 // monic g_k
  std::vector<std::vector<MPoly>> cofactors;  // g_k = sum_i cofactors[k][i] * f_i

  size_t size() const { return basis.size(); }

  // Division of g by the basis: returns (r, qb) with g = r + sum qb_k g_k
  // and no term of r divisible by any leading term. First matching basis
  // element in index order reduces, so the result is deterministic.
  std::pair<MPoly, std::vector<MPoly>> reduce(const MPoly& g) const {
    MPoly p = g;
    MPoly r(g.vars());
    std::vector<MPoly> qb(basis.size(), MPoly(g.vars()));
    while (!p.is_zero()) {
      auto [m, c] = p.leading_term();
      bool reduced = false;
      for (size_t k = 0; k < basis.size(); ++k) {
        const auto& [ltm, ltc] = basis[k].leading_term();
        if (!mono_divides(ltm, m)) continue;
        Monomial q = mono_div(m, ltm);
        Rational factor = c / ltc;  // ltc == 1 for monic basis
        p -= detail::term_mul(basis[k], q, factor);
        qb[k].add_term(q, factor);
        reduced = true;
        break;
      }
      if (!reduced) {
        r.add_term(m, c);
        MPoly t(g.vars());
        t.add_term(m, c);
        p -= t;
      }
    }
    return {r, qb};
  }

  // Normal form with quotients against the ORIGINAL generators:
  // g = r + sum_i q_i f_i exactly.
  std::pair<MPoly, std::vector<MPoly>> normal_form_with_quotients(const MPoly& g) const {
    auto [r, qb] = reduce(g);
    std::vector<MPoly> q(generators.size(), MPoly(g.vars()));
    for (size_t k = 0; k < basis.size(); ++k) {
      if (qb[k].is_zero()) continue;
      for (size_t i = 0; i < generators.size(); ++i)
        q[i] += qb[k] * cofactors[k][i];
    }
    return {r, std::move(q)};
  }

  MPoly normal_form(const MPoly& g) const { return reduce(g).first; }
};

// Buchberger's algorithm, FIFO pair selection, monic normalization,
// coprime-leading-term pairs skipped.
inline GroebnerBasis buchberger(const std::vector<MPoly>& gens) {
  if (gens.empty()) throw Error(ErrorCode::Internal, "buchberger: no generators");
  const auto& vars = gens[0].vars();
  GroebnerBasis gb;
  gb.generators = gens;

  auto append = [&](const MPoly& p, const std::vector<MPoly>& cof) {
    Rational lc = p.leading_term().second;
    gb.basis.push_back(p.scaled(lc.inverse()));
    std::vector<MPoly> ncof;
    ncof.reserve(cof.size());
    for (const auto& c : cof) ncof.push_back(c.scaled(lc.inverse()));
    gb.cofactors.push_back(std::move(ncof));
  };

  // Zero generators contribute nothing to the ideal and are skipped; the
  // cofactor slots for them stay zero.
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    std::vector<MPoly> cof(gens.size(), MPoly(vars));
    cof[i] = MPoly::constant(vars, Rational(1));
    append(gens[i], cof);
  }

  std::deque<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < gb.size(); ++i)
    for (size_t j = i + 1; j < gb.size(); ++j) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const auto& [lti, ci] = gb.basis[i].leading_term();
    const auto& [ltj, cj] = gb.basis[j].leading_term();
    Monomial lcm = mono_lcm(lti, ltj);
    // Product criterion: coprime leading terms reduce to zero.
    if (lcm == mono_mul(lti, ltj)) continue;
    MPoly s = detail::term_mul(gb.basis[i], mono_div(lcm, lti), Rational(1)) -
              detail::term_mul(gb.basis[j], mono_div(lcm, ltj), Rational(1));
    auto [r, qb] = gb.reduce(s);
    if (r.is_zero()) continue;
    // Cofactors of the S-polynomial minus the reduction part.
    std::vector<MPoly> cof(gb.generators.size(), MPoly(vars));
    for (size_t g = 0; g < gb.generators.size(); ++g) {
      cof[g] = detail::term_mul(gb.cofactors[i][g], mono_div(lcm, lti), Rational(1)) -
               detail::term_mul(gb.cofactors[j][g], mono_div(lcm, ltj), Rational(1));
      for (size_t k = 0; k < gb.size(); ++k) {
        if (qb[k].is_zero()) continue;
        cof[g] -= qb[k] * gb.cofactors[k][g];
      }
    }
    size_t newidx = gb.size();
    append(r, cof);
    for (size_t k = 0; k < newidx; ++k) pairs.emplace_back(k, newidx);
  }
  return gb;
}

// Monomial basis of the quotient ring and its dimension.
struct MilnorData {
  std::vector<Monomial> staircase;  // degrevlex ascending
  int mu = 0;
  GroebnerBasis gb;
};

// Requires a zero-dimensional ideal: every variable must show a pure power
// among the leading terms. Throws NotIsolated otherwise.
inline MilnorData milnor_data(GroebnerBasis gb) {
  MilnorData md;
  size_t n = gb.generators[0].nvars();

  // Unit ideal: empty staircase.
  for (const auto& g : gb.basis) {
    if (g.is_constant()) {
      md.mu = 0;
      md.gb = std::move(gb);
      return md;
    }
  }

  std::vector<unsigned> bound(n, 0);
  std::vector<bool> has_pure(n, false);
  std::vector<Monomial> lts;
  for (const auto& g : gb.basis) {
    Monomial lt = g.leading_term().first;
    lts.push_back(lt);
    for (size_t i = 0; i < n; ++i) {
      bool pure = lt[i] > 0;
      for (size_t j = 0; j < n; ++j)
        if (j != i && lt[j] > 0) pure = false;
      if (pure) {
        has_pure[i] = true;
        bound[i] = bound[i] ? std::min(bound[i], lt[i]) : lt[i];
      }
    }
  }
  for (size_t i = 0; i < n; ++i)
    if (!has_pure[i])
      throw Error(ErrorCode::NotIsolated,
                  "Jacobian ideal is not zero-dimensional (no pure power in " +
                      gb.generators[0].vars()[i] + ")");

  // Enumerate exponent vectors below the pure-power bounds and keep those
  // not divisible by any leading term.
  std::vector<Monomial> stair;
  Monomial cur(n, 0);
  // odometer enumeration
  for (;;) {
    bool divisible = false;
    for (const auto& lt : lts)
      if (mono_divides(lt, cur)) { divisible = true; break; }
    if (!divisible) stair.push_back(cur);
    size_t pos = 0;
    while (pos < n) {
      if (++cur[pos] < bound[pos]) break;
      cur[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  std::sort(stair.begin(), stair.end(), DegRevLexLess{});
  md.staircase = std::move(stair);
  md.mu = static_cast<int>(md.staircase.size());
  md.gb = std::move(gb);
  return md;
}

}  // namespace vancyc

#endif  // VANCYC_GROEBNER_HPP
