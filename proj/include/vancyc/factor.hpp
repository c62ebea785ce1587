#ifndef VANCYC_FACTOR_HPP
#define VANCYC_FACTOR_HPP

#include <algorithm>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "vancyc/rational.hpp"
#include "vancyc/upoly.hpp"

namespace vancyc {

using QPoly = UPoly<Rational>;

namespace detail {

// Pollard-Brent rho with small trial division first. Inputs here are
// coefficient-sized, so this is comfortably within desk scale.
inline void factor_integer_rec(mpz_class n, std::map<mpz_class, int>& out) {
  if (n <= 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out[n]++;
    return;
  }
  for (long p = 2; p < 10000; ++p) {
    if (n % p == 0) {
      out[mpz_class(p)]++;
      factor_integer_rec(n / p, out);
      return;
    }
    if (mpz_class(p) * p > n) break;
  }
  // Brent's cycle variant.
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(12345);
  while (true) {
    mpz_class y = rng.get_z_range(n - 2) + 1, c = rng.get_z_range(n - 2) + 1;
    mpz_class x = y, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      mpz_class diff = x > y ? x - y : y - x;
      if (diff == 0) { d = n; break; }
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) {
      factor_integer_rec(d, out);
      factor_integer_rec(n / d, out);
      return;
    }
  }
}

inline std::map<mpz_class, int> factor_integer(const mpz_class& n) {
  std::map<mpz_class, int> out;
  factor_integer_rec(::abs(n), out);
  return out;
}

// All positive divisors, capped; throws if the divisor lattice is too big.
inline std::vector<mpz_class> positive_divisors(const mpz_class& n, size_t cap = 100000) {
  auto primes = factor_integer(n);
  std::vector<mpz_class> divs{1};
  for (auto& [p, e] : primes) {
    size_t base = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) {
        divs.push_back(divs[i] * pk);
        if (divs.size() > cap)
          throw Error(ErrorCode::Internal, "divisor enumeration exceeded cap");
      }
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Clear denominators and content: returns primitive integer coefficients
// (low first) with positive leading coefficient, plus the rational unit.
inline std::vector<mpz_class> primitive_integer_coeffs(const QPoly& p) {
  mpz_class den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.raw().get_den().get_mpz_t());
  std::vector<mpz_class> z;
  z.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    mpq_class q = c.raw() * den;
    z.push_back(q.get_num());
  }
  mpz_class content = 0;
  for (const auto& a : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), a.get_mpz_t());
  if (content > 1)
    for (auto& a : z) a /= content;
  if (!z.empty() && z.back() < 0)
    for (auto& a : z) a = -a;
  return z;
}

inline QPoly from_integer_coeffs(const std::vector<mpz_class>& z) {
  std::vector<Rational> c;
  c.reserve(z.size());
  for (const auto& a : z) c.push_back(Rational(mpq_class(a)));
  return QPoly(std::move(c));
}

// Strip all rational roots of a polynomial; appends the roots found and
// returns the deflated polynomial.  Roots are located p-adically: every
// rational root of the primitive integer model survives reduction modulo a
// prime not dividing the leading coefficient, so each residue root is
// Hensel-lifted and rationally reconstructed, then verified by exact
// evaluation.  This stays polynomial-time where divisor enumeration of the
// (often extremely smooth) end coefficients explodes.
inline QPoly strip_rational_roots(QPoly p, std::vector<Rational>& roots) {
  // x | p
  while (!p.is_zero() && p.coeff(0).is_zero() && p.degree() > 0) {
    roots.push_back(Rational(0));
    std::vector<Rational> c(p.coeffs().begin() + 1, p.coeffs().end());
    p = QPoly(std::move(c));
  }
  if (p.degree() < 1) return p;

  // work on the squarefree part so reduction mod a good prime stays squarefree
  QPoly w = p / poly_gcd(p, p.derivative());
  auto z = primitive_integer_coeffs(w);
  int n = static_cast<int>(z.size()) - 1;
  mpz_class an = ::abs(z.back());

  // Cauchy bound on |root| and the denominator bound den | an
  mpz_class height = 0;
  for (const auto& c : z)
    if (::abs(c) > height) height = ::abs(c);
  mpz_class num_bound = (height / an + 2) * an;  // ceil(1 + height/|an|) * |an|
  mpz_class target = 2 * num_bound * an + 1;    // modulus needed for reconstruction

  static const long kPrimes[] = {10007, 10009, 10037, 10039, 10061, 10067,
                                 10069, 10079, 10091, 10093, 10099, 10103};
  long p0 = 0;
  std::vector<unsigned long> w_mod, wd_mod;
  for (long cand : kPrimes) {
    mpz_class m(cand);
    if (z.back() % m == 0) continue;
    // squarefree mod cand <=> gcd(w, w') mod cand is constant; test by
    // checking that no residue is a common root (degree is small)
    w_mod.clear();
    for (const auto& c : z) {
      mpz_class r = c % m;
      if (r < 0) r += m;
      w_mod.push_back(r.get_ui());
    }
    wd_mod.clear();
    for (int i = 1; i <= n; ++i)
      wd_mod.push_back(static_cast<unsigned long>(
          (static_cast<unsigned long long>(w_mod[static_cast<size_t>(i)]) *
           static_cast<unsigned long>(i)) % static_cast<unsigned long>(cand)));
    auto eval_mod = [&](const std::vector<unsigned long>& cs, unsigned long x) {
      unsigned long long acc = 0;
      for (size_t i = cs.size(); i-- > 0;)
        acc = (acc * x + cs[i]) % static_cast<unsigned long long>(cand);
      return static_cast<unsigned long>(acc);
    };
    bool squarefree_mod = true;
    std::vector<unsigned long> residue_roots;
    for (unsigned long x = 0; x < static_cast<unsigned long>(cand); ++x) {
      if (eval_mod(w_mod, x) != 0) continue;
      if (eval_mod(wd_mod, x) == 0) {
        squarefree_mod = false;
        break;
      }
      residue_roots.push_back(x);
    }
    if (!squarefree_mod) continue;
    p0 = cand;

    QPoly wz = from_integer_coeffs(z);
    QPoly wzd = wz.derivative();
    for (unsigned long x : residue_roots) {
      // Newton lift x to a root mod p0^(2^k) >= target
      mpz_class modulus(p0), r(static_cast<unsigned long>(x));
      while (modulus < target) {
        modulus *= modulus;
        mpz_class fr = wz.evaluate(Rational(mpq_class(r))).raw().get_num() % modulus;
        mpz_class dfr = wzd.evaluate(Rational(mpq_class(r))).raw().get_num() % modulus;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), modulus.get_mpz_t()) == 0)
          throw Error(ErrorCode::Internal, "derivative not invertible during lifting");
        r = (r - fr * inv) % modulus;
        if (r < 0) r += modulus;
      }
      // rational reconstruction: shortest vector with |num| <= num_bound
      mpz_class r0 = modulus, r1 = r, t0 = 0, t1 = 1;
      while (r1 > num_bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1; r1 = r2; t0 = t1; t1 = t2;
      }
      if (t1 == 0 || ::abs(t1) > an) continue;
      mpq_class rq(r1, t1);
      rq.canonicalize();
      Rational root(rq);
      if (!p.evaluate(root).is_zero()) continue;
      QPoly lin(std::vector<Rational>{-root, Rational(1)});
      while (p.degree() >= 1 && p.evaluate(root).is_zero()) {
        roots.push_back(root);
        p = p / lin;
      }
    }
    break;
  }
  if (p0 == 0) throw Error(ErrorCode::Internal, "no usable prime for root extraction");
  return p;
}

// Kronecker search: find a nontrivial factor of a primitive squarefree
// integer polynomial with no rational roots, or return zero poly if
// irreducible. Exhaustive over candidate factor degrees 2..deg/2.
inline QPoly kronecker_find_factor(const QPoly& p) {
  int d = p.degree();
  for (int k = 2; k <= d / 2; ++k) {
    // Evaluation points 0, 1, -1, 2, -2, ...
    std::vector<Rational> xs;
    for (long t = 0; static_cast<int>(xs.size()) < k + 1; ++t) {
      if (t == 0) xs.push_back(Rational(0));
      else { xs.push_back(Rational(t)); if (static_cast<int>(xs.size()) < k + 1) xs.push_back(Rational(-t)); }
    }
    std::vector<std::vector<mpz_class>> divchoices(k + 1);
    bool feasible = true;
    for (int i = 0; i <= k; ++i) {
      Rational v = p.evaluate(xs[i]);
      if (v.is_zero()) { feasible = false; break; }  // rational root; handled upstream
      auto ds = positive_divisors(v.raw().get_num());
      for (const auto& a : ds) divchoices[i].push_back(a);
      size_t m = divchoices[i].size();
      for (size_t j = 0; j < m; ++j) divchoices[i].push_back(-divchoices[i][j]);
    }
    if (!feasible) continue;
    // Lagrange basis over the chosen points.
    std::vector<QPoly> lagrange(k + 1);
    for (int i = 0; i <= k; ++i) {
      QPoly li = QPoly::constant(Rational(1));
      for (int j = 0; j <= k; ++j) {
        if (j == i) continue;
        QPoly num(std::vector<Rational>{-xs[j], Rational(1)});
        li = li * num.scaled((xs[i] - xs[j]).inverse());
      }
      lagrange[i] = li;
    }
    // Fix the sign of the value at the first point (g and -g are equivalent).
    size_t half0 = divchoices[0].size() / 2;
    std::vector<size_t> idx(k + 1, 0);
    size_t budget = 4000000;
    while (true) {
      if (budget-- == 0)
        throw Error(ErrorCode::Internal, "Kronecker factor search exceeded budget");
      QPoly g;
      for (int i = 0; i <= k; ++i)
        g = g + lagrange[i].scaled(Rational(mpq_class(divchoices[i][idx[i]])));
      if (g.degree() == k) {
        auto [q, r] = p.divrem(g);
        if (r.is_zero()) return g;
      }
      // next tuple
      int pos = k;
      while (pos >= 0) {
        size_t limit = (pos == 0) ? half0 : divchoices[pos].size();
        if (++idx[pos] < limit) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return QPoly();
}

inline void factor_squarefree_rec(const QPoly& p, std::vector<QPoly>& out) {
  if (p.degree() < 1) return;
  if (p.degree() == 1) { out.push_back(p.monic()); return; }
  std::vector<Rational> roots;
  QPoly rest = strip_rational_roots(p, roots);
  for (const auto& r : roots)
    out.push_back(QPoly(std::vector<Rational>{-r, Rational(1)}));
  if (rest.degree() < 1) return;
  if (rest.degree() == 1) { out.push_back(rest.monic()); return; }
  QPoly g = kronecker_find_factor(rest);
  if (g.is_zero()) {
    out.push_back(rest.monic());
    return;
  }
  factor_squarefree_rec(g, out);
  factor_squarefree_rec(rest / g, out);
}

}  // namespace detail

// Yun squarefree decomposition of a monic polynomial: returns list of
// (squarefree part, multiplicity), multiplicities strictly increasing.
inline std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p0) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly p = p0.monic();
  if (p.degree() < 1) return out;
  QPoly d = p.derivative();
  QPoly a = poly_gcd(p, d);
  QPoly b = p / a;
  QPoly c = d / a;
  int i = 1;
  while (b.degree() >= 1) {
    QPoly z = c - b.derivative();
    QPoly f = poly_gcd(b, z);
    if (f.degree() >= 1) out.emplace_back(f.monic(), i);
    b = b / f;
    c = z / f;
    ++i;
  }
  return out;
}

// Full factorization into monic irreducibles over Q with multiplicities.
inline std::vector<std::pair<QPoly, int>> factor_over_q(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() < 1) return out;
  for (auto& [sf, mult] : squarefree_decomposition(p)) {
    std::vector<QPoly> irr;
    detail::factor_squarefree_rec(sf, irr);
    std::sort(irr.begin(), irr.end(), [](const QPoly& a, const QPoly& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      for (int i = a.degree(); i >= 0; --i) {
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
      }
      return false;
    });
    for (auto& f : irr) out.emplace_back(std::move(f), mult);
  }
  return out;
}

inline bool is_irreducible_over_q(const QPoly& p) {
  if (p.degree() < 1) return false;
  auto fs = factor_over_q(p);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace vancyc

#endif  // VANCYC_FACTOR_HPP
