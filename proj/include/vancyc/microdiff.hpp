#ifndef VANCYC_MICRODIFF_HPP
#define VANCYC_MICRODIFF_HPP

#include <map>
#include <utility>
#include <vector>

#include "vancyc/brieskorn.hpp"
#include "vancyc/eigen.hpp"
#include "vancyc/laurent.hpp"

namespace vancyc {

// --- truncated matrix series in u: value is sum a[i] u^i, i = 0..N ---

template <typename K>
std::vector<Matrix<K>> smat_mul(const std::vector<Matrix<K>>& a, const std::vector<Matrix<K>>& b) {
  size_t n = std::min(a.size(), b.size());
  int m = a[0].rows();
  std::vector<Matrix<K>> c(n, Matrix<K>(m, m));
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i <= k; ++i) c[k] = c[k] + a[i] * b[k - i];
  return c;
}

template <typename K>
std::vector<Matrix<K>> smat_inverse(const std::vector<Matrix<K>>& p) {
  int m = p[0].rows();
  std::vector<Matrix<K>> q(p.size(), Matrix<K>(m, m));
  q[0] = p[0].inverse();
  for (size_t k = 1; k < p.size(); ++k) {
    Matrix<K> acc(m, m);
    for (size_t i = 1; i <= k; ++i) acc = acc + p[i] * q[k - i];
    q[k] = (q[0] * acc).scaled(K(-1));
  }
  return q;
}

// Base change v = P(u) w of the operator A(u) + u^2 d/du:
//   A  |->  P^{-1} (A P + u^2 P')
// The u^2 P' term is what distinguishes this from conjugation of a plain
// matrix; dropping it gives wrong residues for every non-constant gauge.
template <typename K>
std::vector<Matrix<K>> gauge_transform(const std::vector<Matrix<K>>& a,
                                       const std::vector<Matrix<K>>& p) {
  std::vector<Matrix<K>> s = smat_mul(a, p);
  for (size_t k = 2; k < s.size() && k - 1 < p.size(); ++k)
    s[k] = s[k] + p[k - 1].scaled(K(static_cast<long>(k) - 1));
  return smat_mul(smat_inverse(p), s);
}

// --- decoupling into generalized eigenblocks of A_0 ---

template <typename K>
struct DecoupledBlock {
  K critical_value;     // eigenvalue of A_0 the block belongs to
  MicroModule<K> module;  // t-connection restricted to the block
};

template <typename K>
struct Decoupling {
  std::vector<DecoupledBlock<K>> blocks;
  std::vector<Matrix<K>> gauge;  // accumulated P(u): input basis -> block basis
};

// Split the connection A(u) + u^2 d/du into one block per eigenvalue of A_0
// by a constant base change to generalized eigenbases followed by
// order-by-order Sylvester gauges I + X u^i killing the cross terms.
template <typename K>
Decoupling<K> decouple(const MicroModule<K>& mm) {
  Decoupling<K> out;
  if (mm.dim == 0) return out;
  int n = mm.dim;
  int ord_max = static_cast<int>(mm.a.size()) - 1;
  if (ord_max + 1 < n + 2)
    throw Error(ErrorCode::PrecisionExhausted, "too few orders to decouple");

  SpectralSplit<K> split = split_spectrum(mm.a[0]);
  Matrix<K> p0(n, 0);
  std::vector<int> offset, size;
  for (const auto& e : split) {
    offset.push_back(p0.cols());
    size.push_back(e.multiplicity);
    p0 = Matrix<K>::hcat(p0, e.basis);
  }
  Matrix<K> p0inv = p0.inverse();
  std::vector<Matrix<K>> a = mm.a;
  for (auto& ai : a) ai = p0inv * ai * p0;

  out.gauge.assign(mm.a.size(), Matrix<K>(n, n));
  out.gauge[0] = p0;

  size_t nb = split.size();
  std::vector<Matrix<K>> a0b;
  for (size_t b = 0; b < nb; ++b)
    a0b.push_back(a[0].submatrix(offset[b], offset[b], size[b], size[b]));

  for (int ord = 1; ord <= ord_max; ++ord) {
    Matrix<K> x(n, n);
    bool nontrivial = false;
    for (size_t b1 = 0; b1 < nb; ++b1)
      for (size_t b2 = 0; b2 < nb; ++b2) {
        if (b1 == b2) continue;
        Matrix<K> c = a[ord].submatrix(offset[b1], offset[b2], size[b1], size[b2]);
        if (c.is_zero()) continue;
        Matrix<K> y = solve_sylvester(a0b[b1], a0b[b2], c.scaled(K(-1)));
        for (int i = 0; i < size[b1]; ++i)
          for (int j = 0; j < size[b2]; ++j) x.at(offset[b1] + i, offset[b2] + j) = y.at(i, j);
        nontrivial = true;
      }
    if (!nontrivial) continue;
    std::vector<Matrix<K>> pstep(a.size(), Matrix<K>(n, n));
    pstep[0] = Matrix<K>::identity(n);
    pstep[static_cast<size_t>(ord)] = x;
    a = gauge_transform(a, pstep);
    out.gauge = smat_mul(out.gauge, pstep);
  }

  for (int ord = 0; ord <= ord_max; ++ord)
    for (size_t b1 = 0; b1 < nb; ++b1)
      for (size_t b2 = 0; b2 < nb; ++b2)
        if (b1 != b2 &&
            !a[ord].submatrix(offset[b1], offset[b2], size[b1], size[b2]).is_zero())
          throw Error(ErrorCode::Internal, "decoupling left a cross term");

  for (size_t b = 0; b < nb; ++b) {
    DecoupledBlock<K> blk;
    blk.critical_value = split[b].eigenvalue;
    blk.module.dim = size[b];
    blk.module.precision = mm.precision;
    for (int ord = 0; ord <= ord_max; ++ord)
      blk.module.a.push_back(a[ord].submatrix(offset[b], offset[b], size[b], size[b]));
    for (int i = 0; i < size[b]; ++i)
      blk.module.basis.push_back("e" + std::to_string(offset[b] + i));
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

// --- saturation of the lattice under theta = u^{-1}(t - c) ---

template <typename K>
struct Regularized {
  Matrix<K> residue;  // order-1 matrix of t - c in the saturated basis
  int steps = 0;      // saturation iterations used
};

// Saturate the standard lattice under theta = u^{-1}(t - c) until stable,
// then read off the residue. The order-0 part of t - c must vanish in the
// saturated basis; a nonzero value means the block was not an eigenblock.
template <typename K>
Regularized<K> regularize(const MicroModule<K>& block, const K& c, int nvars) {
  int d = block.dim;
  if (d == 0) return {Matrix<K>(0, 0), 0};
  std::vector<Matrix<K>> a = block.a;
  a[0] = a[0] - Matrix<K>::identity(d).scaled(c);

  auto theta = [&](const LColumn<K>& v) {
    LColumn<K> tv = lcol_apply_t(a, v);
    for (auto& s : tv) s = s.shifted(-1);
    return tv;
  };

  std::vector<LColumn<K>> gens;
  for (int j = 0; j < d; ++j) {
    LColumn<K> col(static_cast<size_t>(d));
    col[static_cast<size_t>(j)] = LSeries<K>::monomial(K(1), 0);
    gens.push_back(std::move(col));
  }
  ULattice<K> lat(gens);

  int cap = d + nvars + 2;
  int steps = 0;
  for (;; ++steps) {
    std::vector<LColumn<K>> th;
    bool stable = true;
    for (int j = 0; j < d; ++j) {
      th.push_back(theta(lat.column(j)));
      if (!lat.contains(th.back())) stable = false;
    }
    if (stable) break;
    if (steps >= cap)
      throw Error(ErrorCode::NoStabilization, "lattice saturation did not stabilize");
    std::vector<LColumn<K>> next;
    for (int j = 0; j < d; ++j) next.push_back(lat.column(j));
    for (auto& v : th) next.push_back(std::move(v));
    lat = ULattice<K>(std::move(next));
  }

  Matrix<K> r(d, d);
  for (int j = 0; j < d; ++j) {
    LColumn<K> coords;
    if (!lat.contains(lcol_apply_t(a, lat.column(j)), &coords))
      throw Error(ErrorCode::Internal, "t image left the saturated lattice");
    for (int i = 0; i < d; ++i) {
      if (!(coords[static_cast<size_t>(i)].coeff(0) == K(0)))
        throw Error(ErrorCode::Internal, "order-0 part of t - c did not vanish");
      r.at(i, j) = coords[static_cast<size_t>(i)].coeff(1);
    }
  }
  return {r, steps};
}

// --- integer shearing to a non-resonant residue ---

inline Rational exponent_value(const Rational& x) { return x; }
inline Rational exponent_value(const ExtScalar& x) { return x.to_rational(); }

template <typename K>
struct Desresonated {
  Matrix<K> matrix;  // sheared residue, block diagonal over its eigenvalues
  long shift = 0;    // total integer exponent shift (counted with multiplicity)
};

// Block-diagonalize the residue over its eigenvalues, then shear resonance
// away: two eigenvalue blocks in the same class mod Z are merged (the larger
// exponent shifted down by the integer gap) only when their generalized
// eigenspaces share coordinates of the incoming basis.  Blocks supported on
// disjoint coordinate sets split the matrix into genuinely independent
// summands, so their exponents stay apart even when they differ by an
// integer; the monodromy class is unchanged either way.
template <typename K>
Desresonated<K> desresonate(const Matrix<K>& res) {
  int n = res.rows();
  Desresonated<K> out{Matrix<K>(n, n), 0};
  if (n == 0) return out;
  SpectralSplit<K> split;
  try {
    split = split_spectrum(res);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IrreducibleFactor)
      throw Error(ErrorCode::NonrationalExponent, "residue eigenvalue is not rational");
    throw;
  }
  size_t ne = split.size();
  std::vector<Rational> beta;
  for (const auto& e : split) beta.push_back(exponent_value(e.eigenvalue));

  Matrix<K> p(n, 0);
  std::vector<int> offset, size;
  std::vector<std::vector<bool>> support(ne, std::vector<bool>(static_cast<size_t>(n), false));
  for (size_t e = 0; e < ne; ++e) {
    offset.push_back(p.cols());
    size.push_back(split[e].multiplicity);
    p = Matrix<K>::hcat(p, split[e].basis);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < split[e].basis.cols(); ++j)
        if (!(split[e].basis.at(i, j) == K(0))) support[e][static_cast<size_t>(i)] = true;
  }
  Matrix<K> m = p.inverse() * res * p;

  // union-find over eigenvalue blocks linked by shared coordinate support
  std::vector<size_t> parent(ne);
  for (size_t e = 0; e < ne; ++e) parent[e] = e;
  auto root = [&](size_t e) {
    while (parent[e] != e) e = parent[e] = parent[parent[e]];
    return e;
  };
  for (size_t a = 0; a < ne; ++a)
    for (size_t b = a + 1; b < ne; ++b) {
      if (beta[a].mod1() != beta[b].mod1()) continue;
      bool overlap = false;
      for (int i = 0; i < n; ++i)
        overlap = overlap || (support[a][static_cast<size_t>(i)] &&
                              support[b][static_cast<size_t>(i)]);
      if (overlap) parent[root(a)] = root(b);
    }

  std::map<size_t, Rational> target;  // component root -> minimal exponent present
  for (size_t e = 0; e < ne; ++e) {
    auto [it, fresh] = target.emplace(root(e), beta[e]);
    if (!fresh && beta[e] < it->second) it->second = beta[e];
  }
  for (size_t e = 0; e < ne; ++e) {
    Rational k = target.at(root(e)) - beta[e];
    out.shift += k.to_long() * size[e];
    for (int i = 0; i < size[e]; ++i)
      for (int j = 0; j < size[e]; ++j)
        out.matrix.at(offset[e] + i, offset[e] + j) =
            m.at(offset[e] + i, offset[e] + j) + (i == j ? K(k) : K(0));
  }
  return out;
}

// --- monodromy data of one block ---

struct MonodromyPart {
  Rational exponent;             // eigenvalue of the sheared residue
  std::vector<int> block_sizes;  // Jordan block sizes, descending
};

struct MonodromySummary {
  std::vector<MonodromyPart> parts;  // sorted by exponent
  long shift = 0;
};

template <typename K>
MonodromySummary monodromy_summary(const Matrix<K>& residue) {
  Desresonated<K> d = desresonate(residue);
  MonodromySummary out;
  out.shift = d.shift;
  for (const auto& je : jordan_data(d.matrix))
    out.parts.push_back({exponent_value(je.eigenvalue), je.block_sizes});
  std::sort(out.parts.begin(), out.parts.end(),
            [](const MonodromyPart& a, const MonodromyPart& b) { return a.exponent < b.exponent; });
  return out;
}

}  // namespace vancyc

#endif  // VANCYC_MICRODIFF_HPP
