#ifndef VANCYC_LAURENT_HPP
#define VANCYC_LAURENT_HPP

#include <limits>
#include <vector>

#include "vancyc/errors.hpp"
#include "vancyc/matrix.hpp"

namespace vancyc {

// Coefficients above the validity window are unknown, not zero; operations
// intersect windows so truncation error can never be mistaken for content.
inline constexpr int kSeriesInf = std::numeric_limits<int>::max() / 4;

// Truncated Laurent series in u over K: coefficients for exponents
// lo..hi are known exactly, everything below lo is exactly zero.
template <typename K>
class LSeries {
 public:
  LSeries() : lo_(0), hi_(kSeriesInf) {}  // exact zero
  LSeries(int lo, int hi, std::vector<K> coeffs) : lo_(lo), hi_(hi), c_(std::move(coeffs)) {
    if (hi_ >= kSeriesInf) hi_ = kSeriesInf;
    if (!c_.empty() && hi_ != kSeriesInf && static_cast<int>(c_.size()) > hi_ - lo_ + 1)
      throw Error(ErrorCode::Internal, "series coefficient overflow");
    normalize();
  }
  static LSeries constant(const K& a) {
    if (a == K(0)) return LSeries();
    return LSeries(0, kSeriesInf, {a});
  }
  static LSeries monomial(const K& a, int e) {
    if (a == K(0)) return LSeries();
    return LSeries(e, kSeriesInf, {a});
  }

  bool known_zero() const { return c_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  // Valuation of the known part; kSeriesInf when zero within the window.
  int valuation() const { return c_.empty() ? kSeriesInf : lo_; }

  K coeff(int e) const {
    if (e > hi_) throw Error(ErrorCode::PrecisionExhausted, "series coefficient beyond window");
    if (e < lo_ || e >= lo_ + static_cast<int>(c_.size())) return K(0);
    return c_[e - lo_];
  }

  LSeries truncated(int new_hi) const {
    if (new_hi >= hi_) return *this;
    std::vector<K> c;
    for (int e = lo_; e <= new_hi && e < lo_ + static_cast<int>(c_.size()); ++e)
      c.push_back(c_[e - lo_]);
    return LSeries(lo_, new_hi, std::move(c));
  }

  LSeries operator-() const {
    std::vector<K> c(c_);
    for (auto& a : c) a = -a;
    return LSeries(lo_, hi_, std::move(c));
  }

  LSeries operator+(const LSeries& o) const {
    if (known_zero()) return o.truncated(std::min(hi_, o.hi_ == kSeriesInf ? o.hi_ : o.hi_));
    if (o.known_zero()) return truncated(std::min(hi_, o.hi_));
    int lo = std::min(lo_, o.lo_);
    int hi = std::min(hi_, o.hi_);
    if (hi < lo) throw Error(ErrorCode::PrecisionExhausted, "series window collapsed");
    std::vector<K> c(static_cast<size_t>(hi - lo + 1), K(0));
    auto acc = [&](const LSeries& s) {
      for (int e = s.lo_; e <= hi && e < s.lo_ + static_cast<int>(s.c_.size()); ++e)
        c[e - lo] += s.c_[e - s.lo_];
    };
    acc(*this);
    acc(o);
    return LSeries(lo, hi, std::move(c));
  }
  LSeries operator-(const LSeries& o) const { return *this + (-o); }

  LSeries scaled(const K& a) const {
    if (a == K(0)) return LSeries(0, hi_, {});
    std::vector<K> c(c_);
    for (auto& x : c) x = x * a;
    return LSeries(lo_, hi_, std::move(c));
  }

  LSeries shifted(int k) const {  // multiply by u^k
    return LSeries(lo_ + k, hi_ == kSeriesInf ? kSeriesInf : hi_ + k, c_);
  }

  LSeries operator*(const LSeries& o) const {
    if (known_zero() || o.known_zero()) {
      int hi = kSeriesInf;
      if (known_zero() && !o.known_zero() && hi_ != kSeriesInf) hi = hi_ + o.valuation();
      if (o.known_zero() && !known_zero() && o.hi_ != kSeriesInf) hi = o.hi_ + valuation();
      if (known_zero() && o.known_zero()) hi = kSeriesInf;
      return LSeries(0, hi, {});
    }
    int lo = lo_ + o.lo_;
    long h1 = (hi_ == kSeriesInf) ? kSeriesInf : static_cast<long>(hi_) + o.lo_;
    long h2 = (o.hi_ == kSeriesInf) ? kSeriesInf : static_cast<long>(o.hi_) + lo_;
    int hi = static_cast<int>(std::min({h1, h2, static_cast<long>(kSeriesInf)}));
    std::vector<K> c(static_cast<size_t>(std::min(hi - lo, static_cast<int>(c_.size() + o.c_.size()))) + 1, K(0));
    if (hi - lo + 1 < static_cast<int>(c.size())) c.resize(hi - lo + 1, K(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) {
        int e = static_cast<int>(i + j);
        if (e < static_cast<int>(c.size())) c[e] += c_[i] * o.c_[j];
      }
    return LSeries(lo, hi, std::move(c));
  }

  LSeries derivative() const {
    std::vector<K> c;
    for (size_t i = 0; i < c_.size(); ++i) {
      long e = static_cast<long>(lo_) + static_cast<long>(i);
      c.push_back(c_[i] * K(e));
    }
    return LSeries(lo_ - 1, hi_ == kSeriesInf ? kSeriesInf : hi_ - 1, std::move(c));
  }

  // Series quotient this / d, valid when val(this) >= val(d); the caller
  // checks valuations for lattice membership semantics.
  LSeries divided_by(const LSeries& d) const {
    if (d.known_zero()) throw Error(ErrorCode::Internal, "series division by zero");
    if (known_zero()) {
      int hi = hi_ == kSeriesInf ? kSeriesInf : hi_ - d.valuation();
      return LSeries(0, hi, {});
    }
    int vd = d.valuation();
    if (d.c_.size() == 1) {  // monomial divisor: exact shift and scale
      return scaled(K(1) / d.c_[0]).shifted(-vd).truncated(
          d.hi_ == kSeriesInf ? hi_ - vd
                              : std::min(hi_ - vd, d.hi_ - vd + (lo_ - vd)));
    }
    int lo = lo_ - vd;
    long h1 = hi_ == kSeriesInf ? kSeriesInf : static_cast<long>(hi_) - vd;
    long h2 = d.hi_ == kSeriesInf ? kSeriesInf : static_cast<long>(d.hi_) - vd + lo;
    int hi = static_cast<int>(std::min({h1, h2, static_cast<long>(kSeriesInf)}));
    if (hi < lo) throw Error(ErrorCode::PrecisionExhausted, "series window collapsed in division");
    int len = hi - lo + 1;
    if (len > 400) len = 400;
    std::vector<K> q(static_cast<size_t>(len), K(0));
    K lead_inv = K(1) / d.coeff(vd);
    for (int k = 0; k < len; ++k) {
      K num = coeff(lo_ + k);
      for (int j = 0; j < k; ++j) {
        K dk = d.coeff(vd + k - j);
        if (!(dk == K(0))) num -= q[j] * dk;
      }
      q[static_cast<size_t>(k)] = num * lead_inv;
    }
    return LSeries(lo, lo + len - 1, std::move(q));
  }

  // Part with exponents >= e, divided by u^e (integral "floor" for HNF
  // reduction).
  LSeries floor_from(int e) const {
    std::vector<K> c;
    for (int k = std::max(e, lo_); k < lo_ + static_cast<int>(c_.size()); ++k)
      c.push_back(c_[k - lo_]);
    int hi = hi_ == kSeriesInf ? kSeriesInf : hi_ - e;
    return LSeries(std::max(e, lo_) - e, hi, std::move(c));
  }

  bool operator==(const LSeries& o) const {
    int hi = std::min(hi_, o.hi_);
    int lo = std::min(lo_, o.lo_);
    for (int e = lo; e <= hi; ++e) {
      bool b1 = e < lo_ + static_cast<int>(c_.size());
      bool b2 = e < o.lo_ + static_cast<int>(o.c_.size());
      if (!b1 && !b2) break;
      if (!(coeff(e) == o.coeff(e))) return false;
    }
    return true;
  }

 private:
  void normalize() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == K(0)) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      lo_ += static_cast<int>(lead);
    }
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    if (c_.empty()) lo_ = 0;
  }

  int lo_, hi_;
  std::vector<K> c_;
};

// Column vector of truncated Laurent series.
template <typename K>
using LColumn = std::vector<LSeries<K>>;

template <typename K>
LColumn<K> lcol_add(const LColumn<K>& a, const LColumn<K>& b) {
  LColumn<K> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <typename K>
LColumn<K> lcol_scale(const LColumn<K>& a, const LSeries<K>& q) {
  LColumn<K> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * q;
  return r;
}

template <typename K>
int lcol_valuation(const LColumn<K>& a) {
  int v = kSeriesInf;
  for (const auto& s : a) v = std::min(v, s.valuation());
  return v;
}

// t-action on a column: A(u) v + u^2 dv/du, A given by matrices A_0..A_N.
template <typename K>
LColumn<K> lcol_apply_t(const std::vector<Matrix<K>>& a, const LColumn<K>& v) {
  int m = static_cast<int>(v.size());
  int n = static_cast<int>(a.size()) - 1;
  LColumn<K> out(v.size());
  for (int r = 0; r < m; ++r) {
    LSeries<K> acc;
    for (int c = 0; c < m; ++c) {
      // entry A_{rc}(u) as a series with window [0, N]
      std::vector<K> ent;
      ent.reserve(a.size());
      for (int i = 0; i <= n; ++i) ent.push_back(a[static_cast<size_t>(i)].at(r, c));
      LSeries<K> arc(0, n, std::move(ent));
      acc = acc + arc * v[static_cast<size_t>(c)];
    }
    out[static_cast<size_t>(r)] = acc + v[static_cast<size_t>(r)].derivative().shifted(2);
  }
  return out;
}

// Lattice over K[[u]] spanned by columns, kept in lower-triangular Hermite
// form: column r has its pivot at row r with value u^{d_r} (monic), zeros
// above, and entries in rows > r reduced below degree d_row.
template <typename K>
class ULattice {
 public:
  explicit ULattice(std::vector<LColumn<K>> gens) {
    if (gens.empty()) throw Error(ErrorCode::Internal, "empty lattice generators");
    m_ = static_cast<int>(gens[0].size());
    reduce(std::move(gens));
  }

  int dim() const { return m_; }
  const LColumn<K>& column(int r) const { return cols_[static_cast<size_t>(r)]; }
  int pivot_exponent(int r) const { return cols_[static_cast<size_t>(r)][static_cast<size_t>(r)].valuation(); }

  // Membership of v (as a K[[u]]-combination of the basis) and, when asked,
  // the coordinates. Forward substitution down the triangle.
  bool contains(const LColumn<K>& v, LColumn<K>* coords = nullptr) const {
    LColumn<K> rest = v;
    LColumn<K> x(static_cast<size_t>(m_));
    for (int r = 0; r < m_; ++r) {
      const LSeries<K>& num = rest[static_cast<size_t>(r)];
      const LSeries<K>& piv = cols_[static_cast<size_t>(r)][static_cast<size_t>(r)];
      if (num.valuation() < piv.valuation()) return false;
      LSeries<K> q = num.divided_by(piv);
      x[static_cast<size_t>(r)] = q;
      rest = lcol_add(rest, lcol_scale(cols_[static_cast<size_t>(r)], -q));
    }
    for (int r = 0; r < m_; ++r)
      if (rest[static_cast<size_t>(r)].valuation() < kSeriesInf &&
          !rest[static_cast<size_t>(r)].known_zero())
        return false;
    if (coords) *coords = x;
    return true;
  }

 private:
  void reduce(std::vector<LColumn<K>> gens) {
    cols_.assign(static_cast<size_t>(m_), LColumn<K>());
    std::vector<LColumn<K>> active = std::move(gens);
    for (int r = 0; r < m_; ++r) {
      // pivot: minimal valuation at row r, first index on ties
      int best = -1, bestval = kSeriesInf;
      for (size_t j = 0; j < active.size(); ++j) {
        int v = active[j][static_cast<size_t>(r)].valuation();
        if (v < bestval) { bestval = v; best = static_cast<int>(j); }
      }
      if (best < 0 || bestval == kSeriesInf)
        throw Error(ErrorCode::Internal, "lattice generators are rank deficient");
      LColumn<K> piv = std::move(active[static_cast<size_t>(best)]);
      active.erase(active.begin() + best);
      for (auto& col : active) {
        const LSeries<K>& e = col[static_cast<size_t>(r)];
        if (e.known_zero() || e.valuation() == kSeriesInf) continue;
        LSeries<K> q = e.divided_by(piv[static_cast<size_t>(r)]);
        col = lcol_add(col, lcol_scale(piv, -q));
        col[static_cast<size_t>(r)] = LSeries<K>();  // exact cancellation
      }
      cols_[static_cast<size_t>(r)] = std::move(piv);
    }
    // normalize pivots to monic u^{d_r} and clear above-pivot entries
    for (int r = 0; r < m_; ++r) {
      int dr = cols_[static_cast<size_t>(r)][static_cast<size_t>(r)].valuation();
      LSeries<K> unit =
          cols_[static_cast<size_t>(r)][static_cast<size_t>(r)].floor_from(dr);  // val 0
      LSeries<K> unit_inv = LSeries<K>::constant(K(1)).divided_by(unit);
      cols_[static_cast<size_t>(r)] = lcol_scale(cols_[static_cast<size_t>(r)], unit_inv);
      cols_[static_cast<size_t>(r)][static_cast<size_t>(r)] = LSeries<K>::monomial(K(1), dr);
      for (int rr = 0; rr < r; ++rr)
        cols_[static_cast<size_t>(r)][static_cast<size_t>(rr)] = LSeries<K>();
    }
    // reduce sub-diagonal entries modulo the corresponding pivot power
    for (int r = 0; r < m_; ++r) {
      for (int j = 0; j < r; ++j) {
        LSeries<K>& e = cols_[static_cast<size_t>(j)][static_cast<size_t>(r)];
        int dr = pivot_exponent(r);
        if (e.known_zero() || e.valuation() >= kSeriesInf) continue;
        LSeries<K> q = e.floor_from(dr);
        if (q.known_zero()) continue;
        cols_[static_cast<size_t>(j)] =
            lcol_add(cols_[static_cast<size_t>(j)], lcol_scale(cols_[static_cast<size_t>(r)], -q));
      }
    }
  }

  int m_;
  std::vector<LColumn<K>> cols_;
};

}  // namespace vancyc

#endif  // VANCYC_LAURENT_HPP
