#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <set>

#include "doctest.h"
#include "vancyc/logmonomial.hpp"
#include "vancyc/matrix.hpp"

using namespace vancyc;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

NCProblem prob_xy() {
  NCProblem p;
  p.nvars = 2;
  p.j = {0, 1};
  p.jprime = {0, 1};
  p.e = {{0, 1}, {1, 1}};
  p.window = {{Rational(0), Rational(1)}};
  return p;
}

// Independent check: assemble the actual Koszul complex of the diagonal
// operators on the monomial span {nu : nu_i <= cap, i in J'} and measure
// cohomology by exact rank computation, graded by the t∂t-eigenvalue.
//
// Operators, indexed by i in J' \ {i0}:
//   i in J  \ {i0}: (nu_i + alpha_i) - (e_i/e_{i0}) (nu_{i0} + alpha_{i0})
//   i in J' \  J  :  nu_i + alpha_i
std::map<Rational, std::vector<long>> koszul_oracle(const NCProblem& prob, int i0, long cap) {
  std::vector<int> vars = prob.jprime;
  std::vector<int> ops;
  for (int i : prob.jprime)
    if (i != i0) ops.push_back(i);
  int nv = static_cast<int>(vars.size());
  int r = static_cast<int>(ops.size());

  auto res = [&](int i) {
    auto it = prob.alpha.find(i);
    return it == prob.alpha.end() ? Rational(0) : it->second;
  };
  auto in_j = [&](int i) { return prob.e.count(i) > 0; };

  // enumerate monomials and their operator eigenvalue vectors
  std::vector<std::map<int, long>> monos;
  std::vector<long> nu(static_cast<size_t>(nv), 0);
  for (;;) {
    std::map<int, long> m;
    for (int k = 0; k < nv; ++k) m[vars[static_cast<size_t>(k)]] = nu[static_cast<size_t>(k)];
    monos.push_back(m);
    int k = 0;
    while (k < nv && nu[static_cast<size_t>(k)] == cap) {
      nu[static_cast<size_t>(k)] = 0;
      ++k;
    }
    if (k == nv) break;
    ++nu[static_cast<size_t>(k)];
  }

  auto eigen_of = [&](const std::map<int, long>& m, int i) {
    if (in_j(i))
      return (Rational(m.at(i)) + res(i)) -
             Rational(prob.e.at(i)) / Rational(prob.e.at(i0)) * (Rational(m.at(i0)) + res(i0));
    return Rational(m.at(i)) + res(i);
  };
  auto lambda_of = [&](const std::map<int, long>& m) {
    return (Rational(m.at(i0)) + res(i0)) / Rational(prob.e.at(i0));
  };

  // group monomials by t∂t-eigenvalue; the complex splits accordingly
  std::map<Rational, std::vector<size_t>> groups;
  for (size_t t = 0; t < monos.size(); ++t) groups[lambda_of(monos[t])].push_back(t);

  std::vector<std::vector<int>> subsets_by_size(static_cast<size_t>(r) + 1);
  for (int mask = 0; mask < (1 << r); ++mask)
    subsets_by_size[static_cast<size_t>(__builtin_popcount(static_cast<unsigned>(mask)))]
        .push_back(mask);

  std::map<Rational, std::vector<long>> out;
  for (const auto& [lambda, members] : groups) {
    std::vector<long> dims;
    long prev_rank = 0;
    for (int p = 0; p <= r; ++p) {
      const auto& dom = subsets_by_size[static_cast<size_t>(p)];
      long ncols = static_cast<long>(members.size() * dom.size());
      long nrows = 0;
      Matrix<Rational> d(0, 0);
      if (p < r) {
        const auto& cod = subsets_by_size[static_cast<size_t>(p) + 1];
        nrows = static_cast<long>(members.size() * cod.size());
        d = Matrix<Rational>(static_cast<int>(nrows), static_cast<int>(ncols));
        for (size_t mi = 0; mi < members.size(); ++mi)
          for (size_t si = 0; si < dom.size(); ++si) {
            int mask = dom[si];
            for (int oi = 0; oi < r; ++oi) {
              if (mask & (1 << oi)) continue;
              int nm = mask | (1 << oi);
              int sign = (__builtin_popcount(static_cast<unsigned>(mask) &
                                             ((1u << oi) - 1)) & 1)
                             ? -1
                             : 1;
              size_t ci = 0;
              while (cod[ci] != nm) ++ci;
              d.at(static_cast<int>(mi * cod.size() + ci), static_cast<int>(mi * dom.size() + si)) =
                  eigen_of(monos[members[mi]], ops[static_cast<size_t>(oi)]) * Rational(sign);
            }
          }
      }
      long rk = p < r ? d.rank() : 0;
      dims.push_back(ncols - rk - prev_rank);  // dim ker - rank of previous map
      prev_rank = rk;
    }
    bool any = false;
    for (long v : dims) any = any || v != 0;
    if (any) out[lambda] = dims;
  }
  return out;
}

}  // namespace

TEST_CASE("power of one variable: cyclic eigenvalues") {
  NCProblem p;
  p.nvars = 1;
  p.j = {0};
  p.jprime = {0};
  p.e = {{0, 3}};
  p.window = {{Rational(0), Rational(1)}};
  auto s = nc_spectrum(p);
  REQUIRE(s.by_degree.size() == 1);
  REQUIRE(s.by_degree[0].size() == 3);
  for (long k = 0; k < 3; ++k) {
    CHECK(s.by_degree[0][k].first == q(k, 3));
    CHECK(s.by_degree[0][k].second == 1);
  }
}

TEST_CASE("xy: annulus cohomology") {
  auto s = nc_spectrum(prob_xy());
  REQUIRE(s.by_degree.size() == 2);
  REQUIRE(s.by_degree[0].size() == 1);
  REQUIRE(s.by_degree[1].size() == 1);
  CHECK(s.by_degree[0][0] == std::pair{Rational(0), 1});
  CHECK(s.by_degree[1][0] == std::pair{Rational(0), 1});
}

TEST_CASE("xy with an extra twist-free divisor: binomial factors") {
  NCProblem p = prob_xy();
  p.nvars = 3;
  p.jprime = {0, 1, 2};
  auto s = nc_spectrum(p);
  REQUIRE(s.by_degree.size() == 3);
  CHECK(s.by_degree[0] == std::vector{std::pair{Rational(0), 1}});
  CHECK(s.by_degree[1] == std::vector{std::pair{Rational(0), 2}});
  CHECK(s.by_degree[2] == std::vector{std::pair{Rational(0), 1}});
}

TEST_CASE("nonzero residue off J kills the stalk") {
  NCProblem p = prob_xy();
  p.nvars = 3;
  p.jprime = {0, 1, 2};
  p.alpha[2] = q(1, 2);
  auto s = nc_spectrum(p);
  for (const auto& deg : s.by_degree) CHECK(deg.empty());
  CHECK(psi_stalk_dims(p, Rational(0)) == std::vector<long>(3, 0));
}

TEST_CASE("window is half-open and positioned freely") {
  NCProblem p;
  p.nvars = 1;
  p.j = {0};
  p.jprime = {0};
  p.e = {{0, 2}};
  p.window = {{q(1, 2), q(3, 2)}};
  auto s = nc_spectrum(p);
  REQUIRE(s.by_degree[0].size() == 2);
  CHECK(s.by_degree[0][0].first == q(1, 2));
  CHECK(s.by_degree[0][1].first == Rational(1));  // 3/2 excluded
}

TEST_CASE("degree bound instead of a window") {
  NCProblem p;
  p.nvars = 1;
  p.j = {0};
  p.jprime = {0};
  p.e = {{0, 2}};
  p.degree_bound = 4;
  auto s = nc_spectrum(p);
  REQUIRE(s.by_degree[0].size() == 5);  // nu = 0..4
  CHECK(s.by_degree[0].back().first == Rational(2));
}

TEST_CASE("stalk dimensions at a fixed eigenvalue") {
  NCProblem p3;
  p3.nvars = 1;
  p3.j = {0};
  p3.jprime = {0};
  p3.e = {{0, 3}};
  p3.window = {{Rational(0), Rational(1)}};
  CHECK(psi_stalk_dims(p3, q(1, 3)) == std::vector<long>{1});

  CHECK(psi_stalk_dims(prob_xy(), q(1, 2)) == std::vector<long>{0, 0});

  NCProblem p23;
  p23.nvars = 2;
  p23.j = {0, 1};
  p23.jprime = {0, 1};
  p23.e = {{0, 2}, {1, 3}};
  p23.window = {{Rational(0), Rational(1)}};
  CHECK(psi_stalk_dims(p23, Rational(0)) == std::vector<long>{1, 1});
  CHECK(psi_stalk_dims(p23, q(1, 2)) == std::vector<long>{0, 0});  // nu_2 = 3/2
}

TEST_CASE("error reporting") {
  NCProblem p;
  p.nvars = 2;
  p.jprime = {0};
  p.window = {{Rational(0), Rational(1)}};
  CHECK_THROWS_AS(nc_spectrum(p), Error);  // EmptyJ
  try {
    nc_spectrum(p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyJ);
  }

  p.j = {0};
  p.e = {{0, 2}};
  p.window.reset();
  try {
    nc_spectrum(p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowUnbounded);
  }
}

TEST_CASE("independence of the distinguished index") {
  NCProblem p;
  p.nvars = 3;
  p.j = {0, 1, 2};
  p.jprime = {0, 1, 2};
  p.e = {{0, 2}, {1, 4}, {2, 6}};
  p.alpha = {{0, q(1, 2)}, {1, Rational(0)}, {2, q(1, 2)}};
  p.window = {{Rational(0), Rational(3)}};
  auto ref = nc_spectrum(p, 0);
  REQUIRE_FALSE(ref.by_degree[0].empty());  // 1/4, 3/4, ... are present
  for (int i0 : {1, 2}) {
    auto s = nc_spectrum(p, i0);
    REQUIRE(s.by_degree.size() == ref.by_degree.size());
    for (size_t d = 0; d < ref.by_degree.size(); ++d) CHECK(s.by_degree[d] == ref.by_degree[d]);
  }
}

TEST_CASE("scaling all exponents divides the eigenvalues") {
  NCProblem p;
  p.nvars = 2;
  p.j = {0, 1};
  p.jprime = {0, 1};
  p.e = {{0, 1}, {1, 2}};
  p.window = {{Rational(0), Rational(2)}};
  auto base = nc_spectrum(p);

  NCProblem scaled = p;
  scaled.e = {{0, 3}, {1, 6}};
  scaled.window = {{Rational(0), q(2, 3)}};
  auto s = nc_spectrum(scaled);
  REQUIRE(s.by_degree.size() == base.by_degree.size());
  for (size_t d = 0; d < base.by_degree.size(); ++d) {
    REQUIRE(s.by_degree[d].size() == base.by_degree[d].size());
    for (size_t k = 0; k < base.by_degree[d].size(); ++k) {
      CHECK(s.by_degree[d][k].first == base.by_degree[d][k].first / Rational(3));
      CHECK(s.by_degree[d][k].second == base.by_degree[d][k].second);
    }
  }
}

TEST_CASE("agreement with the rank-computed Koszul complex") {
  std::vector<NCProblem> cases;
  {
    NCProblem p;  // x^2 y^3, plain
    p.nvars = 2;
    p.j = {0, 1};
    p.jprime = {0, 1};
    p.e = {{0, 2}, {1, 3}};
    cases.push_back(p);
  }
  {
    NCProblem p;  // xy with a spectator divisor
    p.nvars = 3;
    p.j = {0, 1};
    p.jprime = {0, 1, 2};
    p.e = {{0, 1}, {1, 1}};
    cases.push_back(p);
  }
  {
    NCProblem p;  // twisted x^2 y
    p.nvars = 2;
    p.j = {0, 1};
    p.jprime = {0, 1};
    p.e = {{0, 2}, {1, 1}};
    p.alpha = {{0, q(1, 2)}, {1, q(3, 4)}};
    cases.push_back(p);
  }
  {
    NCProblem p;  // x^3 with twisted spectator: identically zero
    p.nvars = 2;
    p.j = {0};
    p.jprime = {0, 1};
    p.e = {{0, 3}};
    p.alpha = {{1, q(1, 3)}};
    cases.push_back(p);
  }

  const long cap = 6;
  for (auto& p : cases) {
    Rational hi = Rational(2);  // all nu_i = e_i*lambda - alpha_i stay <= cap
    p.window = {{Rational(0), hi}};
    auto s = nc_spectrum(p);
    auto oracle = koszul_oracle(p, p.j.front(), cap);
    // collect implementation results into the oracle's shape
    std::map<Rational, std::vector<long>> got;
    for (size_t d = 0; d < s.by_degree.size(); ++d)
      for (const auto& [lambda, mult] : s.by_degree[d]) {
        auto& v = got[lambda];
        v.resize(s.by_degree.size(), 0);
        v[d] = mult;
      }
    for (auto& [lambda, dims] : oracle) {
      if (!(lambda < hi) || lambda < Rational(0)) continue;
      REQUIRE_MESSAGE(got.count(lambda) == 1, "missing eigenvalue ", lambda.str());
      CHECK(got.at(lambda) == dims);
    }
    for (auto& [lambda, dims] : got) CHECK(oracle.count(lambda) == 1);
  }
}
