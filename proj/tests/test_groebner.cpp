#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "vancyc/groebner.hpp"
#include "vancyc/matrix.hpp"
#include "vancyc/parse.hpp"

using namespace vancyc;

namespace {

const std::vector<std::string> XY{"x", "y"};

MPoly P(const std::string& s) { return parse_mpoly(s, XY); }
MPoly P1(const std::string& s) { return parse_mpoly(s, {"x"}); }

std::vector<MPoly> jacobian(const MPoly& f) {
  std::vector<MPoly> gens;
  for (size_t i = 0; i < f.nvars(); ++i) gens.push_back(f.partial_derivative(i));
  return gens;
}

std::mt19937 rng(55221);

MPoly random_poly(const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> nterms(1, 4), expd(0, 3);
  std::uniform_int_distribution<long> coeff(-4, 4);
  MPoly p(vars);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    for (size_t v = 0; v < vars.size(); ++v) m.push_back(static_cast<unsigned>(expd(rng)));
    p.add_term(m, Rational(coeff(rng)));
  }
  return p;
}

// Independent Milnor number oracle: dimension of monomials of degree <= D
// modulo the row space of all products x^a * f_i of degree <= D.
int mu_truncated_oracle(const std::vector<MPoly>& gens, unsigned D) {
  size_t n = gens[0].nvars();
  // enumerate monomials of degree <= D
  std::vector<Monomial> monos;
  Monomial cur(n, 0);
  for (;;) {
    if (mono_degree(cur) <= D) monos.push_back(cur);
    size_t pos = 0;
    while (pos < n) {
      if (++cur[pos] <= D) break;
      cur[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  std::map<Monomial, int, DegRevLexLess> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);

  std::vector<std::vector<Rational>> rows;
  for (const auto& f : gens) {
    unsigned df = f.total_degree();
    for (const auto& m : monos) {
      if (mono_degree(m) + df > D) continue;
      MPoly prod = detail::term_mul(f, m, Rational(1));
      std::vector<Rational> row(monos.size(), Rational(0));
      bool fits = true;
      for (const auto& [pm, pc] : prod.terms()) {
        auto it = index.find(pm);
        if (it == index.end()) { fits = false; break; }
        row[it->second] = pc;
      }
      if (fits) rows.push_back(std::move(row));
    }
  }
  Matrix<Rational> m(static_cast<int>(rows.size()), static_cast<int>(monos.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return static_cast<int>(monos.size()) - m.rank();
}

}  // namespace

TEST_CASE("buchberger basic examples") {
  // gens (2x, 3y^2) -> basis {x, y^2}
  auto gb = buchberger({P("2*x"), P("3*y^2")});
  std::set<std::string> bs;
  for (auto& g : gb.basis) bs.insert(g.str());
  CHECK(bs == std::set<std::string>({"x", "y^2"}));

  // gens (1+2xy, x^2) -> ideal (1)
  auto gb2 = buchberger({P("1 + 2*x*y"), P("x^2")});
  bool has_unit = false;
  for (auto& g : gb2.basis)
    if (g.is_constant()) has_unit = true;
  CHECK(gb2.normal_form(MPoly::constant(XY, Rational(1))).is_zero());
  CHECK(has_unit);

  // single univariate generator 3x^2 - 3 -> monic x^2 - 1
  auto gb3 = buchberger({P1("3*x^2 - 3")});
  REQUIRE(gb3.basis.size() == 1);
  CHECK(gb3.basis[0] == P1("x^2 - 1"));
}

TEST_CASE("groebner basis invariants: S-polynomials and cofactors") {
  std::vector<std::vector<MPoly>> cases = {
      jacobian(P("x^2 + y^3")),
      jacobian(P("x^3 + x*y^2")),       // D4
      jacobian(P("x^4 + y^2")),
      {P("1 + 2*x*y"), P("x^2")},
      {P("x^2 + y^2 - 1"), P("x*y - 1")},
  };
  for (auto& gens : cases) {
    auto gb = buchberger(gens);
    // every S-polynomial reduces to zero
    for (size_t i = 0; i < gb.size(); ++i)
      for (size_t j = i + 1; j < gb.size(); ++j) {
        auto lti = gb.basis[i].leading_term().first;
        auto ltj = gb.basis[j].leading_term().first;
        Monomial lcm = mono_lcm(lti, ltj);
        MPoly s = detail::term_mul(gb.basis[i], mono_div(lcm, lti), Rational(1)) -
                  detail::term_mul(gb.basis[j], mono_div(lcm, ltj), Rational(1));
        CHECK(gb.normal_form(s).is_zero());
      }
    // cofactor identity g_k = sum c_{k,i} f_i
    for (size_t k = 0; k < gb.size(); ++k) {
      MPoly acc(gens[0].vars());
      for (size_t i = 0; i < gens.size(); ++i) acc += gb.cofactors[k][i] * gens[i];
      CHECK(acc == gb.basis[k]);
    }
  }
}

TEST_CASE("normal form with quotients examples") {
  // x^2+y^3 against (2x, 3y^2): r = 0, q = (x/2, y/3)
  auto gb = buchberger({P("2*x"), P("3*y^2")});
  auto [r, q] = gb.normal_form_with_quotients(P("x^2 + y^3"));
  CHECK(r.is_zero());
  CHECK(q[0] == P("1/2*x"));
  CHECK(q[1] == P("1/3*y"));

  // x^4 - 3x^2 against (3x^2 - 3): r = -2, q = x^2/3 - 2/3
  auto gb2 = buchberger({P1("3*x^2 - 3")});
  auto [r2, q2] = gb2.normal_form_with_quotients(P1("x^4 - 3*x^2"));
  CHECK(r2 == P1("2").scaled(Rational(-1)));
  CHECK(q2[0] == P1("1/3*x^2 - 2/3"));

  // staircase element is its own normal form
  auto [r3, q3] = gb.normal_form_with_quotients(P("y"));
  CHECK(r3 == P("y"));
  CHECK(q3[0].is_zero());
  CHECK(q3[1].is_zero());
}

TEST_CASE("normal form properties on random inputs") {
  std::vector<std::vector<MPoly>> cases = {
      jacobian(P("x^2 + y^3")),
      jacobian(P("x^3 + x*y^2")),
      {P("x^2 - y"), P("y^2 - x")},
  };
  for (auto& gens : cases) {
    auto gb = buchberger(gens);
    for (int t = 0; t < 30; ++t) {
      MPoly g = random_poly(XY);
      auto [r, q] = gb.normal_form_with_quotients(g);
      // reconstruction
      MPoly acc = r;
      for (size_t i = 0; i < gens.size(); ++i) acc += q[i] * gens[i];
      CHECK(acc == g);
      // idempotence
      CHECK(gb.normal_form(r) == r);
      // membership: random combinations reduce to zero
      MPoly comb(XY);
      for (size_t i = 0; i < gens.size(); ++i) comb += random_poly(XY) * gens[i];
      CHECK(gb.normal_form(comb).is_zero());
    }
  }
}

TEST_CASE("milnor data examples") {
  // cusp: staircase {1, y}, mu = 2
  auto md = milnor_data(buchberger(jacobian(P("x^2 + y^3"))));
  CHECK(md.mu == 2);
  REQUIRE(md.staircase.size() == 2);
  CHECK(md.staircase[0] == Monomial{0, 0});
  CHECK(md.staircase[1] == Monomial{0, 1});

  // Broughton: mu = 0
  auto mdb = milnor_data(buchberger(jacobian(P("x + x^2*y"))));
  CHECK(mdb.mu == 0);
  CHECK(mdb.staircase.empty());

  // f = xy: gens (y, x), staircase {1}
  auto mdx = milnor_data(buchberger(jacobian(P("x*y"))));
  CHECK(mdx.mu == 1);
  REQUIRE(mdx.staircase.size() == 1);
  CHECK(mdx.staircase[0] == Monomial{0, 0});

  // not isolated: f = x^2 (in two variables) has no pure y-power
  CHECK_THROWS_WITH_AS(milnor_data(buchberger(jacobian(P("x^2")))),
                       doctest::Contains("NotIsolated"), Error);
}

TEST_CASE("mu agrees with truncated linear-algebra oracle") {
  std::vector<MPoly> fs = {
      P("x^2 + y^3"), P("x^3 + x*y^2"), P("x^4 + y^2"),
      P("x^3 + y^3"), P("x^2 + y^2"), P("x^5 + y^2"),
  };
  for (auto& f : fs) {
    auto md = milnor_data(buchberger(jacobian(f)));
    unsigned maxdeg = 0;
    for (const auto& m : md.staircase) maxdeg = std::max(maxdeg, mono_degree(m));
    unsigned D = 2 * maxdeg + 2;
    CHECK(md.mu == mu_truncated_oracle(jacobian(f), D));
  }
  // f = x^3 - 3x in one variable
  auto md1 = milnor_data(buchberger(jacobian(P1("x^3 - 3*x"))));
  CHECK(md1.mu == 2);
  CHECK(md1.mu == mu_truncated_oracle(jacobian(P1("x^3 - 3*x")), 6));
}

TEST_CASE("staircase closed under division") {
  std::vector<MPoly> fs = {P("x^2 + y^3"), P("x^3 + x*y^2"), P("x^4 + y^4")};
  for (auto& f : fs) {
    auto md = milnor_data(buchberger(jacobian(f)));
    std::set<Monomial> s(md.staircase.begin(), md.staircase.end());
    for (const auto& m : md.staircase) {
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        Monomial d = m;
        d[i] -= 1;
        CHECK(s.count(d) == 1);
      }
    }
  }
}
