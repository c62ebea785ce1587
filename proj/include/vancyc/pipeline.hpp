#ifndef VANCYC_PIPELINE_HPP
#define VANCYC_PIPELINE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "vancyc/groebner.hpp"
#include "vancyc/logmonomial.hpp"
#include "vancyc/microdiff.hpp"
#include "vancyc/parse.hpp"

namespace vancyc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "vancyc-report/1";

struct ProblemSpec {
  std::string mode;  // "isolated" | "nc-monomial"
  std::vector<std::string> variables;
  // isolated mode
  std::string f;
  std::optional<long> precision;
  ExtensionPolicy policy = ExtensionPolicy::allow_one_extension;
  // nc-monomial mode, indices resolved against `variables`
  NCProblem nc;
};

// One critical-value contribution: either a rational critical value or a
// Galois orbit of algebraic ones, tagged by the minimal polynomial.
struct ECFactor {
  bool rational = true;
  Rational c;           // when rational
  std::string minpoly;  // when not: "c is a root of this"
  int orbit = 1;        // number of conjugate critical values covered
  long dimension = 0;   // total over the orbit
  long shift = 0;       // integer exponent shift applied by shearing (per point)
  std::vector<MonodromyPart> monodromy;  // per critical point of the orbit
};

struct Report {
  Json input;  // canonical echo of the problem
  std::string mode;
  // isolated
  long mu = 0;
  int degree = 0;  // cohomological degree k = n
  long precision = 0;
  bool stable = false;  // factors agreed at N and 2N
  std::vector<ECFactor> factors;
  // nc-monomial
  std::string i0;
  NCSpectrum spectrum;
};

namespace detail {

inline const Json& field(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::SyntaxError, "missing field '" + key + "'");
  return *it;
}

inline std::string str_field(const Json& j, const std::string& key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw Error(ErrorCode::SyntaxError, "field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline Rational rational_field(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  throw Error(ErrorCode::SyntaxError, what + " must be a rational string or integer");
}

inline int var_index(const std::vector<std::string>& vars, const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw Error(ErrorCode::SyntaxError, "unknown variable '" + name + "'");
  return static_cast<int>(it - vars.begin());
}

}  // namespace detail

inline ProblemSpec parse_problem(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::SyntaxError, "problem must be an object");
  ProblemSpec spec;
  spec.mode = detail::str_field(j, "mode");
  const Json& vars = detail::field(j, "variables");
  if (!vars.is_array() || vars.empty())
    throw Error(ErrorCode::SyntaxError, "'variables' must be a nonempty array");
  for (const auto& v : vars) {
    if (!v.is_string()) throw Error(ErrorCode::SyntaxError, "variable names must be strings");
    spec.variables.push_back(v.get<std::string>());
  }
  for (size_t i = 0; i < spec.variables.size(); ++i)
    for (size_t k = i + 1; k < spec.variables.size(); ++k)
      if (spec.variables[i] == spec.variables[k])
        throw Error(ErrorCode::SyntaxError, "duplicate variable '" + spec.variables[i] + "'");

  if (j.contains("extension")) {
    std::string pol = detail::str_field(j, "extension");
    if (pol == "off") spec.policy = ExtensionPolicy::rational_only;
    else if (pol == "one") spec.policy = ExtensionPolicy::allow_one_extension;
    else throw Error(ErrorCode::SyntaxError, "extension must be 'off' or 'one'");
  }

  if (spec.mode == "isolated") {
    spec.f = detail::str_field(j, "f");
    if (j.contains("precision")) {
      const Json& p = j.at("precision");
      if (!p.is_number_integer() || p.get<long>() < 1)
        throw Error(ErrorCode::SyntaxError, "precision must be a positive integer");
      spec.precision = p.get<long>();
    }
  } else if (spec.mode == "nc-monomial") {
    spec.nc.nvars = static_cast<int>(spec.variables.size());
    for (const auto& v : detail::field(j, "J"))
      spec.nc.j.push_back(detail::var_index(spec.variables, v.get<std::string>()));
    for (const auto& v : detail::field(j, "Jprime"))
      spec.nc.jprime.push_back(detail::var_index(spec.variables, v.get<std::string>()));
    std::sort(spec.nc.j.begin(), spec.nc.j.end());
    std::sort(spec.nc.jprime.begin(), spec.nc.jprime.end());
    for (auto& [name, val] : detail::field(j, "exponents").items()) {
      if (!val.is_number_integer())
        throw Error(ErrorCode::SyntaxError, "exponents must be integers");
      spec.nc.e[detail::var_index(spec.variables, name)] = val.get<long>();
    }
    if (j.contains("residues"))
      for (auto& [name, val] : j.at("residues").items())
        spec.nc.alpha[detail::var_index(spec.variables, name)] =
            detail::rational_field(val, "residue");
    if (j.contains("window")) {
      const Json& w = j.at("window");
      if (!w.is_array() || w.size() != 2)
        throw Error(ErrorCode::SyntaxError, "window must be [a, b)");
      spec.nc.window = {{detail::rational_field(w[0], "window bound"),
                         detail::rational_field(w[1], "window bound")}};
    }
    if (j.contains("degree_bound")) spec.nc.degree_bound = j.at("degree_bound").get<long>();
  } else {
    throw Error(ErrorCode::SyntaxError, "mode must be 'isolated' or 'nc-monomial'");
  }
  return spec;
}

inline Json problem_to_json(const ProblemSpec& spec) {
  Json j;
  j["mode"] = spec.mode;
  j["variables"] = spec.variables;
  if (spec.mode == "isolated") {
    j["f"] = spec.f;
    if (spec.precision) j["precision"] = *spec.precision;
    j["extension"] = spec.policy == ExtensionPolicy::rational_only ? "off" : "one";
  } else {
    Json jj = Json::array(), jp = Json::array();
    for (int i : spec.nc.j) jj.push_back(spec.variables[static_cast<size_t>(i)]);
    for (int i : spec.nc.jprime) jp.push_back(spec.variables[static_cast<size_t>(i)]);
    j["J"] = jj;
    j["Jprime"] = jp;
    Json e = Json::object(), a = Json::object();
    for (const auto& [i, ei] : spec.nc.e) e[spec.variables[static_cast<size_t>(i)]] = ei;
    for (const auto& [i, ai] : spec.nc.alpha)
      a[spec.variables[static_cast<size_t>(i)]] = ai.str();
    j["exponents"] = e;
    if (!spec.nc.alpha.empty()) j["residues"] = a;
    if (spec.nc.window)
      j["window"] = Json::array({spec.nc.window->first.str(), spec.nc.window->second.str()});
    if (spec.nc.degree_bound) j["degree_bound"] = *spec.nc.degree_bound;
  }
  return j;
}

inline Json report_to_json(const Report& rep) {
  Json j;
  j["schema"] = kReportSchema;
  j["input"] = rep.input;
  j["mode"] = rep.mode;
  if (rep.mode == "isolated") {
    j["mu"] = rep.mu;
    j["degree"] = rep.degree;
    j["precision"] = rep.precision;
    j["stable"] = rep.stable;
    Json fs = Json::array();
    for (const auto& f : rep.factors) {
      Json fj;
      if (f.rational) {
        fj["critical_value"] = f.c.str();
      } else {
        fj["critical_value_minpoly"] = f.minpoly;
        fj["orbit_size"] = f.orbit;
      }
      fj["dimension"] = f.dimension;
      fj["shift"] = f.shift;
      Json ms = Json::array();
      for (const auto& p : f.monodromy) {
        Json pj;
        pj["exponent"] = p.exponent.str();
        pj["rotation"] = p.exponent.mod1().str();
        pj["blocks"] = p.block_sizes;
        ms.push_back(pj);
      }
      fj["monodromy"] = ms;
      fs.push_back(fj);
    }
    j["factors"] = fs;
  } else {
    j["i0"] = rep.i0;
    Json degs = Json::array();
    for (size_t p = 0; p < rep.spectrum.by_degree.size(); ++p) {
      Json dj;
      dj["degree"] = p;
      Json es = Json::array();
      for (const auto& [lambda, mult] : rep.spectrum.by_degree[p]) {
        Json ej;
        ej["eigenvalue"] = lambda.str();
        ej["rotation"] = lambda.mod1().str();
        ej["multiplicity"] = mult;
        es.push_back(ej);
      }
      dj["entries"] = es;
      degs.push_back(dj);
    }
    j["spectrum"] = degs;
  }
  return j;
}

inline Report report_from_json(const Json& j) {
  Report rep;
  if (detail::str_field(j, "schema") != kReportSchema)
    throw Error(ErrorCode::SyntaxError, "unknown report schema");
  rep.input = detail::field(j, "input");
  rep.mode = detail::str_field(j, "mode");
  if (rep.mode == "isolated") {
    rep.mu = detail::field(j, "mu").get<long>();
    rep.degree = detail::field(j, "degree").get<int>();
    rep.precision = detail::field(j, "precision").get<long>();
    rep.stable = detail::field(j, "stable").get<bool>();
    for (const auto& fj : detail::field(j, "factors")) {
      ECFactor f;
      if (fj.contains("critical_value")) {
        f.rational = true;
        f.c = Rational::parse(fj.at("critical_value").get<std::string>());
      } else {
        f.rational = false;
        f.minpoly = fj.at("critical_value_minpoly").get<std::string>();
        f.orbit = fj.at("orbit_size").get<int>();
      }
      f.dimension = detail::field(fj, "dimension").get<long>();
      f.shift = detail::field(fj, "shift").get<long>();
      for (const auto& pj : detail::field(fj, "monodromy")) {
        MonodromyPart p;
        p.exponent = Rational::parse(pj.at("exponent").get<std::string>());
        p.block_sizes = pj.at("blocks").get<std::vector<int>>();
        f.monodromy.push_back(std::move(p));
      }
      rep.factors.push_back(std::move(f));
    }
  } else if (rep.mode == "nc-monomial") {
    rep.i0 = detail::str_field(j, "i0");
    for (const auto& dj : detail::field(j, "spectrum")) {
      std::vector<std::pair<Rational, int>> entries;
      for (const auto& ej : detail::field(dj, "entries"))
        entries.emplace_back(Rational::parse(ej.at("eigenvalue").get<std::string>()),
                             ej.at("multiplicity").get<int>());
      rep.spectrum.by_degree.push_back(std::move(entries));
    }
  } else {
    throw Error(ErrorCode::SyntaxError, "unknown report mode");
  }
  return rep;
}

namespace detail {

inline ECFactor factor_of_block(const Rational& c, int dim, const MonodromySummary& ms) {
  ECFactor f;
  f.rational = true;
  f.c = c;
  f.dimension = dim;
  f.shift = ms.shift;
  f.monodromy = ms.parts;
  return f;
}

inline ExtScalar eval_at(const QPoly& p, const ExtScalar& c) {
  ExtScalar acc(0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * c + ExtScalar(p.coeff(i));
  return acc;
}

// Run decouple/regularize/monodromy per block and assemble factors; blocks
// with conjugate algebraic critical values are merged into one orbit factor.
inline std::vector<ECFactor> factors_at(const MPoly& f, const MilnorData& md, long precision,
                                        ExtensionPolicy policy) {
  int nvars = static_cast<int>(f.nvars());
  MicroModule<Rational> mm = t_matrix(f, md, static_cast<int>(precision));

  std::vector<ECFactor> out;
  try {
    for (const auto& blk : decouple(mm).blocks) {
      auto reg = regularize(blk.module, blk.critical_value, nvars);
      out.push_back(detail::factor_of_block(blk.critical_value, blk.module.dim,
                                            monodromy_summary(reg.residue)));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IrreducibleFactor || policy != ExtensionPolicy::allow_one_extension)
      throw;
    QPoly charpoly = char_poly(mm.a0());
    QPoly modulus;
    for (const auto& [fac, mult] : factor_over_q(charpoly)) {
      (void)mult;
      if (fac.degree() > 1) {
        modulus = fac;
        break;
      }
    }
    auto fieldp = std::make_shared<ExtensionField>(modulus);
    auto lifted = lift_module(mm, fieldp);
    // per ℚ-irreducible factor of char_poly(A_0): one orbit factor
    std::map<std::string, ECFactor> orbits;
    std::map<std::string, std::vector<std::string>> orbit_monodromy;  // consistency check
    for (const auto& blk : decouple(lifted).blocks) {
      auto reg = regularize(blk.module, blk.critical_value, nvars);
      MonodromySummary ms = monodromy_summary(reg.residue);
      if (blk.critical_value.is_rational()) {
        out.push_back(detail::factor_of_block(blk.critical_value.to_rational(), blk.module.dim, ms));
        continue;
      }
      QPoly minpoly;
      for (const auto& [fac, mult] : factor_over_q(charpoly)) {
        (void)mult;
        if (fac.degree() > 1 && eval_at(fac, blk.critical_value) == ExtScalar(0)) {
          minpoly = fac;
          break;
        }
      }
      if (minpoly.degree() < 2)
        throw Error(ErrorCode::Internal, "no minimal polynomial found for a critical value");
      std::string key = minpoly.str("s");
      auto [it, fresh] = orbits.try_emplace(key);
      ECFactor& fac = it->second;
      if (fresh) {
        fac.rational = false;
        fac.minpoly = key;
        fac.orbit = 0;
        fac.shift = ms.shift;
        fac.monodromy = ms.parts;
      }
      fac.orbit += 1;
      fac.dimension += blk.module.dim;
      // conjugate blocks must carry identical monodromy data
      Json probe = Json::array();
      for (const auto& p : ms.parts) {
        probe.push_back(Json::array({p.exponent.str(), p.block_sizes}));
      }
      auto& seen = orbit_monodromy[key];
      seen.push_back(probe.dump());
      if (seen.front() != seen.back())
        throw Error(ErrorCode::Internal, "conjugate blocks disagree on monodromy");
    }
    for (auto& [key, fac] : orbits) out.push_back(std::move(fac));
  }

  std::sort(out.begin(), out.end(), [](const ECFactor& a, const ECFactor& b) {
    if (a.rational != b.rational) return a.rational;
    if (a.rational) return a.c < b.c;
    return a.minpoly < b.minpoly;
  });
  return out;
}

inline Json factors_fingerprint(const std::vector<ECFactor>& fs) {
  Report tmp;
  tmp.mode = "isolated";
  tmp.factors = fs;
  return report_to_json(tmp)["factors"];
}

}  // namespace detail

inline Report run(const ProblemSpec& spec) {
  Report rep;
  rep.mode = spec.mode;
  rep.input = problem_to_json(spec);

  if (spec.mode == "nc-monomial") {
    rep.spectrum = nc_spectrum(spec.nc);
    rep.i0 = spec.variables[static_cast<size_t>(rep.spectrum.i0)];
    return rep;
  }

  MPoly f = parse_mpoly(spec.f, spec.variables);
  std::vector<MPoly> gens;
  for (size_t i = 0; i < f.nvars(); ++i) gens.push_back(f.partial_derivative(i));
  MilnorData md = milnor_data(buchberger(gens));
  rep.mu = md.mu;
  rep.degree = static_cast<int>(f.nvars());
  if (md.mu == 0) {
    rep.stable = true;
    return rep;
  }

  long n0 = spec.precision.value_or(2 * (md.mu + static_cast<long>(f.nvars()) + 2));
  int max_attempts = spec.precision ? 1 : 3;
  for (int attempt = 0; attempt < max_attempts; ++attempt, n0 *= 2) {
    try {
      auto f1 = detail::factors_at(f, md, n0, spec.policy);
      auto f2 = detail::factors_at(f, md, 2 * n0, spec.policy);
      if (detail::factors_fingerprint(f1) == detail::factors_fingerprint(f2)) {
        rep.factors = std::move(f1);
        rep.precision = n0;
        rep.stable = true;
        long total = 0;
        for (const auto& fac : rep.factors) total += fac.dimension;
        if (total != rep.mu)
          throw Error(ErrorCode::Internal, "factor dimensions do not sum to the Milnor number");
        return rep;
      }
      if (attempt + 1 == max_attempts)
        throw Error(ErrorCode::NoStabilization, "reports disagree between N and 2N");
    } catch (const Error& e) {
      bool retryable = e.code() == ErrorCode::PrecisionExhausted ||
                       e.code() == ErrorCode::NoStabilization;
      if (!retryable || attempt + 1 == max_attempts) throw;
    }
  }
  throw Error(ErrorCode::NoStabilization, "precision doubling exhausted");
}

inline Report run(const Json& problem) { return run(parse_problem(problem)); }

}  // namespace vancyc

#endif  // VANCYC_PIPELINE_HPP
