#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "vancyc/pipeline.hpp"

namespace {

using vancyc::Error;
using vancyc::ErrorCode;
using vancyc::Json;
using vancyc::Report;

std::string render_text(const Report& rep) {
  std::ostringstream os;
  os << "mode: " << rep.mode << "\n";
  if (rep.mode == "isolated") {
    os << "mu: " << rep.mu << "\n";
    os << "degree: " << rep.degree << "\n";
    os << "precision: " << rep.precision << (rep.stable ? " (stable)" : " (unstable)") << "\n";
    for (const auto& f : rep.factors) {
      if (f.rational)
        os << "critical value " << f.c.str();
      else
        os << "critical values: roots of " << f.minpoly << " (orbit size " << f.orbit << ")";
      os << ": dimension " << f.dimension << ", shift " << f.shift << "\n";
      for (const auto& p : f.monodromy) {
        os << "  exponent " << p.exponent.str() << "  rotation " << p.exponent.mod1().str()
           << "  blocks";
        for (int b : p.block_sizes) os << " " << b;
        os << "\n";
      }
    }
  } else {
    os << "i0: " << rep.i0 << "\n";
    for (size_t p = 0; p < rep.spectrum.by_degree.size(); ++p) {
      os << "degree " << p << ":";
      if (rep.spectrum.by_degree[p].empty()) os << " (none)";
      for (const auto& [lambda, mult] : rep.spectrum.by_degree[p])
        os << " " << lambda.str() << " x" << mult;
      os << "\n";
    }
  }
  return os.str();
}

void emit_error(const Error& e, const std::string& format) {
  if (format == "json") {
    Json j;
    j["error"] = vancyc::error_code_name(e.code());
    j["reason"] = e.reason();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "error " << e.what() << "\n";
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SyntaxError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("invalid document: ") + e.what());
  }
}

struct Overrides {
  std::optional<std::string> mode, extension, window;
  std::optional<long> precision;
};

Json apply_overrides(Json problem, const Overrides& ov) {
  if (ov.mode) problem["mode"] = *ov.mode;
  if (ov.precision) problem["precision"] = *ov.precision;
  if (ov.extension) problem["extension"] = *ov.extension;
  if (ov.window) {
    auto comma = ov.window->find(',');
    if (comma == std::string::npos)
      throw Error(ErrorCode::SyntaxError, "window must be 'a,b'");
    problem["window"] =
        Json::array({ov.window->substr(0, comma), ov.window->substr(comma + 1)});
  }
  return problem;
}

// Built-in checks plus a golden-corpus replay; one line per check.
int selftest(const std::string& corpus_dir) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "pass " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  try {
    Report cusp = vancyc::run(Json::parse(
        R"({"mode":"isolated","variables":["x","y"],"f":"x^2 + y^3"})"));
    check("builtin cusp exponents {5/6, 7/6}",
          cusp.mu == 2 && cusp.factors.size() == 1 &&
              cusp.factors[0].monodromy.size() == 2 &&
              cusp.factors[0].monodromy[0].exponent == vancyc::Rational(5, 6) &&
              cusp.factors[0].monodromy[1].exponent == vancyc::Rational(7, 6));
  } catch (const Error&) {
    check("builtin cusp exponents {5/6, 7/6}", false);
  }

  try {
    Report b = vancyc::run(Json::parse(
        R"({"mode":"isolated","variables":["x","y"],"f":"x + x^2*y"})"));
    check("builtin unit Jacobian ideal gives empty report", b.mu == 0 && b.factors.empty());
  } catch (const Error&) {
    check("builtin unit Jacobian ideal gives empty report", false);
  }

  try {
    Report nc = vancyc::run(Json::parse(
        R"({"mode":"nc-monomial","variables":["x","y"],"J":["x","y"],"Jprime":["x","y"],)"
        R"("exponents":{"x":1,"y":1},"window":["0","1"]})"));
    check("builtin annulus dims (1,1) at eigenvalue 0",
          nc.spectrum.by_degree.size() == 2 &&
              nc.spectrum.by_degree[0] ==
                  std::vector<std::pair<vancyc::Rational, int>>{{vancyc::Rational(0), 1}} &&
              nc.spectrum.by_degree[1] ==
                  std::vector<std::pair<vancyc::Rational, int>>{{vancyc::Rational(0), 1}});
  } catch (const Error&) {
    check("builtin annulus dims (1,1) at eigenvalue 0", false);
  }

  // Forced precision must fail loudly, not silently: a controlled failure.
  try {
    vancyc::run(Json::parse(
        R"({"mode":"isolated","variables":["x","y"],"f":"x^2 + y^3","precision":1})"));
    check("builtin forced precision 1 raises PrecisionExhausted", false);
  } catch (const Error& e) {
    check("builtin forced precision 1 raises PrecisionExhausted",
          e.code() == ErrorCode::PrecisionExhausted);
  }

  namespace fs = std::filesystem;
  bool found_any = false;
  if (fs::is_directory(corpus_dir)) {
    std::map<std::string, fs::path> problems;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
      std::string name = entry.path().filename().string();
      auto pos = name.find(".problem.json");
      if (pos != std::string::npos) problems[name.substr(0, pos)] = entry.path();
    }
    for (const auto& [name, path] : problems) {
      found_any = true;
      fs::path expected = fs::path(corpus_dir) / (name + ".expected.json");
      try {
        Report rep = vancyc::run(read_json_file(path.string()));
        std::string got = vancyc::report_to_json(rep).dump(2) + "\n";
        std::ifstream in(expected);
        std::stringstream want;
        want << in.rdbuf();
        check("corpus " + name, in.good() && got == want.str());
      } catch (const Error& e) {
        check("corpus " + name + " (" + e.what() + ")", false);
      }
    }
  }
  check("corpus directory '" + corpus_dir + "' has entries", found_any);

  std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact vanishing-cycle invariants of polynomial singularities"};

  std::string input, format = "json", corpus = "golden";
  Overrides ov;
  bool run_selftest = false;

  app.add_option("--input", input, "problem document (JSON)");
  app.add_option("--mode", ov.mode, "override mode: isolated | nc-monomial");
  app.add_option("--precision", ov.precision, "override series precision N");
  app.add_option("--window", ov.window, "override half-open eigenvalue window a,b");
  app.add_option("--extension", ov.extension, "field extension policy: off | one")
      ->check(CLI::IsMember({"off", "one"}));
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--selftest", run_selftest, "run built-in checks and the golden corpus");
  app.add_option("--corpus", corpus, "golden corpus directory for --selftest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  // Accepted for interface stability; the engine is sequential.
  const char* threads = std::getenv("VANCYC_THREADS");
  (void)threads;

  if (run_selftest) return selftest(corpus);

  try {
    if (input.empty()) throw Error(ErrorCode::SyntaxError, "--input is required");
    Json problem = apply_overrides(read_json_file(input), ov);
    auto t0 = std::chrono::steady_clock::now();
    Report rep = vancyc::run(problem);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (format == "json") {
      std::cout << vancyc::report_to_json(rep).dump(2) << "\n";
    } else {
      std::cout << render_text(rep);
      std::cout << "elapsed: " << ms << " ms\n";
    }
    return 0;
  } catch (const Error& e) {
    emit_error(e, format);
    return e.exit_code();
  } catch (const std::exception& e) {
    emit_error(Error(ErrorCode::Internal, e.what()), format);
    return 3;
  }
}
