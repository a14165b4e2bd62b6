// Command line front end; talks to the workbench exclusively through the C
// API in uniclone.h. Exit codes: 0 success, 1 property violation, 2 usage
// or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "uniclone.h"

namespace {

using nlohmann::json;

int statusToExit(ucl_status s) {
  if (s == UCL_OK) return 0;
  if (s == UCL_PROPERTY_VIOLATION) return 1;
  return 2;
}

int emitReport(ucl_status s, char* report) {
  if (report) {
    std::cout << report << "\n";
    ucl_string_free(report);
  }
  if (s != UCL_OK && s != UCL_PROPERTY_VIOLATION)
    std::cerr << "error: " << ucl_last_error() << "\n";
  return statusToExit(s);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int runVerify(const std::string& suite, const json& params) {
  char* report = nullptr;
  ucl_status s = ucl_verify(suite.c_str(), params.dump().c_str(), &report);
  return emitReport(s, report);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniclone: a workbench for partition filters, clone powers and limit reduced powers"};
  app.require_subcommand(1);

  // ---- verify -------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);

  struct {
    int base = 4, index = 3, trials = 200;
    std::uint64_t seed = 1;
  } o1;
  auto* thm1 = verify->add_subcommand("thm1", "subalgebra/filter round trip");
  thm1->add_option("--base", o1.base, "base set size");
  thm1->add_option("--index", o1.index, "index set size");
  thm1->add_option("--trials", o1.trials, "random subalgebras");
  thm1->add_option("--seed", o1.seed, "RNG seed");
  thm1->callback([&]() {
    std::exit(runVerify("thm1", json{{"base", o1.base}, {"index", o1.index},
                                     {"trials", o1.trials}, {"seed", o1.seed}}));
  });

  struct {
    int base = 3, index = 3;
  } o2;
  auto* thm2 = verify->add_subcommand("thm2", "congruence/filter lattice isomorphism");
  thm2->add_option("--base", o2.base, "base set size");
  thm2->add_option("--index", o2.index, "index set size");
  thm2->callback([&]() {
    std::exit(runVerify("thm2", json{{"base", o2.base}, {"index", o2.index}}));
  });

  struct {
    int base = 3, index = 3, depth = 2;
    std::uint64_t seed = 1;
  } o3;
  auto* thm3 = verify->add_subcommand("thm3", "simple/SI/DI/elementary/ultra equivalences");
  thm3->add_option("--base", o3.base, "base set size");
  thm3->add_option("--index", o3.index, "index set size");
  thm3->add_option("--depth", o3.depth, "corpus quantifier depth");
  thm3->add_option("--seed", o3.seed, "RNG seed");
  thm3->callback([&]() {
    std::exit(runVerify("thm3", json{{"base", o3.base}, {"index", o3.index},
                                     {"depth", o3.depth}, {"seed", o3.seed}}));
  });

  struct {
    int base = 2, gens = 1;
  } o4;
  auto* freecmd = verify->add_subcommand("free", "projections freely generate F(A,I)");
  freecmd->add_option("--base", o4.base, "base set size");
  freecmd->add_option("--gens", o4.gens, "generator count");
  freecmd->callback([&]() {
    std::exit(runVerify("free", json{{"base", o4.base}, {"gens", o4.gens}}));
  });

  struct {
    int trials = 100;
    std::uint64_t seed = 1;
  } o5;
  auto* functor = verify->add_subcommand("functor", "induced/pullback map functoriality");
  functor->add_option("--trials", o5.trials, "random map pairs");
  functor->add_option("--seed", o5.seed, "RNG seed");
  functor->callback([&]() {
    std::exit(runVerify("functor", json{{"trials", o5.trials}, {"seed", o5.seed}}));
  });

  struct {
    int systems = 20;
    std::uint64_t seed = 1;
    std::string spec_file;
  } o6;
  auto* colimit = verify->add_subcommand("colimit", "directed colimit reconstruction");
  colimit->add_option("--spec", o6.spec_file, "directed system JSON file");
  colimit->add_option("--systems", o6.systems, "random systems when no spec");
  colimit->add_option("--seed", o6.seed, "RNG seed");
  colimit->callback([&]() {
    json params{{"systems", o6.systems}, {"seed", o6.seed}};
    if (!o6.spec_file.empty()) params["system"] = json::parse(slurp(o6.spec_file));
    std::exit(runVerify("colimit", params));
  });

  // ---- los ----------------------------------------------------------
  std::string power_file, corpus_file;
  auto* los = app.add_subcommand("los", "Los transfer over a limit ultrapower");
  los->add_option("--power", power_file, "limit reduced power JSON")->required();
  los->add_option("--corpus", corpus_file, "corpus JSON")->required();
  los->callback([&]() {
    char* report = nullptr;
    ucl_status s = ucl_los(slurp(power_file).c_str(), slurp(corpus_file).c_str(), &report);
    std::exit(emitReport(s, report));
  });

  // ---- eval ---------------------------------------------------------
  std::string algebra_file, formula;
  auto* eval = app.add_subcommand("eval", "evaluate a sentence in an algebra");
  eval->add_option("--algebra", algebra_file, "algebra descriptor JSON")->required();
  eval->add_option("--formula", formula, "sentence text")->required();
  eval->callback([&]() {
    ucl_algebra* a = nullptr;
    ucl_status s = ucl_algebra_open(slurp(algebra_file).c_str(), &a);
    if (s != UCL_OK) {
      std::cerr << "error: " << ucl_last_error() << "\n";
      std::exit(2);
    }
    int truth = 0;
    s = ucl_algebra_eval(a, formula.c_str(), &truth);
    if (s == UCL_OK) std::cout << json{{"formula", formula}, {"truth", truth != 0}}.dump(2) << "\n";
    else std::cerr << "error: " << ucl_last_error() << "\n";
    ucl_algebra_close(a);
    std::exit(s == UCL_OK ? 0 : 2);
  });

  // ---- export -------------------------------------------------------
  std::string what, out_file, filter_file;
  int export_index = 3;
  auto* exp = app.add_subcommand("export", "DOT export of a lattice");
  exp->add_option("--what", what, "lattice|ba")->required()->check(CLI::IsMember({"lattice", "ba"}));
  exp->add_option("--out", out_file, "output .dot path")->required();
  exp->add_option("--index", export_index, "ground set size");
  exp->add_option("--filter", filter_file, "filter JSON (for --what ba)");
  exp->callback([&]() {
    json params{{"index", export_index}};
    if (!filter_file.empty()) params["filter"] = json::parse(slurp(filter_file));
    char* dot = nullptr;
    ucl_status s = ucl_export_dot(what.c_str(), params.dump().c_str(), &dot);
    if (s != UCL_OK) {
      std::cerr << "error: " << ucl_last_error() << "\n";
      std::exit(2);
    }
    std::ofstream out(out_file);
    if (!out) {
      std::cerr << "error: cannot write " << out_file << "\n";
      ucl_string_free(dot);
      std::exit(2);
    }
    out << dot;
    ucl_string_free(dot);
    std::cout << json{{"written", out_file}}.dump(2) << "\n";
    std::exit(0);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
