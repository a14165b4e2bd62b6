#include "uniclone.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "uniclone/verify.hpp"

using namespace uniclone;

struct ucl_algebra {
  Algebra alg;
  SymbolRegistry registry;
};

namespace {

thread_local std::string g_last_error;

char* dupString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ucl_status statusOf(const Error& e) {
  switch (e.code()) {
    case ErrorCode::parse_error:
    case ErrorCode::unknown_symbol:
    case ErrorCode::arity_mismatch:
      return UCL_ERR_PARSE;
    case ErrorCode::cap_exceeded:
      return UCL_ERR_CAP_EXCEEDED;
    case ErrorCode::internal:
      return UCL_ERR_INTERNAL;
    default:
      return UCL_ERR_BAD_ARGUMENT;
  }
}

template <typename Fn>
ucl_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    return statusOf(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return UCL_ERR_INTERNAL;
  }
}

json paramsOrEmpty(const char* params_json) {
  if (!params_json || !*params_json) return json::object();
  return parseJsonText(params_json);
}

} // namespace

extern "C" {

const char* ucl_version(void) { return "uniclone 1.0.0"; }

const char* ucl_last_error(void) { return g_last_error.c_str(); }

void ucl_string_free(char* s) { std::free(s); }

ucl_status ucl_verify(const char* suite, const char* params_json, char** report_out) {
  if (!suite || !report_out) {
    g_last_error = "null argument";
    return UCL_ERR_BAD_ARGUMENT;
  }
  return guarded([&]() -> ucl_status {
    json p = paramsOrEmpty(params_json);
    std::string name = suite;
    json out;
    bool ok = true;
    if (name == "thm1") {
      SuiteReport r = verifyThm1(p.value("base", 4), p.value("index", 3), p.value("trials", 200),
                                 p.value("seed", 1u));
      out = r.toJson();
      ok = r.ok();
    } else if (name == "thm2") {
      SuiteReport ba = verifyBlockAlgebra(std::max(4, p.value("index", 3)));
      SuiteReport r = verifyThm2(p.value("base", 3), p.value("index", 3));
      out = json{{"suite", "thm2"},
                 {"reports", json::array({ba.toJson(), r.toJson()})},
                 {"ok", ba.ok() && r.ok()}};
      ok = ba.ok() && r.ok();
    } else if (name == "thm3") {
      SuiteReport r = verifyThm3(p.value("base", 3), p.value("index", 3), p.value("depth", 2),
                                 p.value("seed", 1u));
      out = r.toJson();
      ok = r.ok();
    } else if (name == "free") {
      SuiteReport r = verifyFree(p.value("base", 2), p.value("gens", 1));
      out = r.toJson();
      ok = r.ok();
    } else if (name == "functor") {
      SuiteReport r = verifyFunctor(p.value("trials", 100), p.value("seed", 1u));
      out = r.toJson();
      ok = r.ok();
    } else if (name == "los") {
      SuiteReport r = verifyLos(p.value("base", 3), p.value("index", 3), p.value("corpus", 100),
                                p.value("depth", 2), p.value("seed", 1u));
      out = r.toJson();
      ok = r.ok();
    } else if (name == "colimit") {
      SuiteReport r = p.contains("system")
                          ? verifyColimitSystem(directedSystemFromJson(p.at("system")))
                          : verifyColimitRandom(p.value("systems", 20), p.value("seed", 1u));
      out = r.toJson();
      ok = r.ok();
    } else {
      g_last_error = "unknown suite " + name;
      return UCL_ERR_BAD_ARGUMENT;
    }
    *report_out = dupString(out.dump(2));
    return ok ? UCL_OK : UCL_PROPERTY_VIOLATION;
  });
}

ucl_status ucl_los(const char* power_json, const char* corpus_json, char** report_out) {
  if (!power_json || !corpus_json || !report_out) {
    g_last_error = "null argument";
    return UCL_ERR_BAD_ARGUMENT;
  }
  return guarded([&]() -> ucl_status {
    SuiteReport r = losOnFiles(parseJsonText(power_json), parseJsonText(corpus_json));
    *report_out = dupString(r.toJson().dump(2));
    return r.ok() ? UCL_OK : UCL_PROPERTY_VIOLATION;
  });
}

ucl_status ucl_algebra_open(const char* descriptor_json, ucl_algebra** out) {
  if (!descriptor_json || !out) {
    g_last_error = "null argument";
    return UCL_ERR_BAD_ARGUMENT;
  }
  return guarded([&]() -> ucl_status {
    Algebra a = algebraFromJson(parseJsonText(descriptor_json));
    *out = new ucl_algebra{a, SymbolRegistry::standard(a.base())};
    return UCL_OK;
  });
}

void ucl_algebra_close(ucl_algebra* a) { delete a; }

ucl_status ucl_algebra_info(const ucl_algebra* a, char** info_out) {
  if (!a || !info_out) {
    g_last_error = "null argument";
    return UCL_ERR_BAD_ARGUMENT;
  }
  return guarded([&]() -> ucl_status {
    json j = algebraToJson(a->alg);
    json info{{"base", a->alg.base()}, {"carrier", a->alg.size()}, {"descriptor", j}};
    *info_out = dupString(info.dump(2));
    return UCL_OK;
  });
}

ucl_status ucl_algebra_eval(const ucl_algebra* a, const char* formula, int* truth_out) {
  if (!a || !formula || !truth_out) {
    g_last_error = "null argument";
    return UCL_ERR_BAD_ARGUMENT;
  }
  return guarded([&]() -> ucl_status {
    Formula f = parseFormula(formula, a->registry);
    *truth_out = evalFormula(a->alg, a->registry, f) ? 1 : 0;
    return UCL_OK;
  });
}

ucl_status ucl_export_dot(const char* what, const char* params_json, char** dot_out) {
  if (!what || !dot_out) {
    g_last_error = "null argument";
    return UCL_ERR_BAD_ARGUMENT;
  }
  return guarded([&]() -> ucl_status {
    json p = paramsOrEmpty(params_json);
    std::string kind = what;
    std::string dot;
    if (kind == "lattice") {
      dot = refinementLatticeDot(p.value("index", 3));
    } else if (kind == "ba") {
      PartitionFilter f = p.contains("filter") ? filterFromJson(p.at("filter"))
                                               : PartitionFilter::full(p.value("index", 3));
      dot = baFilterLatticeDot(f);
    } else {
      g_last_error = "unknown export kind " + kind;
      return UCL_ERR_BAD_ARGUMENT;
    }
    *dot_out = dupString(dot);
    return UCL_OK;
  });
}

} // extern "C"
