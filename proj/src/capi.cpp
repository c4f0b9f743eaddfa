#include "hopfforge/hopfforge.h"

#include <cstring>

#include "json.hpp"
#include "suites.hpp"

struct hf_engine {
  std::unique_ptr<hopfforge::Engine> eng;
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hf_status classify(const std::exception& e) {
  if (dynamic_cast<const hopfforge::ParseError*>(&e)) return HF_ERR_PARSE;
  if (dynamic_cast<const std::invalid_argument*>(&e)) {
    std::string m = e.what();
    if (m.find("unsupported p") != std::string::npos ||
        m.find("p <= 3") != std::string::npos ||
        m.find("does not support p") != std::string::npos)
      return HF_ERR_UNSUPPORTED_P;
    if (m.find("unknown") != std::string::npos) return HF_ERR_UNKNOWN_NAME;
    return HF_ERR_INVALID_ARGUMENT;
  }
  if (dynamic_cast<const std::domain_error*>(&e)) return HF_ERR_EVAL;
  return HF_ERR_INTERNAL;
}

template <typename Fn>
hf_status guarded(hf_engine* e, Fn&& fn) {
  if (!e) return HF_ERR_INVALID_ARGUMENT;
  try {
    fn();
    return HF_OK;
  } catch (const std::exception& ex) {
    e->last_error = ex.what();
    return classify(ex);
  } catch (...) {
    e->last_error = "unknown error";
    return HF_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* hf_version(void) { return "hopfforge 1.0.0"; }

const char* hf_status_name(hf_status s) {
  switch (s) {
    case HF_OK: return "ok";
    case HF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HF_ERR_UNSUPPORTED_P: return "unsupported p";
    case HF_ERR_UNKNOWN_NAME: return "unknown name";
    case HF_ERR_PARSE: return "parse error";
    case HF_ERR_EVAL: return "evaluation error";
    case HF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

hf_status hf_engine_new(unsigned p, hf_engine** out) {
  if (!out) return HF_ERR_INVALID_ARGUMENT;
  *out = nullptr;
  if (!hopfforge::Engine::supported_p(p)) return HF_ERR_UNSUPPORTED_P;
  try {
    auto* e = new hf_engine;
    e->eng = std::make_unique<hopfforge::Engine>(p);
    *out = e;
    return HF_OK;
  } catch (const std::exception&) {
    return HF_ERR_INTERNAL;
  }
}

void hf_engine_free(hf_engine* e) { delete e; }

const char* hf_engine_last_error(const hf_engine* e) {
  return e ? e->last_error.c_str() : "null engine";
}

hf_status hf_suite_list(hf_engine* e, char** out_json) {
  if (!out_json) return HF_ERR_INVALID_ARGUMENT;
  return guarded(e, [&] {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& n : hopfforge::suite_names())
      if (hopfforge::suite_supports(n, e->eng->p())) j.push_back(n);
    *out_json = dup_string(j.dump());
  });
}

hf_status hf_suite_supported(hf_engine* e, const char* suite, int* out_supported) {
  if (!suite || !out_supported) return HF_ERR_INVALID_ARGUMENT;
  return guarded(e, [&] {
    *out_supported = hopfforge::suite_supports(suite, e->eng->p()) ? 1 : 0;
  });
}

hf_status hf_run_suite(hf_engine* e, const char* suite, uint64_t seed, int as_text,
                       char** out_report, int* out_all_pass) {
  if (!suite || !out_report) return HF_ERR_INVALID_ARGUMENT;
  return guarded(e, [&] {
    hopfforge::Report rep = hopfforge::run_suite(*e->eng, suite, seed);
    *out_report = dup_string(as_text ? rep.to_text() : rep.to_json());
    if (out_all_pass) *out_all_pass = rep.all_pass() ? 1 : 0;
  });
}

hf_status hf_algebra_list(hf_engine* e, char** out_json) {
  if (!out_json) return HF_ERR_INVALID_ARGUMENT;
  return guarded(e, [&] {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& n : e->eng->algebra_names()) j.push_back(n);
    *out_json = dup_string(j.dump());
  });
}

hf_status hf_eval(hf_engine* e, const char* algebra, const char* expression, int as_text,
                  char** out) {
  if (!algebra || !expression || !out) return HF_ERR_INVALID_ARGUMENT;
  return guarded(e, [&] {
    const hopfforge::ExprAlgebra& alg = e->eng->algebra(algebra);
    hopfforge::ExprPtr ast = hopfforge::parse_element(expression);
    hopfforge::Vec v = hopfforge::eval_element(*ast, alg);
    if (as_text) {
      *out = dup_string(hopfforge::element_pretty(v, alg));
      return;
    }
    nlohmann::ordered_json j;
    j["algebra"] = algebra;
    j["expr"] = hopfforge::expr_to_string(*ast);
    j["dim"] = alg.dim;
    j["pretty"] = hopfforge::element_pretty(v, alg);
    j["coeffs"] = nlohmann::ordered_json::array();
    for (const auto& [i, c] : v) {
      nlohmann::ordered_json entry = nlohmann::ordered_json::array();
      entry.push_back(i);
      entry.push_back(alg.labels[i]);
      entry.push_back(c.serialize());
      j["coeffs"].push_back(entry);
    }
    *out = dup_string(j.dump(1));
  });
}

hf_status hf_export(hf_engine* e, const char* bundle, const char* format, char** out) {
  if (!bundle || !format || !out) return HF_ERR_INVALID_ARGUMENT;
  return guarded(e, [&] {
    *out = dup_string(hopfforge::export_bundle(*e->eng, bundle, format));
  });
}

void hf_string_free(char* s) { std::free(s); }

}  // extern "C"
