#include "hopfforge/hopfforge.h"

#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct EngineFx {
  hf_engine* e = nullptr;
  EngineFx(unsigned p = 2) { REQUIRE(hf_engine_new(p, &e) == HF_OK); }
  ~EngineFx() { hf_engine_free(e); }
};

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out = s;
  hf_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("engine lifecycle and version") {
  CHECK(std::string(hf_version()).find("hopfforge") != std::string::npos);
  hf_engine* e = nullptr;
  CHECK(hf_engine_new(4, &e) == HF_ERR_UNSUPPORTED_P);
  CHECK(e == nullptr);
  CHECK(hf_engine_new(2, &e) == HF_OK);
  hf_engine_free(e);
  hf_engine_free(nullptr);
}

TEST_CASE("suite listing and execution") {
  EngineFx fx;
  char* names = nullptr;
  REQUIRE(hf_suite_list(fx.e, &names) == HF_OK);
  auto j = nlohmann::json::parse(take(names));
  CHECK(j.is_array());
  bool has_normal_order = false;
  for (const auto& n : j)
    if (n.get<std::string>() == "normal-order") has_normal_order = true;
  CHECK(has_normal_order);

  int supported = 0;
  REQUIRE(hf_suite_supported(fx.e, "normal-order", &supported) == HF_OK);
  CHECK(supported == 1);

  char* rep = nullptr;
  int all_pass = 0;
  REQUIRE(hf_run_suite(fx.e, "normal-order", 1, 0, &rep, &all_pass) == HF_OK);
  auto repj = nlohmann::json::parse(take(rep));
  CHECK(all_pass == 1);
  CHECK(repj["suite"] == "normal-order");
  CHECK(repj["p"] == 2);
  CHECK(repj["all_pass"] == true);

  char* out = nullptr;
  CHECK(hf_run_suite(fx.e, "no-such-suite", 1, 0, &out, nullptr) != HF_OK);
  CHECK(std::string(hf_engine_last_error(fx.e)).find("no-such-suite") != std::string::npos);
}

TEST_CASE("expression evaluation through the C interface") {
  EngineFx fx;
  char* out = nullptr;
  REQUIRE(hf_eval(fx.e, "uq", "E*F - F*E", 0, &out) == HF_OK);
  auto j = nlohmann::json::parse(take(out));
  // [E, F] = (K - K^{-1})/(q - q^{-1})
  CHECK(j["coeffs"].size() == 2);

  REQUIRE(hf_eval(fx.e, "uq", "E*F - F*E", 1, &out) == HF_OK);
  std::string pretty = take(out);
  CHECK(pretty.find("K") != std::string::npos);

  CHECK(hf_eval(fx.e, "uq", "E*", 0, &out) == HF_ERR_PARSE);
  CHECK(hf_eval(fx.e, "uq", "nope", 0, &out) == HF_ERR_PARSE);
  CHECK(hf_eval(fx.e, "bogus", "E", 0, &out) == HF_ERR_UNKNOWN_NAME);
}

TEST_CASE("exports through the C interface are byte-stable") {
  EngineFx fx;
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(hf_export(fx.e, "uq", "json", &a) == HF_OK);
  REQUIRE(hf_export(fx.e, "uq", "json", &b) == HF_OK);
  CHECK(take(a) == take(b));
  char* out = nullptr;
  CHECK(hf_export(fx.e, "nosuch", "json", &out) == HF_ERR_UNKNOWN_NAME);
}

TEST_CASE("p=5 engine supports the matrix tier only") {
  EngineFx fx(5);
  int supported = -1;
  REQUIRE(hf_suite_supported(fx.e, "matrix-iso", &supported) == HF_OK);
  CHECK(supported == 1);
  REQUIRE(hf_suite_supported(fx.e, "yd", &supported) == HF_OK);
  CHECK(supported == 0);
  char* out = nullptr;
  CHECK(hf_run_suite(fx.e, "yd", 1, 0, &out, nullptr) == HF_ERR_UNSUPPORTED_P);
  REQUIRE(hf_run_suite(fx.e, "normal-order", 1, 0, &out, nullptr) == HF_OK);
  hf_string_free(out);
}
