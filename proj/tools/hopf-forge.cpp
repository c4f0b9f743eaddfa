// Command-line front end.  Talks to the engine exclusively through the
// public C interface in hopfforge/hopfforge.h.
//
// Exit codes: 0 all checks passed / output produced, 1 verification failures,
// 2 usage errors.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "hopfforge/hopfforge.h"

namespace {

struct EngineHandle {
  hf_engine* e = nullptr;
  ~EngineHandle() { hf_engine_free(e); }
};

struct HfString {
  char* s = nullptr;
  ~HfString() { hf_string_free(s); }
};

int open_engine(unsigned p, EngineHandle& h) {
  hf_status st = hf_engine_new(p, &h.e);
  if (st != HF_OK) {
    std::cerr << "error: cannot create engine for p=" << p << " (" << hf_status_name(st)
              << ")\n";
    return 2;
  }
  return 0;
}

int emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  f << payload;
  return 0;
}

int fail_with(const EngineHandle& h, hf_status st) {
  std::cerr << "error: " << hf_status_name(st) << ": " << hf_engine_last_error(h.e) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopfforge: exact Hopf-double / Yetter-Drinfeld / Hopf-algebroid "
               "verification engine at q = e^{i pi / p}"};
  app.require_subcommand(1);

  unsigned p = 2;
  uint64_t seed = 1;
  std::string suite, format = "text", out_path, algebra_name, bundle, expr_src;
  bool with_lambda = false, do_verify = false;

  auto add_common = [&](CLI::App* c, bool with_seed) {
    c->add_option("--p", p, "root-of-unity parameter (2, 3 or 5)")->required();
    if (with_seed) c->add_option("--seed", seed, "RNG seed for sampled sweeps");
    c->add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    c->add_option("--out", out_path, "write output to this file");
  };

  CLI::App* c_suite = app.add_subcommand("suite", "run a verification suite");
  c_suite->add_option("--suite", suite, "suite name (see `hopf-forge suites`)")->required();
  add_common(c_suite, true);

  CLI::App* c_suites = app.add_subcommand("suites", "list suites available at this p");
  c_suites->add_option("--p", p, "root-of-unity parameter")->required();

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate an element expression");
  c_eval->add_option("--algebra", algebra_name, "target algebra (taft, taftdual, double, "
                                                "heisenberg, uq, hbar, matp)")
      ->required();
  c_eval->add_option("expr", expr_src, "element expression, e.g. \"q^-2 * z*d + (q - q^-1)\"")
      ->required();
  add_common(c_eval, false);

  CLI::App* c_dump = app.add_subcommand("dump", "export a bundle (structure tensors/tables)");
  c_dump->add_option("--name", bundle, "bundle: taft, taftdual, double, heisenberg, uq, "
                                       "hbar, matp")
      ->required();
  add_common(c_dump, false);

  CLI::App* c_alg = app.add_subcommand(
      "algebroid", "Mat_p(C)#U smash algebroid: dump s/t/tau tables, optionally verify");
  c_alg->add_flag("--with-lambda", with_lambda, "use the Mat_p(C_2p[lambda]) base");
  c_alg->add_flag("--verify", do_verify, "run the algebroid verification suite");
  add_common(c_alg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  EngineHandle h;
  if (int rc = open_engine(p, h)) return rc;
  const bool json = format == "json";

  if (c_suites->parsed()) {
    HfString s;
    hf_status st = hf_suite_list(h.e, &s.s);
    if (st != HF_OK) return fail_with(h, st);
    return emit(s.s, out_path);
  }

  if (c_suite->parsed()) {
    int all_pass = 0;
    HfString rep;
    hf_status st = hf_run_suite(h.e, suite.c_str(), seed, json ? 0 : 1, &rep.s, &all_pass);
    if (st != HF_OK) return fail_with(h, st);
    int rc = emit(rep.s, out_path);
    if (rc) return rc;
    return all_pass ? 0 : 1;
  }

  if (c_eval->parsed()) {
    HfString out;
    hf_status st = hf_eval(h.e, algebra_name.c_str(), expr_src.c_str(), json ? 0 : 1, &out.s);
    if (st != HF_OK) return fail_with(h, st);
    return emit(out.s, out_path);
  }

  if (c_dump->parsed()) {
    HfString out;
    hf_status st = hf_export(h.e, bundle.c_str(), format.c_str(), &out.s);
    if (st != HF_OK) return fail_with(h, st);
    return emit(out.s, out_path);
  }

  if (c_alg->parsed()) {
    int rc_suite = 0;
    std::string payload;
    if (do_verify) {
      int all_pass = 0;
      HfString rep;
      const char* name = with_lambda ? "algebroid-lambda" : "algebroid";
      hf_status st = hf_run_suite(h.e, name, seed, json ? 0 : 1, &rep.s, &all_pass);
      if (st != HF_OK) return fail_with(h, st);
      payload += rep.s;
      payload += "\n";
      rc_suite = all_pass ? 0 : 1;
    }
    HfString tables;
    hf_status st = hf_export(h.e, "matp", format.c_str(), &tables.s);
    if (st != HF_OK) return fail_with(h, st);
    payload += tables.s;
    int rc = emit(payload, out_path);
    return rc ? rc : rc_suite;
  }
  return 2;
}
