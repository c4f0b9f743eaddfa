#pragma once

// Named verification suites over an Engine, and the byte-stable bundle
// exports the CLI serves.

#include "engine.hpp"

namespace hopfforge {

std::vector<std::string> suite_names();
bool suite_supports(const std::string& suite, unsigned p);

// Runs one suite; the report carries p, the seed, per-check status and
// witnesses, and wall time.
Report run_suite(Engine& eng, const std::string& suite, uint64_t seed);

// Bundle dumps ("taft", "taftdual", "double", "heisenberg", "uq", "hbar",
// "matp") in "json" or "text" format; output is byte-stable across runs.
std::string export_bundle(Engine& eng, const std::string& name, const std::string& format);

}  // namespace hopfforge
