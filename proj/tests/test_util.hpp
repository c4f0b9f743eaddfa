#pragma once

#include <iostream>

#include "doctest.h"
#include "report.hpp"

namespace hopfforge::testutil {

inline void require_all_pass(const Report& rep) {
  if (!rep.all_pass()) {
    for (const auto& c : rep.checks)
      if (!c.pass) std::cerr << "FAIL " << rep.suite << "/" << c.name << " " << c.witness << "\n";
  }
  REQUIRE(rep.all_pass());
}

}  // namespace hopfforge::testutil
