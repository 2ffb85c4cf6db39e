#pragma once

#include <string>
#include <vector>

namespace multiaxial {

struct SelftestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reference corpus: GHZ, W, Bell, product states and the spin-1 mixed
/// families, each checked against closed-form values.
std::vector<SelftestCase> run_selftest();

}  // namespace multiaxial
