#pragma once

#include <string>
#include <vector>

namespace acceptance {

struct Check {
  std::string what, claimed, computed;
  bool pass = false;
};

struct Criterion {
  int id = 0;
  std::string title;
  double limit_s = 0;  // pinned wall-clock limit
  double seconds = 0;
  std::vector<Check> checks;
  std::string error;  // exception text, if any
  bool pass() const;
};

std::vector<int> ids();
// Pieces that the command line also runs with other parameters.
std::vector<Check> cosimp_suite(int t);
std::vector<Check> cech_suite(const std::vector<int>& degrees, int lo, int hi);
Criterion run(int id);

}  // namespace acceptance
