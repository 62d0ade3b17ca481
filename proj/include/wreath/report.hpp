#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wreath {

// Outcome of one verification pass: what was checked, whether it held, and
// enough witness text to reproduce any failure.
struct Report {
  std::string name;
  bool pass = true;
  uint64_t checked = 0;
  std::vector<std::string> witnesses;          // failures only
  std::map<std::string, std::string> params;   // knobs the run used

  void fail_with(std::string witness) {
    pass = false;
    if (witnesses.size() < 32) witnesses.push_back(std::move(witness));
  }
};

} // namespace wreath
