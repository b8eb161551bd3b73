#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sf {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;  // sorted by name
  bool all_pass() const;
};

const std::vector<std::string>& verify_suites();  // euler, volumes, ast, hodge, k-scalar, all
// Throws InputError for an unknown suite.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed, int samples = 5);

}  // namespace sf
