#pragma once

// Seeded randomized checks behind `spincc selftest --prop`.

#include <cstdint>
#include <string>
#include <vector>

namespace spincc {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

const std::vector<std::string>& property_names();

// Throws DomainError for an unknown name.
PropertyResult run_property(const std::string& name, std::uint64_t seed, int cases);

}  // namespace spincc
