#pragma once

// Golden corpus and cross-module checks behind `spincc selftest`.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spincc/ring.hpp"

namespace spincc {

// One corpus line: run `argv` (plus --format json) and compare output key
// `item` against `expect`. `printed` holds the printed display when it
// differs from the computed value; `note` explains the difference.
struct GoldenEntry {
  std::string id;
  std::string cite;
  std::vector<std::string> argv;
  std::string item;
  nlohmann::json expect;
  std::optional<std::string> printed;
  std::optional<std::string> note;
};

struct CheckOutcome {
  std::string id;
  bool pass = false;
  std::string detail;
};

// $SPINCC_CORPUS if set, else the golden.json installed with the sources.
std::string default_corpus_path();
std::vector<GoldenEntry> load_corpus(const std::string& path);

CheckOutcome check_entry(const GoldenEntry& entry);
// real_reduction vs delta mod 2 and the Spin^c(8) presentation relation.
std::vector<CheckOutcome> cross_checks(const std::string& filter);

// "c1*c3*c4: expected -1, got 1" lines for the first `limit` differing
// monomials; empty when equal.
std::string describe_difference(const Poly& expected, const Poly& actual, std::size_t limit = 8);
std::string describe_difference(const RatPoly& expected, const RatPoly& actual, std::size_t limit = 8);

}  // namespace spincc
