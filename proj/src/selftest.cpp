#include "spincc/selftest.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "spincc/chern.hpp"
#include "spincc/cli.hpp"
#include "spincc/errors.hpp"
#include "spincc/json_io.hpp"
#include "spincc/spin_classes.hpp"
#include "spincc/steenrod.hpp"
#include "spincc/text.hpp"

#ifndef SPINCC_DATA_DIR
#define SPINCC_DATA_DIR "data"
#endif

namespace spincc {

namespace {

using nlohmann::json;

template <class P>
std::string describe_difference_impl(const P& expected, const P& actual, std::size_t limit) {
  std::set<Monomial, std::greater<>> monomials;
  for (const auto& [m, c] : expected.terms()) monomials.insert(m);
  for (const auto& [m, c] : actual.terms()) monomials.insert(m);
  std::ostringstream out;
  std::size_t shown = 0, hidden = 0;
  for (const auto& m : monomials) {
    auto e = expected.coefficient(m), a = actual.coefficient(m);
    if (e == a) continue;
    if (shown == limit) {
      ++hidden;
      continue;
    }
    ++shown;
    out << "  " << render_monomial(expected.spec(), m) << ": expected " << e.get_str() << ", got "
        << a.get_str() << "\n";
  }
  if (hidden) out << "  ... and " << hidden << " more\n";
  return out.str();
}

std::string required_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw DomainError(std::string("corpus entry needs a string field \"") + key + "\"");
  }
  return j[key].get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  if (!j[key].is_string()) throw DomainError(std::string("corpus field \"") + key + "\" must be a string");
  return j[key].get<std::string>();
}

bool is_poly_json(const json& j) { return j.is_object() && j.contains("ring") && j.contains("terms"); }

std::string compare_poly(const json& actual, const json& expect) {
  if (!expect.is_string()) return "  expected value must be polynomial text\n";
  Ring ring = ring_from_json(actual["ring"]);
  if (ring->modulus() == 0) {
    return describe_difference(parse_rational(expect.get<std::string>(), ring), rat_poly_from_json(actual));
  }
  return describe_difference(parse(expect.get<std::string>(), ring), poly_from_json(actual));
}

bool matches(const std::string& id, const std::string& filter) {
  return filter.empty() || id.find(filter) != std::string::npos;
}

}  // namespace

std::string describe_difference(const Poly& expected, const Poly& actual, std::size_t limit) {
  require_same_ring(expected.ring(), actual.ring(), "describe_difference");
  return describe_difference_impl(expected, actual, limit);
}

std::string describe_difference(const RatPoly& expected, const RatPoly& actual, std::size_t limit) {
  require_same_ring(expected.ring(), actual.ring(), "describe_difference");
  return describe_difference_impl(expected, actual, limit);
}

std::string default_corpus_path() {
  if (const char* env = std::getenv("SPINCC_CORPUS"); env && *env) return env;
  return std::string(SPINCC_DATA_DIR) + "/golden.json";
}

std::vector<GoldenEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open corpus " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("corpus " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw DomainError("corpus " + path + " needs an \"entries\" array");
  }
  std::vector<GoldenEntry> out;
  std::set<std::string> ids;
  for (const auto& j : doc["entries"]) {
    GoldenEntry e;
    e.id = required_string(j, "id");
    e.cite = required_string(j, "cite");
    e.item = required_string(j, "item");
    if (!j.contains("argv") || !j["argv"].is_array()) throw DomainError("corpus entry " + e.id + " needs argv");
    for (const auto& a : j["argv"]) {
      if (!a.is_string()) throw DomainError("corpus entry " + e.id + ": argv must hold strings");
      e.argv.push_back(a.get<std::string>());
    }
    if (!j.contains("expect")) throw DomainError("corpus entry " + e.id + " needs expect");
    e.expect = j["expect"];
    e.printed = optional_string(j, "printed");
    e.note = optional_string(j, "note");
    if (!ids.insert(e.id).second) throw DomainError("duplicate corpus id " + e.id);
    out.push_back(std::move(e));
  }
  return out;
}

CheckOutcome check_entry(const GoldenEntry& entry) {
  CheckOutcome result{entry.id, false, {}};
  std::vector<std::string> argv = entry.argv;
  argv.insert(argv.end(), {"--format", "json"});
  std::ostringstream out, err;
  int code = cli::run(argv, out, err);
  if (code != cli::kExitOk) {
    result.detail = "  exit " + std::to_string(code) + ": " + err.str();
    return result;
  }
  json doc;
  try {
    doc = json::parse(out.str());
  } catch (const json::parse_error& e) {
    result.detail = std::string("  output is not JSON: ") + e.what() + "\n";
    return result;
  }
  if (!doc.is_object() || !doc.contains(entry.item)) {
    result.detail = "  output has no item " + entry.item + "\n";
    return result;
  }
  json actual = doc[entry.item];
  if (actual.is_object() && actual.contains("bockstein_of")) actual = actual["bockstein_of"];

  try {
    if (is_poly_json(actual)) {
      result.detail = compare_poly(actual, entry.expect);
    } else if (actual != entry.expect) {
      result.detail = "  expected " + entry.expect.dump() + ", got " + actual.dump() + "\n";
    }
  } catch (const Error& e) {
    result.detail = std::string("  cannot compare: ") + e.what() + "\n";
    return result;
  }
  result.pass = result.detail.empty();
  if (result.pass && entry.printed) result.detail = "printed display differs, see note";
  if (!result.pass) result.detail = entry.item + " (" + entry.cite + "):\n" + result.detail;
  return result;
}

std::vector<CheckOutcome> cross_checks(const std::string& filter) {
  std::vector<CheckOutcome> out;
  const int r_max = 3;
  bool any_reduction = false;
  for (int r = 1; r <= r_max; ++r) any_reduction |= matches("cross.real-reduction.r" + std::to_string(r), filter);
  if (any_reduction) {
    BsoModel bso(16);
    UcModel uc(8);
    auto w = bso.derived_w2(r_max);
    auto d = uc.delta_sequence(r_max);
    const Ring& target = bso.chern_ring_mod2();
    for (int r = 1; r <= r_max; ++r) {
      std::string id = "cross.real-reduction.r" + std::to_string(r);
      if (!matches(id, filter)) continue;
      Poly reduced = reduce_mod(d.terms[std::size_t(r)], 2);
      CheckOutcome c{id, false, {}};
      bool y_free = true;
      for (const auto& [m, coeff] : reduced.terms()) y_free &= m[0] == 0;
      if (!y_free) {
        c.detail = "  delta^" + std::to_string(r) + "(u0) mod 2 involves y\n";
      } else {
        Poly mapped = substitute(reduced, target, {{"y", Poly(target)}});
        c.detail = describe_difference(mapped, bso.real_reduction(w[std::size_t(r)].value));
        c.pass = c.detail.empty();
      }
      out.push_back(std::move(c));
    }
  }
  if (matches("cross.spin8-presentation", filter)) {
    Spin8Result s = spin8_consistency(RelationForm::Presentation);
    CheckOutcome c{"cross.spin8-presentation", s.holds, {}};
    if (!s.holds) c.detail = "  residual " + render(s.residual) + "\n";
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace spincc
