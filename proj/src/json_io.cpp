#include "spincc/json_io.hpp"

#include <type_traits>

#include "spincc/errors.hpp"

namespace spincc {

using nlohmann::json;

json ring_to_json(const RingSpec& ring) {
  json vars = json::array();
  for (const auto& v : ring.variables()) vars.push_back(json::array({v.name, v.degree}));
  return {{"vars", vars}, {"mod", ring.modulus()}};
}

Ring ring_from_json(const json& j) {
  try {
    std::vector<Variable> vars;
    for (const auto& v : j.at("vars")) {
      vars.push_back({v.at(0).get<std::string>(), v.at(1).get<int>()});
    }
    return RingSpec::make(std::move(vars), j.value("mod", 0));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed ring: ") + e.what());
  }
}

namespace {

template <class P>
json terms_json(const P& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"coeff", c.get_str()}, {"exps", m.exponents()}});
  }
  return {{"ring", ring_to_json(p.spec())}, {"terms", terms}};
}

template <class P, class C>
P from_json_impl(const json& j) {
  if (!j.is_object() || !j.contains("ring")) throw DomainError("malformed polynomial: missing \"ring\"");
  Ring ring = ring_from_json(j["ring"]);
  P p(ring);
  try {
    for (const auto& t : j.at("terms")) {
      auto exps = t.at("exps").get<std::vector<Exponent>>();
      C c;
      if (c.set_str(t.at("coeff").get<std::string>(), 10) != 0) {
        throw DomainError("malformed coefficient " + t.at("coeff").dump());
      }
      if constexpr (std::is_same_v<C, mpq_class>) c.canonicalize();
      p.accumulate(Monomial(*ring, std::move(exps)), c);
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed polynomial: ") + e.what());
  }
  return p;
}

}  // namespace

json to_json(const Poly& p) { return terms_json(p); }
json to_json(const RatPoly& p) { return terms_json(p); }

Poly poly_from_json(const json& j) { return from_json_impl<Poly, mpz_class>(j); }

RatPoly rat_poly_from_json(const json& j) {
  return from_json_impl<RatPoly, mpq_class>(j);
}

}  // namespace spincc
