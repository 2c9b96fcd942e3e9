#pragma once

#include <json.hpp>

#include "spincc/ring.hpp"

namespace spincc {

// {"ring":{"vars":[["w2",2],...],"mod":2},"terms":[{"coeff":"-2","exps":[1,0,...]}]}
nlohmann::json ring_to_json(const RingSpec& ring);
Ring ring_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const RatPoly& p);

// Coefficients in "a/b" form are rejected by poly_from_json.
Poly poly_from_json(const nlohmann::json& j);
RatPoly rat_poly_from_json(const nlohmann::json& j);

}  // namespace spincc
