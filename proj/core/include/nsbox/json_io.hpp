#pragma once

#include <string>

#include <json.hpp>

#include "nsbox/behaviour.hpp"
#include "nsbox/local_polytope.hpp"
#include "nsbox/wiring.hpp"

namespace nsbox {

using nlohmann::json;

/// Behaviour file: {"mA","mB","dA","dB": ints, "p": ["1/2","0",...]} with the
/// table in canonical index order; writers emit reduced fractions.
json behaviour_to_json(const Behaviour& p);
Behaviour behaviour_from_json(const json& j);

/// Bell functional file: {"s": [rational strings], "S": rational string}.
json functional_to_json(const BellFunctional& f);
BellFunctional functional_from_json(const json& j);

/// Wiring file: {"gA": [...], "hA": [[...] per input], "gB": [...],
/// "hB": [[...] per input]} with 1-based values; the setting is implied by
/// the array shapes (outputs from hA/hB, inputs from gA/gB).
json wiring_to_json(const LocalWiring& w);
LocalWiring wiring_from_json(const json& j);

json deterministic_point_to_json(const DeterministicPoint& d);
DeterministicPoint deterministic_point_from_json(const json& j);

/// Parses a whole document, mapping parse failures to Error{shape_mismatch}.
json parse_json_text(const std::string& text);

}  // namespace nsbox
