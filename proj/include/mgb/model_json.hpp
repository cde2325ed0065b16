#pragma once

#include <json.hpp>

#include "mgb/processes.hpp"

// JSON form of an increment model: an object {"kind": ..., parameters...}.
//
//   {"kind": "rademacher"}
//   {"kind": "two_point_sym", "y": 1, "p": 0.02}
//   {"kind": "two_point_sym", "y": 1, "v": 1, "n": 100}       p = v^2/(n y^2)
//   {"kind": "finite_support", "atoms": [[-2, 0.25], [1, 0.75]]}
//   {"kind": "bounded_supermg", "a": 1, "atoms": [[-1, 0.6], [1, 0.4]]}
//   {"kind": "sym_pareto", "alpha": 1.2, "scale": 1}
//
// An optional "id" string labels the model in reports. Any other key is
// rejected.
namespace mgb {

IncrementModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const IncrementModel& model);

/// The "id" field when present, otherwise the kind name.
std::string model_id_from_json(const nlohmann::json& j);

}  // namespace mgb
