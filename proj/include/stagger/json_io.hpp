#pragma once

#include <string>

#include <json.hpp>

#include "stagger/instance.hpp"

namespace stagger {

// {"mode":"discrete"|"continuous","items":[{"T":4,"H":8},...]}
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& instance);

// {"shifts":["3","1/2",...]}; rationals as decimal strings or "p/q".
ShiftVector shifts_from_json(const Instance& instance, const nlohmann::json& j);
nlohmann::json shifts_to_json(const ShiftVector& shifts);

Instance load_instance(const std::string& path);
ShiftVector load_shifts(const Instance& instance, const std::string& path);

}  // namespace stagger
