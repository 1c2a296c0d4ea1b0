#include "stagger/json_io.hpp"

#include <fstream>

#include "stagger/errors.hpp"

namespace stagger {

using nlohmann::json;

Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mode") || !j.contains("items"))
    throw InputError("instance: expected {mode, items}");
  std::string mode_str = j.at("mode").get<std::string>();
  Mode mode;
  if (mode_str == "discrete")
    mode = Mode::Discrete;
  else if (mode_str == "continuous")
    mode = Mode::Continuous;
  else
    throw InputError("instance: mode must be 'discrete' or 'continuous'");

  std::vector<Item> items;
  for (const auto& ij : j.at("items")) {
    if (!ij.contains("T") || !ij.contains("H"))
      throw InputError("instance: each item needs T and H");
    items.push_back(Item{ij.at("T").get<std::int64_t>(), ij.at("H").get<std::int64_t>()});
  }
  return Instance(std::move(items), mode);
}

json instance_to_json(const Instance& instance) {
  json items = json::array();
  for (const Item& it : instance.items())
    items.push_back({{"T", it.interval}, {"H", it.quantity}});
  return json{{"mode", instance.mode() == Mode::Discrete ? "discrete" : "continuous"},
              {"items", items}};
}

ShiftVector shifts_from_json(const Instance& instance, const json& j) {
  if (!j.is_object() || !j.contains("shifts"))
    throw InputError("shifts: expected {shifts:[...]}");
  std::vector<Rat> shifts;
  for (const auto& sj : j.at("shifts")) {
    if (sj.is_number_integer())
      shifts.emplace_back(static_cast<long>(sj.get<std::int64_t>()));
    else
      shifts.push_back(parse_rat(sj.get<std::string>()));
  }
  return ShiftVector(instance, std::move(shifts));
}

json shifts_to_json(const ShiftVector& shifts) {
  json arr = json::array();
  for (const Rat& s : shifts.shifts()) arr.push_back(rat_to_string(s));
  return json{{"shifts", arr}};
}

namespace {
json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}
}  // namespace

Instance load_instance(const std::string& path) {
  return instance_from_json(load_json(path));
}

ShiftVector load_shifts(const Instance& instance, const std::string& path) {
  return shifts_from_json(instance, load_json(path));
}

}  // namespace stagger
