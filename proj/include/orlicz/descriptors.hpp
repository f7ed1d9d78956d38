#pragma once

#include "orlicz/measure_space.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/planar_norm.hpp"

#include <json.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orlicz {

/// Malformed user input (descriptor syntax or values rejected by a constructor).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// "power:2", "exp_minus", "flat_then_power:1,2", "pwl:0,0,1,0,2,1", or a
/// JSON object such as {"kind":"power","q":2}.
OrliczFunction parse_phi(std::string_view text);
OrliczFunction phi_from_json(const nlohmann::json &j);

/// "l1", "linf", "lq:2", or a JSON object such as {"kind":"lq","q":2} or
/// {"kind":"boundary","samples":[[angle,radius],...]}.
PlanarNorm parse_planar_norm(std::string_view text);
PlanarNorm planar_norm_from_json(const nlohmann::json &j);

/// "counting:4", "weights:1,0.25,inf", or a JSON object
/// {"atoms":[{"w":1},{"w":0.25},{"w":"inf"}]}.
std::shared_ptr<const MeasureSpace> parse_space(std::string_view text);
std::shared_ptr<const MeasureSpace> space_from_json(const nlohmann::json &j);

/// "3,4" or a JSON array / {"values":[...]}.
std::vector<double> parse_values(std::string_view text);
std::vector<double> values_from_json(const nlohmann::json &j);

/// "lo:hi:count" (count equispaced points including both ends), a single
/// number, or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

} // namespace orlicz
