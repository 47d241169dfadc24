#pragma once

#include "carpool/equilibrium.hpp"
#include "carpool/preferences.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace carpool {

using Json = nlohmann::json;

// Rationals travel as exact strings ("11/1", "1/3"); plain JSON numbers and
// decimal strings are accepted on input.
Rat rat_from_json(const Json& value);
Json rat_to_json(const Rat& value, bool as_float);

// Instance document: nodes/origin/destination/edges/riders, gamma either
// shared at the top level or per rider (exactly one of the two), delta,
// car_capacity. Throws ValidationError with a field path on schema errors.
MarketInstance parse_instance(const Json& doc, std::size_t max_routes);
MarketInstance load_instance(const std::string& path, std::size_t max_routes);

Json instance_to_json(const MarketInstance& instance, bool as_float = false);

// Result document: trips/payments/tolls/utilities plus report and
// diagnostics blocks added by the CLI.
Json outcome_to_json(const MarketInstance& instance, const Outcome& outcome,
                     bool as_float);
Outcome outcome_from_json(const MarketInstance& instance, const Json& doc);

Json report_to_json(const EquilibriumReport& report);

}  // namespace carpool
