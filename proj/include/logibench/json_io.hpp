#pragma once

#include <nlohmann/json.hpp>

#include "logibench/assignment.hpp"
#include "logibench/generator.hpp"
#include "logibench/planner.hpp"
#include "logibench/report.hpp"

namespace logibench {

using Json = nlohmann::json;

/// Field-for-field instance document. Positions are [x, y] pairs.
Json to_json(const Instance& inst);
/// Inverse of to_json(Instance); the result is validated.
Instance instance_from_json(const Json& doc);

Json to_json(const Plan& plan);
Json to_json(const State& state);
/// Diagnostics with their fact and English forms; states only when `with_trace`.
Json to_json(const DiagnosticReport& report, bool with_trace = false);
Json to_json(const SolveStats& stats);
Json to_json(const Assignment& a);

/// Generator overrides from a flat JSON object such as {"x": 11, "H": true}.
GenOverrides overrides_from_json(const Json& doc);

}  // namespace logibench
