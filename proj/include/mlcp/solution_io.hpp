#pragma once

#include <string>

#include "json.hpp"
#include "mlcp/solver.hpp"

namespace mlcp {

/// Serializes a solve result:
///   { "y_day": [...], "objective": {"night","total"}, "schedules": [...],
///     "status": "optimal|infeasible", "certificates": [...],
///     "infeasible_units": [...] }
/// Schedule entries are sorted by (unit, j, k); output is deterministic.
nlohmann::ordered_json solution_to_json(const Instance& inst,
                                        const SolveResult& result);

std::string solution_to_string(const Instance& inst, const SolveResult& result);

}  // namespace mlcp
