#include "mlcp/solution_io.hpp"

namespace mlcp {

nlohmann::ordered_json solution_to_json(const Instance& inst,
                                        const SolveResult& result) {
  nlohmann::ordered_json j;
  j["y_day"] = result.solution.y_day;
  j["objective"] = {{"night", result.solution.objective.night},
                    {"total", result.solution.objective.total}};
  auto schedules = nlohmann::ordered_json::array();
  if (result.ok()) {
    for (std::size_t u = 0; u < result.solution.schedules.size(); ++u) {
      const auto& unit = inst.units[u];
      for (const auto& [mo_pos, type_slot] : result.solution.schedules[u].picks) {
        const Opportunity& mo = unit.mos[static_cast<std::size_t>(mo_pos)];
        nlohmann::ordered_json row;
        row["unit"] = unit.unit_id;
        row["j"] = mo.index;
        row["k"] = inst.types[static_cast<std::size_t>(type_slot)].id;
        row["location"] = mo.location;
        row["start"] = to_hours(mo.start);
        row["end"] = to_hours(mo.end);
        row["is_day"] = mo.is_day;
        schedules.push_back(std::move(row));
      }
    }
  }
  j["schedules"] = std::move(schedules);
  j["status"] = result.ok() ? "optimal" : "infeasible";
  auto certs = nlohmann::ordered_json::array();
  for (const auto& c : result.certificates) {
    certs.push_back({{"unit", c.unit_id},
                     {"type", c.type_id},
                     {"window_start_hours", c.window_start_hours},
                     {"window_end_hours", c.window_end_hours}});
  }
  j["certificates"] = std::move(certs);
  j["infeasible_units"] = result.infeasible_units;
  return j;
}

std::string solution_to_string(const Instance& inst, const SolveResult& result) {
  return solution_to_json(inst, result).dump(2) + "\n";
}

}  // namespace mlcp
