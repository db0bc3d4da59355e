#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mlcp/opportunities.hpp"
#include "mlcp/time.hpp"

namespace mlcp {

/// A recurring maintenance activity: fixed duration, and a maximum interval
/// between the end of one occurrence and the start of the next.
struct MaintenanceType {
  int id = 0;
  double duration_hours = 0.0;
  double interval_hours = 0.0;
};

/// Potential maintenance locations. Nighttime availability is fixed input;
/// day_candidates lists the locations eligible for daytime opening.
struct LocationCatalog {
  std::vector<std::string> locations;       // sorted, unique
  std::map<std::string, bool> night_open;   // one entry per location
  std::vector<std::string> day_candidates;  // sorted subset of locations

  bool is_night_open(const std::string& loc) const;
  bool is_candidate(const std::string& loc) const;
};

struct BuildError : std::runtime_error {
  explicit BuildError(const std::string& what) : std::runtime_error(what) {}
};

/// Instance configuration as read from JSON (see docs/README). Defaults: two
/// types (0.5h/24h and 1h/48h), all locations open at night, all locations
/// daytime candidates, b = 0, window 07:00-19:00, epsilon 0.001.
struct InstanceConfig {
  std::vector<MaintenanceType> types;
  // When absent, the catalog is derived from the opportunities (all
  // locations open at night).
  std::optional<std::vector<std::pair<std::string, bool>>> locations;
  std::optional<std::vector<std::string>> day_candidates;
  int lmax_day = 0;
  std::map<std::string, double> b_hours;  // "unit:type_id" -> hours
  Minutes day_start = 7 * 60;
  Minutes night_start = 19 * 60;
  double epsilon = 0.001;
  bool include_boundary_mos = true;
  bool guard_initial = true;
  DayRule day_rule = DayRule::Prose;
};

InstanceConfig default_instance_config();
InstanceConfig load_instance_config(std::istream& in);
InstanceConfig load_instance_config_file(const std::string& path);

/// Successor structure: for unit u, MO position j (0-based) and type slot k,
/// next[u][j][k] lists the 0-based MO positions whose start falls in
/// (end_j, end_j + interval_k]. initial[u][k] lists positions with
/// start <= interval_k + b.
struct SuccessorSets {
  std::vector<std::vector<std::vector<std::vector<int>>>> next;
  std::vector<std::vector<std::vector<int>>> initial;
};

/// Positions p with end_j < start_p <= end_j + interval_hours, ascending.
std::vector<int> successor_set(const std::vector<Opportunity>& mos, int j,
                               double interval_hours);

/// Positions p with start_p <= interval_hours + b_hours, ascending.
std::vector<int> initial_set(const std::vector<Opportunity>& mos,
                             double interval_hours, double b_hours);

/// The assembled problem: opportunities, types, catalog, budget, initial
/// offsets and precomputed successor sets. Immutable once built.
struct Instance {
  std::vector<UnitOpportunities> units;  // sorted by unit_id
  std::vector<MaintenanceType> types;    // sorted by id
  LocationCatalog catalog;
  int lmax_day = 0;
  std::vector<std::vector<double>> b_hours;  // [unit][type slot]
  Minutes horizon = 0;
  Minutes day_start = 7 * 60;
  Minutes night_start = 19 * 60;
  double epsilon = 0.001;
  bool guard_initial = true;
  bool epsilon_bound_ok = true;  // epsilon * max possible activities < 1
  SuccessorSets successors;

  int type_slot(int type_id) const;  // -1 when unknown
  int unit_slot(const std::string& unit_id) const;
  std::size_t total_possible_activities() const;
  /// Whether the requirement "schedule type k at least once, starting no
  /// later than b + interval" applies to (unit u, type slot k).
  bool initial_requirement_active(int u, int k) const;
};

/// Assembles the instance and materializes successor sets. Every MO location
/// must be present in the catalog; unknown locations raise BuildError naming
/// the location. Warns on stderr when the epsilon equivalence bound fails.
Instance build_instance(std::vector<UnitOpportunities> mos,
                        const InstanceConfig& config, Minutes horizon);

}  // namespace mlcp
