#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mlcp/time.hpp"

namespace mlcp {

/// One planned movement of a rolling stock unit.
struct Trip {
  std::string dep_station;
  Minutes dep_time = 0;
  std::string arr_station;
  Minutes arr_time = 0;
};

/// All trips of one unit, ordered by departure time.
struct UnitRoster {
  std::string unit_id;
  std::vector<Trip> trips;
};

/// The full planned circulation over the horizon. Input data, never modified
/// by the solver.
struct Circulation {
  std::vector<UnitRoster> rosters;  // sorted by unit_id
  Minutes horizon = 0;              // T, minutes since midnight of day 1
};

/// One violated roster/trip rule. trip_index is 1-based; 0 means the record
/// concerns the roster or circulation as a whole.
struct RuleViolation {
  std::string unit_id;
  int trip_index = 0;
  std::string rule;
  std::string message;
};

/// Checks trip and roster invariants. Returns one record per violation;
/// empty means the circulation is valid. Rule ids:
///   positive-duration, horizon, overlap, station-continuity,
///   duplicate-unit, horizon-positive
std::vector<RuleViolation> validate_circulation(const Circulation& circ);

/// Reads the circulation CSV
///   unit_id,dep_station,dep_day,dep_clock,arr_station,arr_day,arr_clock
/// Rows may arrive in any order; ingestion groups by unit and sorts by
/// departure time. The horizon is the last arrival rounded up to whole days.
/// Throws FormatError on malformed input.
Circulation read_circulation_csv(std::istream& in);
Circulation read_circulation_csv_file(const std::string& path);

void write_circulation_csv(const Circulation& circ, std::ostream& out);
void write_circulation_csv_file(const Circulation& circ, const std::string& path);

/// Restricts the circulation to the first tau_days days: trips departing at
/// or after the cut are dropped, a trip still running at the cut keeps its
/// place with the arrival clamped to the cut (so no trailing standstill is
/// created for it), and units left without trips are removed.
Circulation truncate_circulation(const Circulation& circ, int tau_days);

}  // namespace mlcp
