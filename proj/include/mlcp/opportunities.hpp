#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mlcp/circulation.hpp"
#include "mlcp/time.hpp"

namespace mlcp {

/// How a standstill is classified as daytime.
///   Prose:   start and end lie in [day_start, night_start) of the same day.
///   EndOnly: only the end time is tested against the window.
enum class DayRule { Prose, EndOnly };

/// A standstill window of one unit during which maintenance may be scheduled.
struct Opportunity {
  int index = 0;  // 1-based position within the unit's list
  std::string location;
  Minutes start = 0;
  Minutes end = 0;
  bool is_day = false;
};

struct UnitOpportunities {
  std::string unit_id;
  std::vector<Opportunity> mos;
};

/// Daytime test for a window. day_start/night_start are minutes-of-day,
/// 0 <= day_start < night_start < 1440.
bool classify_day(Minutes start, Minutes end, Minutes day_start,
                  Minutes night_start, DayRule rule = DayRule::Prose);

struct ExtractOptions {
  Minutes day_start = 7 * 60;
  Minutes night_start = 19 * 60;
  bool include_boundaries = true;
  DayRule rule = DayRule::Prose;
};

/// Turns every strictly positive gap between consecutive trips into an
/// Opportunity at the shared station. With include_boundaries, the idle
/// stretches before the first departure and after the last arrival (up to
/// the horizon) are included as well. The circulation must be valid.
std::vector<UnitOpportunities> extract_opportunities(const Circulation& circ,
                                                     const ExtractOptions& opt);

/// CSV export: unit_id,j,location,start_hours,end_hours,is_day with hours
/// printed at 6 decimal places.
void write_opportunity_csv(const std::vector<UnitOpportunities>& units,
                           std::ostream& out);

}  // namespace mlcp
