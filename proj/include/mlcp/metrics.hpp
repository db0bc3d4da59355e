#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mlcp/solver.hpp"

namespace mlcp {

/// Activity hours per calendar day, split by the day/night flag of the
/// hosting MO. An activity is attributed to the day containing its MO start.
struct DailyActivity {
  std::vector<double> daytime_hours;    // one entry per day, ceil(T/24) days
  std::vector<double> nighttime_hours;
};

DailyActivity daily_activity(const Instance& inst, const Solution& sol);

/// Total daytime hours over total activity hours; 0 when nothing is
/// scheduled.
double mean_daytime_share(const DailyActivity& series);

/// Total activity hours divided by the number of days.
double mean_total_hours(const DailyActivity& series);

struct ScenarioReport {
  std::string scenario;
  int lmax = 0;
  bool feasible = false;
  double daytime_share = 0.0;
  double total_hours_per_day = 0.0;
  std::map<std::string, double> per_location_day_hours;  // daytime hours/day
  std::vector<std::string> y_day;
};

ScenarioReport scenario_report(const std::string& scenario, int lmax,
                               const Instance& inst, const SolveResult& result);

struct ConsistencyRow {
  std::string location;
  int scenarios_open = 0;
  double mean_day_hours = 0.0;  // over the scenarios where it was open
};

/// Per location: in how many scenario reports it was opened, and its mean
/// daytime workload across those. Infeasible reports are skipped.
std::vector<ConsistencyRow> consistency(const std::vector<ScenarioReport>& reports);

/// share.csv: scenario,lmax,mean_daytime_share,mean_total_hours
/// (infeasible cells keep their row with "infeasible" in both value columns)
void write_share_csv(const std::vector<ScenarioReport>& reports, std::ostream& out);

/// locations.csv: location,scenarios_open,mean_day_hours
void write_locations_csv(const std::vector<ConsistencyRow>& rows, std::ostream& out);

}  // namespace mlcp
