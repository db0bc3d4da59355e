#include "mlcp/metrics.hpp"

#include <cstdio>
#include <numeric>
#include <ostream>

namespace mlcp {

namespace {

std::size_t day_count(Minutes horizon) {
  return static_cast<std::size_t>((horizon + kMinutesPerDay - 1) / kMinutesPerDay);
}

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

DailyActivity daily_activity(const Instance& inst, const Solution& sol) {
  DailyActivity series;
  series.daytime_hours.assign(day_count(inst.horizon), 0.0);
  series.nighttime_hours.assign(day_count(inst.horizon), 0.0);
  for (std::size_t u = 0; u < sol.schedules.size() && u < inst.units.size(); ++u) {
    for (const auto& [mo_pos, type_slot] : sol.schedules[u].picks) {
      const Opportunity& mo = inst.units[u].mos[static_cast<std::size_t>(mo_pos)];
      const auto day = static_cast<std::size_t>(mo.start / kMinutesPerDay);
      const double v = inst.types[static_cast<std::size_t>(type_slot)].duration_hours;
      (mo.is_day ? series.daytime_hours : series.nighttime_hours)[day] += v;
    }
  }
  return series;
}

double mean_daytime_share(const DailyActivity& series) {
  const double day = std::accumulate(series.daytime_hours.begin(),
                                     series.daytime_hours.end(), 0.0);
  const double night = std::accumulate(series.nighttime_hours.begin(),
                                       series.nighttime_hours.end(), 0.0);
  const double total = day + night;
  return total > 0.0 ? day / total : 0.0;
}

double mean_total_hours(const DailyActivity& series) {
  if (series.daytime_hours.empty()) return 0.0;
  const double day = std::accumulate(series.daytime_hours.begin(),
                                     series.daytime_hours.end(), 0.0);
  const double night = std::accumulate(series.nighttime_hours.begin(),
                                       series.nighttime_hours.end(), 0.0);
  return (day + night) / static_cast<double>(series.daytime_hours.size());
}

ScenarioReport scenario_report(const std::string& scenario, int lmax,
                               const Instance& inst, const SolveResult& result) {
  ScenarioReport rep;
  rep.scenario = scenario;
  rep.lmax = lmax;
  rep.feasible = result.ok();
  if (!rep.feasible) return rep;

  const DailyActivity series = daily_activity(inst, result.solution);
  rep.daytime_share = mean_daytime_share(series);
  rep.total_hours_per_day = mean_total_hours(series);
  rep.y_day = result.solution.y_day;

  const double days = static_cast<double>(series.daytime_hours.size());
  for (std::size_t u = 0; u < result.solution.schedules.size(); ++u) {
    for (const auto& [mo_pos, type_slot] : result.solution.schedules[u].picks) {
      const Opportunity& mo = inst.units[u].mos[static_cast<std::size_t>(mo_pos)];
      if (!mo.is_day) continue;
      rep.per_location_day_hours[mo.location] +=
          inst.types[static_cast<std::size_t>(type_slot)].duration_hours / days;
    }
  }
  return rep;
}

std::vector<ConsistencyRow> consistency(const std::vector<ScenarioReport>& reports) {
  std::map<std::string, std::pair<int, double>> tally;  // open count, hour sum
  for (const auto& rep : reports) {
    if (!rep.feasible) continue;
    for (const auto& loc : rep.y_day) {
      auto& [count, hours] = tally[loc];
      ++count;
      auto it = rep.per_location_day_hours.find(loc);
      hours += it != rep.per_location_day_hours.end() ? it->second : 0.0;
    }
  }
  std::vector<ConsistencyRow> out;
  out.reserve(tally.size());
  for (const auto& [loc, agg] : tally) {
    out.push_back({loc, agg.first,
                   agg.first > 0 ? agg.second / agg.first : 0.0});
  }
  return out;
}

void write_share_csv(const std::vector<ScenarioReport>& reports, std::ostream& out) {
  out << "scenario,lmax,mean_daytime_share,mean_total_hours\n";
  for (const auto& rep : reports) {
    out << rep.scenario << ',' << rep.lmax << ',';
    if (rep.feasible) {
      out << fmt6(rep.daytime_share) << ',' << fmt6(rep.total_hours_per_day);
    } else {
      out << "infeasible,infeasible";
    }
    out << '\n';
  }
}

void write_locations_csv(const std::vector<ConsistencyRow>& rows, std::ostream& out) {
  out << "location,scenarios_open,mean_day_hours\n";
  for (const auto& row : rows) {
    out << row.location << ',' << row.scenarios_open << ','
        << fmt6(row.mean_day_hours) << '\n';
  }
}

}  // namespace mlcp
