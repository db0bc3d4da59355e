#include "mlcp/opportunities.hpp"

#include <ostream>
#include <stdexcept>

namespace mlcp {

bool classify_day(Minutes start, Minutes end, Minutes day_start,
                  Minutes night_start, DayRule rule) {
  const Minutes end_of_day = end % kMinutesPerDay;
  const bool end_in_window = day_start <= end_of_day && end_of_day < night_start;
  if (rule == DayRule::EndOnly) return end_in_window;
  if (start / kMinutesPerDay != end / kMinutesPerDay) return false;
  const Minutes start_of_day = start % kMinutesPerDay;
  return day_start <= start_of_day && end_in_window;
}

std::vector<UnitOpportunities> extract_opportunities(const Circulation& circ,
                                                     const ExtractOptions& opt) {
  if (!validate_circulation(circ).empty()) {
    throw std::invalid_argument("circulation does not validate");
  }
  std::vector<UnitOpportunities> out;
  out.reserve(circ.rosters.size());
  for (const auto& roster : circ.rosters) {
    UnitOpportunities unit{roster.unit_id, {}};
    auto add = [&](const std::string& loc, Minutes s, Minutes e) {
      if (s >= e) return;  // zero-length gaps carry no opportunity
      Opportunity mo;
      mo.index = static_cast<int>(unit.mos.size()) + 1;
      mo.location = loc;
      mo.start = s;
      mo.end = e;
      mo.is_day = classify_day(s, e, opt.day_start, opt.night_start, opt.rule);
      unit.mos.push_back(std::move(mo));
    };
    if (!roster.trips.empty()) {
      if (opt.include_boundaries) {
        add(roster.trips.front().dep_station, 0, roster.trips.front().dep_time);
      }
      for (std::size_t t = 0; t + 1 < roster.trips.size(); ++t) {
        add(roster.trips[t].arr_station, roster.trips[t].arr_time,
            roster.trips[t + 1].dep_time);
      }
      if (opt.include_boundaries) {
        add(roster.trips.back().arr_station, roster.trips.back().arr_time,
            circ.horizon);
      }
    }
    out.push_back(std::move(unit));
  }
  return out;
}

void write_opportunity_csv(const std::vector<UnitOpportunities>& units,
                           std::ostream& out) {
  out << "unit_id,j,location,start_hours,end_hours,is_day\n";
  for (const auto& unit : units) {
    for (const Opportunity& mo : unit.mos) {
      out << unit.unit_id << ',' << mo.index << ',' << mo.location << ','
          << format_hours6(mo.start) << ',' << format_hours6(mo.end) << ','
          << (mo.is_day ? 1 : 0) << '\n';
    }
  }
}

}  // namespace mlcp
