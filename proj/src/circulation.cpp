#include "mlcp/circulation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace mlcp {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

int parse_day(const std::string& s, int line_no) {
  std::string t = trim(s);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError("line " + std::to_string(line_no) + ": day '" + s +
                      "' is not a positive integer");
  }
  int day = std::stoi(t);
  if (day < 1) {
    throw FormatError("line " + std::to_string(line_no) + ": day must be >= 1");
  }
  return day;
}

}  // namespace

std::vector<RuleViolation> validate_circulation(const Circulation& circ) {
  std::vector<RuleViolation> out;
  if (circ.horizon <= 0) {
    out.push_back({"", 0, "horizon-positive", "horizon must be > 0"});
  }
  std::map<std::string, int> seen;
  for (const auto& roster : circ.rosters) {
    if (++seen[roster.unit_id] == 2) {
      out.push_back({roster.unit_id, 0, "duplicate-unit",
                     "unit id appears more than once"});
    }
    for (std::size_t t = 0; t < roster.trips.size(); ++t) {
      const Trip& trip = roster.trips[t];
      const int idx = static_cast<int>(t) + 1;
      if (trip.dep_time >= trip.arr_time) {
        out.push_back({roster.unit_id, idx, "positive-duration",
                       "departure must precede arrival"});
      }
      if (trip.dep_time < 0 || trip.arr_time > circ.horizon) {
        out.push_back({roster.unit_id, idx, "horizon",
                       "trip lies outside [0, T]"});
      }
      if (t + 1 < roster.trips.size()) {
        const Trip& next = roster.trips[t + 1];
        if (trip.arr_time > next.dep_time) {
          out.push_back({roster.unit_id, idx + 1, "overlap",
                         "trip departs before the previous one arrives"});
        }
        if (trip.arr_station != next.dep_station) {
          out.push_back({roster.unit_id, idx + 1, "station-continuity",
                         "departs from " + next.dep_station +
                             " but previous trip arrived at " +
                             trip.arr_station});
        }
      }
    }
  }
  return out;
}

Circulation read_circulation_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty circulation file");
  const std::string header = trim(line);
  if (header !=
      "unit_id,dep_station,dep_day,dep_clock,arr_station,arr_day,arr_clock") {
    throw FormatError("unexpected circulation header: '" + header + "'");
  }

  std::map<std::string, std::vector<Trip>> by_unit;
  Minutes last_arrival = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 7) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                        std::to_string(f.size()));
    }
    Trip trip;
    trip.dep_station = trim(f[1]);
    trip.arr_station = trim(f[4]);
    try {
      trip.dep_time = encode_minutes(parse_day(f[2], line_no), parse_clock(trim(f[3])));
      trip.arr_time = encode_minutes(parse_day(f[5], line_no), parse_clock(trim(f[6])));
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string unit = trim(f[0]);
    if (unit.empty()) {
      throw FormatError("line " + std::to_string(line_no) + ": empty unit id");
    }
    last_arrival = std::max(last_arrival, trip.arr_time);
    by_unit[unit].push_back(std::move(trip));
  }

  Circulation circ;
  // Whole-day horizon covering the last arrival.
  circ.horizon = ((last_arrival + kMinutesPerDay - 1) / kMinutesPerDay) *
                 kMinutesPerDay;
  if (circ.horizon == 0) circ.horizon = kMinutesPerDay;
  for (auto& [unit, trips] : by_unit) {
    std::stable_sort(trips.begin(), trips.end(),
                     [](const Trip& a, const Trip& b) {
                       return std::tie(a.dep_time, a.arr_time) <
                              std::tie(b.dep_time, b.arr_time);
                     });
    circ.rosters.push_back({unit, std::move(trips)});
  }
  return circ;
}

Circulation read_circulation_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_circulation_csv(in);
}

void write_circulation_csv(const Circulation& circ, std::ostream& out) {
  out << "unit_id,dep_station,dep_day,dep_clock,arr_station,arr_day,arr_clock\n";
  for (const auto& roster : circ.rosters) {
    for (const Trip& t : roster.trips) {
      out << roster.unit_id << ',' << t.dep_station << ','
          << (t.dep_time / kMinutesPerDay + 1) << ','
          << format_clock(t.dep_time % kMinutesPerDay) << ','
          << t.arr_station << ',' << (t.arr_time / kMinutesPerDay + 1) << ','
          << format_clock(t.arr_time % kMinutesPerDay) << '\n';
    }
  }
}

void write_circulation_csv_file(const Circulation& circ,
                                const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_circulation_csv(circ, out);
}

Circulation truncate_circulation(const Circulation& circ, int tau_days) {
  const Minutes cut = static_cast<Minutes>(tau_days) * kMinutesPerDay;
  if (cut >= circ.horizon) return circ;
  Circulation out;
  out.horizon = cut;
  for (const auto& roster : circ.rosters) {
    UnitRoster r{roster.unit_id, {}};
    for (const Trip& t : roster.trips) {
      if (t.dep_time >= cut) break;
      Trip kept = t;
      kept.arr_time = std::min(kept.arr_time, cut);
      r.trips.push_back(std::move(kept));
    }
    if (!r.trips.empty()) out.rosters.push_back(std::move(r));
  }
  return out;
}

}  // namespace mlcp
