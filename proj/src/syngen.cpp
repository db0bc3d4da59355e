#include "mlcp/syngen.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "mlcp/rng.hpp"

namespace mlcp {

namespace {

std::string unit_name(int index, int n_units) {
  int width = 1;
  for (int n = n_units; n >= 10; n /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof buf, "u%0*d", std::min(width, 9), index + 1);
  return buf;
}

// Skewed midday-station assignment: a few stations carry most of the
// daytime standstills, which mirrors how a handful of yards host the long
// midday stops of many units.
std::size_t midday_station(int unit, std::size_t n_stations) {
  const int r = unit % 10;
  const std::size_t bucket = r < 4 ? 0 : r < 7 ? 1 : r < 9 ? 2 : 3;
  return bucket % n_stations;
}

struct DayPlan {
  Minutes dep = 0;            // morning departure, minute of day
  bool midday = false;
  Minutes mid_arrive = 0;
  Minutes mid_depart = 0;
  Minutes home_arrive = 0;    // evening arrival, minute of day
};

// Splits [from, to] into legs through random via stations, appending trips
// with zero dwell at the intermediate stops.
void emit_legs(std::vector<Trip>& trips, SplitMix64& rng,
               const std::vector<std::string>& stations,
               const std::string& from_station, const std::string& to_station,
               Minutes from, Minutes to, double mean_trip_hours) {
  const double span_h = static_cast<double>(to - from) / 60.0;
  int legs = static_cast<int>(span_h / std::max(mean_trip_hours, 0.25) + 0.5);
  legs = std::clamp(legs, 1, 6);
  if (from_station == to_station && legs < 2) legs = 2;
  std::vector<std::string> stops(static_cast<std::size_t>(legs) + 1);
  stops.front() = from_station;
  stops.back() = to_station;
  for (int i = 1; i < legs; ++i) {
    std::string pick;
    do {
      pick = stations[rng.next_below(stations.size())];
    } while (pick == stops[static_cast<std::size_t>(i) - 1]);
    stops[static_cast<std::size_t>(i)] = pick;
  }
  // Avoid a same-station final leg.
  if (legs > 1 && stops[static_cast<std::size_t>(legs) - 1] == to_station) {
    for (const auto& s : stations) {
      if (s != to_station && s != stops[static_cast<std::size_t>(legs) - 2]) {
        stops[static_cast<std::size_t>(legs) - 1] = s;
        break;
      }
    }
  }
  Minutes prev = from;
  for (int i = 1; i <= legs; ++i) {
    Minutes t = i == legs ? to : from + (to - from) * i / legs;
    if (t <= prev) t = prev + 1;
    trips.push_back({stops[static_cast<std::size_t>(i) - 1], prev,
                     stops[static_cast<std::size_t>(i)], t});
    prev = t;
  }
}

}  // namespace

GenParams gen_params_from_json(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("generator params: ") + e.what());
  }
  GenParams p;
  p.n_units = j.value("n_units", p.n_units);
  if (j.contains("stations")) {
    p.stations = j.at("stations").get<std::vector<std::string>>();
  }
  p.horizon_days = j.value("horizon_days", p.horizon_days);
  p.mean_trip_hours = j.value("mean_trip_hours", p.mean_trip_hours);
  p.p_midday = j.value("p_midday", p.p_midday);
  p.overnight_rotation = j.value("overnight_rotation", p.overnight_rotation);
  p.seed = j.value("seed", p.seed);
  return p;
}

GenParams gen_params_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return gen_params_from_json(in);
}

Circulation generate(const GenParams& params) {
  if (params.n_units < 1) throw std::invalid_argument("n_units must be >= 1");
  if (params.horizon_days < 1) throw std::invalid_argument("horizon_days must be >= 1");
  if (params.stations.size() < 3) throw std::invalid_argument("need at least 3 stations");
  if (params.p_midday < 0.0 || params.p_midday > 1.0) {
    throw std::invalid_argument("p_midday must be in [0, 1]");
  }

  const std::size_t n_stations = params.stations.size();
  const int rotation = std::max(params.overnight_rotation, 1);

  Circulation circ;
  circ.horizon = static_cast<Minutes>(params.horizon_days) * kMinutesPerDay;
  for (int u = 0; u < params.n_units; ++u) {
    SplitMix64 rng(derive_seed(params.seed, static_cast<std::uint64_t>(u)));
    UnitRoster roster{unit_name(u, params.n_units), {}};

    const std::size_t stride = 1 + static_cast<std::size_t>(u) % (n_stations - 1);
    auto home = [&](int day) {
      const auto i = static_cast<std::size_t>(day % rotation);
      return params.stations[(static_cast<std::size_t>(u) + i * stride) % n_stations];
    };
    const std::string& mid_station =
        params.stations[midday_station(u, n_stations)];

    for (int d = 0; d < params.horizon_days; ++d) {
      const Minutes day0 = static_cast<Minutes>(d) * kMinutesPerDay;
      DayPlan plan;
      plan.dep = rng.next_range(6 * 60 + 15, 7 * 60 + 20);
      plan.midday = rng.next_bernoulli(params.p_midday);
      if (plan.midday) {
        plan.mid_arrive = rng.next_range(10 * 60, 11 * 60 + 30);
        plan.mid_depart = plan.mid_arrive + rng.next_range(120, 210);
      }
      plan.home_arrive = rng.next_range(21 * 60, 22 * 60 + 50);

      const std::string from = home(d);
      const std::string to = home(d + 1);
      if (plan.midday) {
        emit_legs(roster.trips, rng, params.stations, from, mid_station,
                  day0 + plan.dep, day0 + plan.mid_arrive,
                  params.mean_trip_hours);
        emit_legs(roster.trips, rng, params.stations, mid_station, to,
                  day0 + plan.mid_depart, day0 + plan.home_arrive,
                  params.mean_trip_hours);
      } else {
        emit_legs(roster.trips, rng, params.stations, from, to,
                  day0 + plan.dep, day0 + plan.home_arrive,
                  params.mean_trip_hours);
      }
    }
    circ.rosters.push_back(std::move(roster));
  }
  std::sort(circ.rosters.begin(), circ.rosters.end(),
            [](const UnitRoster& a, const UnitRoster& b) {
              return a.unit_id < b.unit_id;
            });
  return circ;
}

}  // namespace mlcp
