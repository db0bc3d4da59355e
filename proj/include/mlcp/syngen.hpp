#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mlcp/circulation.hpp"

namespace mlcp {

/// Parameters of the synthetic circulation generator. The default station
/// list carries common Dutch network abbreviations so outputs read naturally.
struct GenParams {
  int n_units = 20;
  std::vector<std::string> stations = {"Amr", "Hdr", "Hfdo", "Mt", "Gvc",
                                       "Bkd", "Bkh", "Dv",   "Gn",  "Ekz",
                                       "Hrl", "Ehv", "Vs",   "Zl"};
  int horizon_days = 42;
  double mean_trip_hours = 2.0;
  double p_midday = 0.7;       // chance of a long midday standstill per day
  int overnight_rotation = 3;  // overnight stations cycled per unit
  std::uint64_t seed = 1;
};

GenParams gen_params_from_json(std::istream& in);
GenParams gen_params_from_json_file(const std::string& path);

/// Deterministic synthetic circulation: every unit departs each morning from
/// its overnight station, runs service legs with zero-dwell turnarounds,
/// optionally stands still over midday, and ends the day at the next
/// overnight station. Identical params and seed give identical output;
/// per-unit streams derive from (seed, unit index).
Circulation generate(const GenParams& params);

}  // namespace mlcp
