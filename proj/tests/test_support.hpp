#pragma once

// Shared helpers for solver-facing tests: tiny hand-built fixtures, a
// randomized generator of reference-solver-sized instances, and an
// exhaustive walk over the 0/1 points of an exported model.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mlcp/instance.hpp"
#include "mlcp/lpexport.hpp"
#include "mlcp/opportunities.hpp"
#include "mlcp/rng.hpp"
#include "mlcp/solver.hpp"

namespace mlcp::testing {

inline Opportunity make_mo(int index, const std::string& loc, Minutes s,
                           Minutes e, Minutes day_start = 7 * 60,
                           Minutes night_start = 19 * 60) {
  Opportunity mo;
  mo.index = index;
  mo.location = loc;
  mo.start = s;
  mo.end = e;
  mo.is_day = classify_day(s, e, day_start, night_start);
  return mo;
}

/// The four standstills of the worked two-day roster.
inline std::vector<UnitOpportunities> example_unit_mos() {
  std::vector<UnitOpportunities> units;
  units.push_back({"u1",
                   {make_mo(1, "Hrl", 641, 979), make_mo(2, "Ekz", 1192, 1209),
                    make_mo(3, "Mt", 1411, 1441), make_mo(4, "Ehv", 1506, 1774)}});
  return units;
}

struct RandomInstanceParams {
  int max_units = 3;
  int max_mos_per_unit = 4;
  int max_types = 2;
  int max_locations = 4;
  int max_lmax = 2;
  int max_total_bits = 24;  // sum over units of |mos| * |types|
  bool allow_offsets = true;
  bool allow_closed_nights = true;
};

/// Small instance with honest day flags, random catalog, random offsets and
/// either guard reading. Stays inside the reference-solver caps.
inline Instance random_small_instance(SplitMix64& rng,
                                      const RandomInstanceParams& p = {}) {
  const int n_types = 1 + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(p.max_types)));
  InstanceConfig config;
  config.types.clear();
  const double durations[] = {0.25, 0.5, 1.0};
  const double intervals[] = {6.0, 12.0, 24.0, 36.0};
  for (int k = 0; k < n_types; ++k) {
    config.types.push_back({k + 1, durations[rng.next_below(3)],
                            intervals[rng.next_below(4)]});
  }

  const int n_locs = 2 + static_cast<int>(rng.next_below(
                             static_cast<std::uint64_t>(p.max_locations - 1)));
  std::vector<std::pair<std::string, bool>> locations;
  for (int l = 0; l < n_locs; ++l) {
    const bool night = p.allow_closed_nights ? rng.next_bernoulli(0.8) : true;
    locations.emplace_back("L" + std::to_string(l + 1), night);
  }
  config.locations = locations;
  config.lmax_day = static_cast<int>(rng.next_below(
      static_cast<std::uint64_t>(p.max_lmax + 1)));
  config.guard_initial = rng.next_bernoulli(0.7);

  const int n_units = 1 + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(p.max_units)));
  std::vector<UnitOpportunities> units;
  int total_bits = 0;
  Minutes last_end = 0;
  for (int u = 0; u < n_units; ++u) {
    UnitOpportunities unit{"u" + std::to_string(u + 1), {}};
    const int want = 1 + static_cast<int>(rng.next_below(
                             static_cast<std::uint64_t>(p.max_mos_per_unit)));
    Minutes t = rng.next_range(0, 300);
    for (int i = 0; i < want; ++i) {
      if (total_bits + n_types > p.max_total_bits) break;
      const Minutes start = t + rng.next_range(1, 12 * 60);
      const Minutes end = start + rng.next_range(15, 5 * 60);
      unit.mos.push_back(make_mo(static_cast<int>(unit.mos.size()) + 1,
                                 "L" + std::to_string(rng.next_range(1, n_locs)),
                                 start, end));
      t = end;
      total_bits += n_types;
      last_end = std::max(last_end, end);
    }
    if (!unit.mos.empty()) units.push_back(std::move(unit));
    if (p.allow_offsets && rng.next_bernoulli(0.3)) {
      config.b_hours[
          "u" + std::to_string(u + 1) + ":" +
          std::to_string(1 + static_cast<int>(rng.next_below(
                                 static_cast<std::uint64_t>(n_types))))] =
          static_cast<double>(rng.next_range(0, 24 * 60)) / 60.0;
    }
  }
  const Minutes horizon = last_end + rng.next_range(0, 24 * 60) + 1;
  return build_instance(std::move(units), config, horizon);
}

struct LpCrossCheck {
  bool set_equal = true;  // model-feasible <=> checker-clean, on every point
  std::uint64_t feasible_points = 0;
  bool has_feasible = false;
  double min_blend = std::numeric_limits<double>::infinity();
};

/// Enumerates every 0/1 assignment of the exported model's binaries and
/// compares model feasibility with the independent solution checker. Also
/// tracks the minimum of the model objective over feasible points.
inline LpCrossCheck lp_cross_check(const Instance& inst, const LpModel& model) {
  // bit layout: y variables first, then x variables
  const std::size_t ny = model.y_vars.size();
  const std::size_t nx = model.x_vars.size();
  std::vector<std::string> names;
  for (const auto& y : model.y_vars) names.push_back(y.name);
  for (const auto& x : model.x_vars) names.push_back(x.name);
  auto bit_of = [&](const std::string& var) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == var) return static_cast<int>(i);
    }
    return -1;
  };

  struct RowIdx {
    std::vector<std::pair<int, double>> terms;
    char sense;
    double rhs;
  };
  std::vector<RowIdx> rows;
  for (const auto& row : model.rows) {
    RowIdx r{{}, row.sense, row.rhs};
    for (const auto& t : row.terms) r.terms.emplace_back(bit_of(t.var), t.coeff);
    rows.push_back(std::move(r));
  }
  std::vector<std::pair<int, double>> objective;
  for (const auto& t : model.objective) {
    objective.emplace_back(bit_of(t.var), t.coeff);
  }
  struct BoundIdx {
    int bit;
    char kind;
    double value;
  };
  std::vector<BoundIdx> bounds;
  for (const auto& b : model.bounds) {
    bounds.push_back({bit_of(b.var), b.kind, b.value});
  }

  // decode tables for x bits
  std::vector<int> x_unit(nx), x_mo(nx), x_type(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    x_unit[i] = inst.unit_slot(model.x_vars[i].unit);
    x_mo[i] = model.x_vars[i].j - 1;
    x_type[i] = inst.type_slot(model.x_vars[i].k);
  }

  LpCrossCheck out;
  const std::uint64_t total = 1ull << (ny + nx);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    auto on = [&](int bit) { return (bits >> bit & 1ull) != 0; };
    bool model_ok = true;
    for (const auto& b : bounds) {
      const double v = on(b.bit) ? 1.0 : 0.0;
      if (b.kind == 'F' ? v != b.value : v > b.value + 1e-9) {
        model_ok = false;
        break;
      }
    }
    for (std::size_t r = 0; model_ok && r < rows.size(); ++r) {
      double lhs = 0.0;
      for (const auto& [bit, coeff] : rows[r].terms) {
        if (on(bit)) lhs += coeff;
      }
      if (rows[r].sense == 'L' ? lhs > rows[r].rhs + 1e-9
                               : lhs < rows[r].rhs - 1e-9) {
        model_ok = false;
      }
    }

    Solution sol;
    for (std::size_t i = 0; i < ny; ++i) {
      if (on(static_cast<int>(i))) sol.y_day.push_back(model.y_vars[i].location);
    }
    sol.schedules.resize(inst.units.size());
    for (std::size_t i = 0; i < nx; ++i) {
      if (!on(static_cast<int>(ny + i))) continue;
      sol.schedules[static_cast<std::size_t>(x_unit[i])].picks.emplace_back(
          x_mo[i], x_type[i]);
      const auto& mo =
          inst.units[static_cast<std::size_t>(x_unit[i])].mos[static_cast<std::size_t>(x_mo[i])];
      ++sol.objective.total;
      if (!mo.is_day) ++sol.objective.night;
    }
    const bool checker_ok = validate_solution(inst, sol).empty();
    if (model_ok != checker_ok) out.set_equal = false;
    if (model_ok) {
      ++out.feasible_points;
      out.has_feasible = true;
      double blend = 0.0;
      for (const auto& [bit, coeff] : objective) {
        if (on(bit)) blend += coeff;
      }
      out.min_blend = std::min(out.min_blend, blend);
    }
  }
  return out;
}

}  // namespace mlcp::testing
