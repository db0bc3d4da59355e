#include "mlcp/instance.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>

#include "json.hpp"

namespace mlcp {

namespace {

Minutes parse_window_edge(const nlohmann::json& v, const char* key) {
  if (v.is_string()) {
    return clock_minutes(parse_clock(v.get<std::string>()));
  }
  if (v.is_number()) {
    // Hours-of-day as a number is accepted too.
    return static_cast<Minutes>(v.get<double>() * 60.0 + 0.5);
  }
  throw FormatError(std::string(key) + " must be \"HH:MM\" or a number");
}

}  // namespace

bool LocationCatalog::is_night_open(const std::string& loc) const {
  auto it = night_open.find(loc);
  return it != night_open.end() && it->second;
}

bool LocationCatalog::is_candidate(const std::string& loc) const {
  return std::binary_search(day_candidates.begin(), day_candidates.end(), loc);
}

InstanceConfig default_instance_config() {
  InstanceConfig c;
  c.types = {{1, 0.5, 24.0}, {2, 1.0, 48.0}};
  return c;
}

InstanceConfig load_instance_config(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("instance config: ") + e.what());
  }
  InstanceConfig c = default_instance_config();
  try {
    if (j.contains("types")) {
      c.types.clear();
      for (const auto& t : j.at("types")) {
        c.types.push_back({t.at("id").get<int>(),
                           t.at("duration_hours").get<double>(),
                           t.at("interval_hours").get<double>()});
      }
    }
    if (j.contains("locations")) {
      std::vector<std::pair<std::string, bool>> locs;
      for (const auto& l : j.at("locations")) {
        locs.emplace_back(l.at("id").get<std::string>(),
                          l.value("night_open", true));
      }
      c.locations = std::move(locs);
    }
    if (j.contains("day_candidates")) {
      c.day_candidates = j.at("day_candidates").get<std::vector<std::string>>();
    }
    c.lmax_day = j.value("lmax_day", c.lmax_day);
    if (j.contains("b")) {
      for (const auto& [key, value] : j.at("b").items()) {
        c.b_hours[key] = value.get<double>();
      }
    }
    if (j.contains("delta_day")) {
      c.day_start = parse_window_edge(j.at("delta_day"), "delta_day");
    }
    if (j.contains("delta_night")) {
      c.night_start = parse_window_edge(j.at("delta_night"), "delta_night");
    }
    c.epsilon = j.value("epsilon", c.epsilon);
    c.include_boundary_mos = j.value("include_boundary_mos", c.include_boundary_mos);
    c.guard_initial = j.value("guard_initial_constraint", c.guard_initial);
    if (j.contains("classification")) {
      const std::string rule = j.at("classification").get<std::string>();
      if (rule == "prose") {
        c.day_rule = DayRule::Prose;
      } else if (rule == "formula") {
        c.day_rule = DayRule::EndOnly;
      } else {
        throw FormatError("classification must be 'prose' or 'formula'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("instance config: ") + e.what());
  }
  return c;
}

InstanceConfig load_instance_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return load_instance_config(in);
}

std::vector<int> successor_set(const std::vector<Opportunity>& mos, int j,
                               double interval_hours) {
  std::vector<int> out;
  const double end_j = static_cast<double>(mos[static_cast<std::size_t>(j)].end);
  const double deadline = end_j + to_minutes(interval_hours);
  for (std::size_t p = 0; p < mos.size(); ++p) {
    const double s = static_cast<double>(mos[p].start);
    if (end_j < s && s <= deadline) out.push_back(static_cast<int>(p));
  }
  return out;
}

std::vector<int> initial_set(const std::vector<Opportunity>& mos,
                             double interval_hours, double b_hours) {
  std::vector<int> out;
  const double deadline = to_minutes(interval_hours) + to_minutes(b_hours);
  for (std::size_t p = 0; p < mos.size(); ++p) {
    if (static_cast<double>(mos[p].start) <= deadline) {
      out.push_back(static_cast<int>(p));
    }
  }
  return out;
}

int Instance::type_slot(int type_id) const {
  for (std::size_t k = 0; k < types.size(); ++k) {
    if (types[k].id == type_id) return static_cast<int>(k);
  }
  return -1;
}

int Instance::unit_slot(const std::string& unit_id) const {
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (units[u].unit_id == unit_id) return static_cast<int>(u);
  }
  return -1;
}

std::size_t Instance::total_possible_activities() const {
  std::size_t n = 0;
  for (const auto& u : units) n += u.mos.size() * types.size();
  return n;
}

bool Instance::initial_requirement_active(int u, int k) const {
  if (!guard_initial) return true;
  const double deadline =
      to_minutes(b_hours[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)]) +
      to_minutes(types[static_cast<std::size_t>(k)].interval_hours);
  return deadline <= static_cast<double>(horizon);
}

Instance build_instance(std::vector<UnitOpportunities> mos,
                        const InstanceConfig& config, Minutes horizon) {
  Instance inst;
  if (horizon <= 0) throw BuildError("horizon must be > 0");
  inst.horizon = horizon;
  inst.day_start = config.day_start;
  inst.night_start = config.night_start;
  inst.epsilon = config.epsilon;
  inst.guard_initial = config.guard_initial;
  inst.lmax_day = config.lmax_day;

  if (config.types.empty()) throw BuildError("at least one maintenance type required");
  inst.types = config.types;
  std::sort(inst.types.begin(), inst.types.end(),
            [](const MaintenanceType& a, const MaintenanceType& b) {
              return a.id < b.id;
            });
  for (std::size_t k = 0; k < inst.types.size(); ++k) {
    const auto& t = inst.types[k];
    if (t.duration_hours <= 0 || t.interval_hours <= 0) {
      throw BuildError("type " + std::to_string(t.id) +
                       ": duration and interval must be > 0");
    }
    if (k > 0 && inst.types[k - 1].id == t.id) {
      throw BuildError("duplicate type id " + std::to_string(t.id));
    }
  }

  std::sort(mos.begin(), mos.end(),
            [](const UnitOpportunities& a, const UnitOpportunities& b) {
              return a.unit_id < b.unit_id;
            });
  inst.units = std::move(mos);

  // Catalog: explicit from config, or derived from the opportunities.
  if (config.locations.has_value()) {
    for (const auto& [id, night] : *config.locations) {
      inst.catalog.locations.push_back(id);
      inst.catalog.night_open[id] = night;
    }
  } else {
    std::set<std::string> seen;
    for (const auto& u : inst.units) {
      for (const auto& mo : u.mos) seen.insert(mo.location);
    }
    for (const auto& loc : seen) {
      inst.catalog.locations.push_back(loc);
      inst.catalog.night_open[loc] = true;
    }
  }
  std::sort(inst.catalog.locations.begin(), inst.catalog.locations.end());
  inst.catalog.locations.erase(
      std::unique(inst.catalog.locations.begin(), inst.catalog.locations.end()),
      inst.catalog.locations.end());

  if (config.day_candidates.has_value()) {
    inst.catalog.day_candidates = *config.day_candidates;
  } else {
    inst.catalog.day_candidates = inst.catalog.locations;
  }
  std::sort(inst.catalog.day_candidates.begin(), inst.catalog.day_candidates.end());
  inst.catalog.day_candidates.erase(
      std::unique(inst.catalog.day_candidates.begin(),
                  inst.catalog.day_candidates.end()),
      inst.catalog.day_candidates.end());
  for (const auto& cand : inst.catalog.day_candidates) {
    if (!std::binary_search(inst.catalog.locations.begin(),
                            inst.catalog.locations.end(), cand)) {
      throw BuildError("day candidate '" + cand + "' is not in the catalog");
    }
  }

  for (const auto& u : inst.units) {
    for (const auto& mo : u.mos) {
      if (!std::binary_search(inst.catalog.locations.begin(),
                              inst.catalog.locations.end(), mo.location)) {
        throw BuildError("opportunity at unknown location '" + mo.location +
                         "' (unit " + u.unit_id + ")");
      }
    }
  }

  // Initial offsets, default 0, keyed "unit:type_id".
  inst.b_hours.assign(inst.units.size(),
                      std::vector<double>(inst.types.size(), 0.0));
  for (const auto& [key, hours] : config.b_hours) {
    const auto colon = key.rfind(':');
    if (colon == std::string::npos) {
      throw BuildError("b key '" + key + "' is not 'unit:type'");
    }
    const std::string unit_id = key.substr(0, colon);
    const int type_id = std::stoi(key.substr(colon + 1));
    const int u = inst.unit_slot(unit_id);
    const int k = inst.type_slot(type_id);
    if (k < 0) throw BuildError("b entry for unknown type " + std::to_string(type_id));
    if (hours < 0) throw BuildError("b entry '" + key + "' must be >= 0");
    if (u < 0) continue;  // offsets may cover units filtered out of this run
    inst.b_hours[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)] = hours;
  }

  if (inst.epsilon <= 0) throw BuildError("epsilon must be > 0");
  inst.epsilon_bound_ok =
      inst.epsilon * static_cast<double>(inst.total_possible_activities()) < 1.0;
  if (!inst.epsilon_bound_ok) {
    std::cerr << "warning: epsilon * possible activities >= 1; the blended "
                 "objective may diverge from the lexicographic one\n";
  }

  // Materialize successor sets.
  inst.successors.next.resize(inst.units.size());
  inst.successors.initial.resize(inst.units.size());
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& unit_mos = inst.units[u].mos;
    inst.successors.next[u].resize(unit_mos.size());
    inst.successors.initial[u].resize(inst.types.size());
    for (std::size_t j = 0; j < unit_mos.size(); ++j) {
      inst.successors.next[u][j].resize(inst.types.size());
      for (std::size_t k = 0; k < inst.types.size(); ++k) {
        inst.successors.next[u][j][k] = successor_set(
            unit_mos, static_cast<int>(j), inst.types[k].interval_hours);
      }
    }
    for (std::size_t k = 0; k < inst.types.size(); ++k) {
      inst.successors.initial[u][k] =
          initial_set(unit_mos, inst.types[k].interval_hours, inst.b_hours[u][k]);
    }
  }
  return inst;
}

}  // namespace mlcp
