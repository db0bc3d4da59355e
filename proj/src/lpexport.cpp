#include "mlcp/lpexport.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

namespace mlcp {

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  }
  return out.empty() ? std::string("_") : out;
}

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

void sort_terms(std::vector<LpTerm>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const LpTerm& a, const LpTerm& b) { return a.var < b.var; });
}

void append_terms(std::string& out, const std::vector<LpTerm>& terms) {
  bool first = true;
  for (const auto& t : terms) {
    const double a = std::abs(t.coeff);
    if (first) {
      if (t.coeff < 0) out += "- ";
      first = false;
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    if (a != 1.0) {
      out += fmt6(a);
      out += ' ';
    }
    out += t.var;
  }
}

}  // namespace

LpModel build_lp(const Instance& inst) {
  LpModel model;
  const int K = static_cast<int>(inst.types.size());

  // Variables. x in unit/MO/type order, yD in candidate order.
  std::vector<std::vector<std::string>> x_name(inst.units.size());
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& unit = inst.units[u];
    const std::string unit_tag = sanitize(unit.unit_id);
    x_name[u].resize(unit.mos.size() * static_cast<std::size_t>(K));
    for (std::size_t j = 0; j < unit.mos.size(); ++j) {
      for (int k = 0; k < K; ++k) {
        std::string name = "x_" + unit_tag + "_" + std::to_string(j + 1) + "_" +
                           std::to_string(inst.types[static_cast<std::size_t>(k)].id);
        x_name[u][j * static_cast<std::size_t>(K) + static_cast<std::size_t>(k)] = name;
        model.x_vars.push_back({name, unit.unit_id, static_cast<int>(j) + 1,
                                inst.types[static_cast<std::size_t>(k)].id});
        model.binaries.push_back(std::move(name));
      }
    }
  }
  std::map<std::string, std::string> y_name;
  for (const auto& loc : inst.catalog.day_candidates) {
    std::string name = "yD_" + sanitize(loc);
    y_name[loc] = name;
    model.y_vars.push_back({name, loc});
    model.binaries.push_back(std::move(name));
  }

  // Objective: nighttime activities count 1, every activity pays epsilon.
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& mos = inst.units[u].mos;
    for (std::size_t j = 0; j < mos.size(); ++j) {
      const double base = mos[j].is_day ? 0.0 : 1.0;
      for (int k = 0; k < K; ++k) {
        model.objective.push_back(
            {x_name[u][j * static_cast<std::size_t>(K) + static_cast<std::size_t>(k)],
             base + inst.epsilon});
      }
    }
  }
  sort_terms(model.objective);

  // Initial interval rows.
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const std::string unit_tag = sanitize(inst.units[u].unit_id);
    for (int k = 0; k < K; ++k) {
      if (!inst.initial_requirement_active(static_cast<int>(u), k)) continue;
      LpRow row;
      row.name = "init_" + unit_tag + "_" +
                 std::to_string(inst.types[static_cast<std::size_t>(k)].id);
      row.sense = 'G';
      row.rhs = 1.0;
      for (int p : inst.successors.initial[u][static_cast<std::size_t>(k)]) {
        row.terms.push_back(
            {x_name[u][static_cast<std::size_t>(p) * static_cast<std::size_t>(K) +
                       static_cast<std::size_t>(k)],
             1.0});
      }
      sort_terms(row.terms);
      model.rows.push_back(std::move(row));
    }
  }

  // Chain rows: x_jk - sum over successors <= 0, only while the deadline is
  // inside the horizon.
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& mos = inst.units[u].mos;
    const std::string unit_tag = sanitize(inst.units[u].unit_id);
    for (std::size_t j = 0; j < mos.size(); ++j) {
      for (int k = 0; k < K; ++k) {
        const double deadline =
            static_cast<double>(mos[j].end) +
            to_minutes(inst.types[static_cast<std::size_t>(k)].interval_hours);
        if (deadline > static_cast<double>(inst.horizon)) continue;
        LpRow row;
        row.name = "chain_" + unit_tag + "_" + std::to_string(j + 1) + "_" +
                   std::to_string(inst.types[static_cast<std::size_t>(k)].id);
        row.sense = 'L';
        row.rhs = 0.0;
        row.terms.push_back(
            {x_name[u][j * static_cast<std::size_t>(K) + static_cast<std::size_t>(k)],
             1.0});
        for (int p : inst.successors.next[u][j][static_cast<std::size_t>(k)]) {
          row.terms.push_back(
              {x_name[u][static_cast<std::size_t>(p) * static_cast<std::size_t>(K) +
                         static_cast<std::size_t>(k)],
               -1.0});
        }
        sort_terms(row.terms);
        model.rows.push_back(std::move(row));
      }
    }
  }

  // Availability: daytime MOs couple to yD; nighttime availability is a
  // constant and becomes a bound instead of a row.
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& mos = inst.units[u].mos;
    const std::string unit_tag = sanitize(inst.units[u].unit_id);
    for (std::size_t j = 0; j < mos.size(); ++j) {
      for (int k = 0; k < K; ++k) {
        const std::string& x =
            x_name[u][j * static_cast<std::size_t>(K) + static_cast<std::size_t>(k)];
        if (mos[j].is_day) {
          auto it = y_name.find(mos[j].location);
          if (it == y_name.end()) {
            // not a daytime candidate: never openable during the day
            model.bounds.push_back({x, 'F', 0.0});
            continue;
          }
          LpRow row;
          row.name = "avail_" + unit_tag + "_" + std::to_string(j + 1) + "_" +
                     std::to_string(inst.types[static_cast<std::size_t>(k)].id);
          row.sense = 'L';
          row.rhs = 0.0;
          row.terms.push_back({x, 1.0});
          row.terms.push_back({it->second, -1.0});
          sort_terms(row.terms);
          model.rows.push_back(std::move(row));
        } else if (inst.catalog.is_night_open(mos[j].location)) {
          model.bounds.push_back({x, 'U', 1.0});
        } else {
          model.bounds.push_back({x, 'F', 0.0});
        }
      }
    }
  }

  // Capacity rows.
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& mos = inst.units[u].mos;
    const std::string unit_tag = sanitize(inst.units[u].unit_id);
    for (std::size_t j = 0; j < mos.size(); ++j) {
      LpRow row;
      row.name = "cap_" + unit_tag + "_" + std::to_string(j + 1);
      row.sense = 'L';
      row.rhs = to_hours(mos[j].end - mos[j].start);
      for (int k = 0; k < K; ++k) {
        row.terms.push_back(
            {x_name[u][j * static_cast<std::size_t>(K) + static_cast<std::size_t>(k)],
             inst.types[static_cast<std::size_t>(k)].duration_hours});
      }
      sort_terms(row.terms);
      model.rows.push_back(std::move(row));
    }
  }

  // Budget row, vacuous without candidates.
  if (!model.y_vars.empty()) {
    LpRow row;
    row.name = "budget";
    row.sense = 'L';
    row.rhs = static_cast<double>(inst.lmax_day);
    for (const auto& y : model.y_vars) row.terms.push_back({y.name, 1.0});
    sort_terms(row.terms);
    model.rows.push_back(std::move(row));
  }
  return model;
}

std::string write_lp(const LpModel& model) {
  std::string out;
  out += "Minimize\n obj:";
  if (!model.objective.empty()) {
    out += ' ';
    append_terms(out, model.objective);
  }
  out += "\nSubject To\n";
  for (const auto& row : model.rows) {
    if (row.terms.empty() && model.binaries.empty()) continue;
    out += ' ';
    out += row.name;
    out += ": ";
    if (row.terms.empty()) {
      // An empty sum (e.g. an initial requirement with no reachable MO)
      // still has to appear so the text model stays equivalent.
      out += "0 " + model.binaries.front();
    } else {
      append_terms(out, row.terms);
    }
    out += row.sense == 'L' ? " <= " : " >= ";
    out += fmt6(row.rhs);
    out += '\n';
  }
  if (!model.bounds.empty()) {
    out += "Bounds\n";
    for (const auto& b : model.bounds) {
      out += ' ';
      out += b.var;
      out += b.kind == 'F' ? " = " : " <= ";
      out += fmt6(b.value);
      out += '\n';
    }
  }
  out += "Binaries\n";
  for (const auto& v : model.binaries) {
    out += ' ';
    out += v;
    out += '\n';
  }
  out += "End\n";
  return out;
}

nlohmann::ordered_json variable_map_json(const LpModel& model) {
  nlohmann::ordered_json x = nlohmann::ordered_json::object();
  for (const auto& v : model.x_vars) {
    x[v.name] = {{"unit", v.unit}, {"j", v.j}, {"k", v.k}};
  }
  nlohmann::ordered_json y = nlohmann::ordered_json::object();
  for (const auto& v : model.y_vars) {
    y[v.name] = v.location;
  }
  return nlohmann::ordered_json{{"x", std::move(x)}, {"y", std::move(y)}};
}

}  // namespace mlcp
