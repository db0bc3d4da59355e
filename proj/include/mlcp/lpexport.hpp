#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mlcp/instance.hpp"

namespace mlcp {

struct LpTerm {
  std::string var;
  double coeff = 0.0;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;  // sorted by variable name
  char sense = 'L';           // 'L' <=, 'G' >=
  double rhs = 0.0;
};

/// Variable bound replacing a constraint whose location term is constant.
struct LpBound {
  std::string var;
  char kind = 'U';  // 'U' var <= value, 'F' var = value
  double value = 0.0;
};

struct LpXVar {
  std::string name;
  std::string unit;
  int j = 0;  // 1-based MO index
  int k = 0;  // type id
};

struct LpYVar {
  std::string name;
  std::string location;
};

struct LpModel {
  std::vector<LpTerm> objective;
  std::vector<LpRow> rows;
  std::vector<LpBound> bounds;
  std::vector<std::string> binaries;
  std::vector<LpXVar> x_vars;
  std::vector<LpYVar> y_vars;
};

/// Builds the integer program for the instance:
///   min sum x*(1-d) + epsilon*sum x
///   per (unit, type): activity within the initial interval (when required)
///   per assignment with a deadline inside the horizon: a successor exists
///   per daytime assignment: x <= yD(location); nighttime availability is
///     constant and becomes a bound
///   per MO: assigned durations fit the window
///   one budget row over the yD variables
LpModel build_lp(const Instance& inst);

/// CPLEX LP text. Deterministic: fixed section order, terms by variable
/// name, numbers with up to six decimals.
std::string write_lp(const LpModel& model);

/// Companion mapping from variable names back to units/MOs/types/locations.
nlohmann::ordered_json variable_map_json(const LpModel& model);

}  // namespace mlcp
