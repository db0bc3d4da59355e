#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mlcp/instance.hpp"

namespace mlcp {

/// Schedule quality, compared lexicographically: nighttime activity count
/// first, total activity count second.
struct Objective {
  long long night = 0;
  long long total = 0;
  friend auto operator<=>(const Objective&, const Objective&) = default;
  Objective operator+(const Objective& o) const {
    return {night + o.night, total + o.total};
  }
};

/// Per-MO usability under a daytime location choice: a daytime MO is usable
/// when its location is opened for the day, a nighttime MO when its location
/// is open at night.
struct AvailabilityMask {
  std::vector<std::vector<char>> usable;  // [unit][mo position]
};

AvailabilityMask make_mask(const Instance& inst,
                           const std::vector<std::string>& y_day);

/// Assignments of one unit: (MO position, type slot), both 0-based, sorted.
struct UnitSchedule {
  std::vector<std::pair<int, int>> picks;
};

/// Witness that a unit/type combination has no feasible chain even with all
/// candidate locations open: no usable successor starts inside
/// (window_start, window_end] although the deadline lies within the horizon.
struct InfeasibilityCertificate {
  std::string unit_id;
  int type_id = 0;
  double window_start_hours = 0.0;
  double window_end_hours = 0.0;
};

struct Solution {
  std::vector<std::string> y_day;       // sorted opened daytime locations
  std::vector<UnitSchedule> schedules;  // aligned with Instance::units
  Objective objective;
};

enum class SolveStatus { Optimal, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  Solution solution;
  std::vector<std::string> infeasible_units;
  std::vector<InfeasibilityCertificate> certificates;

  bool ok() const { return status == SolveStatus::Optimal; }
};

struct SolverOptions {
  int threads = 1;
  // Below this many size-m candidate subsets the exact solver enumerates
  // them outright instead of branch and bound.
  std::uint64_t enum_cap = 5000;
};

/// Outcome of the per-unit dynamic program.
struct UnitDpOutcome {
  bool feasible = false;
  Objective objective;
  std::vector<std::pair<int, int>> picks;  // (mo position, type slot)
  // Set when infeasible: the binding type and the deadline window that could
  // not be met.
  int fail_type_slot = -1;
  double fail_window_start_hours = 0.0;
  double fail_window_end_hours = 0.0;
};

/// Lexicographically optimal schedule for one unit under a fixed usability
/// mask. Forward DP over MOs in start order; states track, per type, the end
/// time of the most recent activity; dominated states are pruned.
UnitDpOutcome schedule_unit_optimal(const Instance& inst, int unit,
                                    const std::vector<char>& usable);

/// Reusable solver state: per-unit memo of DP results keyed by the subset of
/// the unit's relevant daytime locations that is open, plus a thread pool.
/// One context may serve many solve_* calls on the same instance.
class SolveContext;
std::shared_ptr<SolveContext> make_context(const Instance& inst,
                                           const SolverOptions& opt = {});

/// Optimal schedules for a fixed daytime choice. The objective is the sum of
/// the independent per-unit optima; infeasible units are listed.
SolveResult solve_for_choice(const Instance& inst,
                             const std::vector<std::string>& y_day,
                             const SolverOptions& opt = {});
SolveResult solve_for_choice(const Instance& inst,
                             const std::vector<std::string>& y_day,
                             SolveContext& ctx);

/// Globally optimal daytime choice and schedules. Enumerates candidate
/// subsets when their count is small, otherwise branch and bound with the
/// all-open relaxation as bound. The reported y_day is inclusion-minimal
/// among optimal choices (removal passes in descending location order).
/// The context overload reuses per-unit memos, e.g. across budget sweeps on
/// the same instance.
SolveResult solve_exact(const Instance& inst, const SolverOptions& opt = {});
SolveResult solve_exact(const Instance& inst, SolveContext& ctx);

/// Greedy baseline: grow y_day one location at a time, always taking the
/// candidate with the best resulting objective (ties by location id).
SolveResult solve_greedy(const Instance& inst, const SolverOptions& opt = {});
SolveResult solve_greedy(const Instance& inst, SolveContext& ctx);

/// Exhaustive reference solver. Enumerates every candidate subset within the
/// budget and, per unit, every 0/1 assignment vector, filtering by the
/// constraint definitions directly. Refuses instances with more than 24
/// assignment variables or more than 12 candidate locations.
struct OracleError : std::runtime_error {
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};
SolveResult brute_force_oracle(const Instance& inst);

/// Same reference semantics, but enumerating the joint assignment vector of
/// all units at once (no per-unit decomposition). Used to cross-check that
/// per-unit decomposition is sound.
SolveResult brute_force_oracle_joint(const Instance& inst);

/// One violated constraint instance.
struct ConstraintViolation {
  std::string constraint;  // interval-initial | interval-chain | availability
                           // | capacity | budget | candidate-set
                           // | objective-mismatch | unknown-pick
  std::string unit_id;
  int mo_index = 0;  // 1-based, 0 when not MO-specific
  int type_id = 0;   // 0 when not type-specific
  std::string message;
};

/// Independent feasibility check of a solution against the instance. Does
/// not share code with the solvers.
std::vector<ConstraintViolation> validate_solution(const Instance& inst,
                                                   const Solution& sol);

/// Per unit and type, checks whether a feasible chain exists with every
/// candidate location open; emits one certificate per failure. Empty result
/// means the fully open instance is feasible.
std::vector<InfeasibilityCertificate> detect_structural_infeasibility(
    const Instance& inst, const SolverOptions& opt = {});

}  // namespace mlcp
