#include "mlcp/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_map>

#include "mlcp/parallel.hpp"

namespace mlcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t bits_of(double d) {
  std::uint64_t u;
  std::memcpy(&u, &d, sizeof u);
  return u;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

AvailabilityMask make_mask(const Instance& inst,
                           const std::vector<std::string>& y_day) {
  std::vector<std::string> open = y_day;
  std::sort(open.begin(), open.end());
  AvailabilityMask mask;
  mask.usable.resize(inst.units.size());
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& mos = inst.units[u].mos;
    mask.usable[u].resize(mos.size());
    for (std::size_t p = 0; p < mos.size(); ++p) {
      const Opportunity& mo = mos[p];
      const bool ok = mo.is_day
                          ? std::binary_search(open.begin(), open.end(), mo.location)
                          : inst.catalog.is_night_open(mo.location);
      mask.usable[u][p] = ok ? 1 : 0;
    }
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Per-unit dynamic program
// ---------------------------------------------------------------------------

namespace {

struct DpMeta {
  Objective obj;
  int parent = -1;
  std::uint32_t chosen = 0;
  std::uint32_t done = 0;
};

struct DpLevel {
  std::vector<DpMeta> meta;
  std::vector<double> ends;  // meta.size() * K, credited last end per type
};

struct DpFail {
  bool set = false;
  int type_slot = -1;
  double from = 0.0;  // credited end (minutes)
  double to = 0.0;    // deadline (minutes)
};

struct UnitDp {
  const Instance& inst;
  int unit;
  const std::vector<char>& usable;
  int K;
  std::vector<double> o_min, v_min, b_min;
  double horizon_min;

  // Requirement "another activity of type k must start by its deadline".
  bool active(std::uint32_t done, int k, double end_k) const {
    if (!(done >> k & 1u) && !inst.guard_initial) return true;
    return end_k + o_min[static_cast<std::size_t>(k)] <= horizon_min;
  }
};

// Removes states whose deadline for some required type passed before the
// next reachable start. Records the most promising failure for certificates.
void fathom_level(const UnitDp& dp, DpLevel& level, double next_start,
                  DpFail& fail) {
  const int K = dp.K;
  std::vector<DpMeta> meta;
  std::vector<double> ends;
  meta.reserve(level.meta.size());
  ends.reserve(level.ends.size());
  for (std::size_t i = 0; i < level.meta.size(); ++i) {
    const double* e = &level.ends[i * static_cast<std::size_t>(K)];
    int dead_k = -1;
    double dead_deadline = kInf;
    for (int k = 0; k < K; ++k) {
      const double deadline = e[k] + dp.o_min[static_cast<std::size_t>(k)];
      if (dp.active(level.meta[i].done, k, e[k]) && deadline < next_start) {
        if (deadline < dead_deadline) {
          dead_deadline = deadline;
          dead_k = k;
        }
      }
    }
    if (dead_k >= 0) {
      if (!fail.set || dead_deadline > fail.to) {
        fail.set = true;
        fail.type_slot = dead_k;
        fail.from = e[dead_k];
        fail.to = dead_deadline;
      }
      continue;
    }
    const int idx = static_cast<int>(meta.size());
    meta.push_back(level.meta[i]);
    ends.insert(ends.end(), e, e + K);
    (void)idx;
  }
  level.meta = std::move(meta);
  level.ends = std::move(ends);
}

// Dominance: A replaces B when A's objective is no worse and every credited
// end is no earlier. Ends that already reached the next start are only
// comparable when equal (a later activity could start exactly there).
void dominance_prune(const UnitDp& dp, DpLevel& level, double next_start) {
  const int K = dp.K;
  const std::size_t n = level.meta.size();
  if (n < 2) return;
  std::vector<char> dead(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (dead[a]) continue;
    const double* ea = &level.ends[a * static_cast<std::size_t>(K)];
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || dead[b]) continue;
      if (level.meta[a].done != level.meta[b].done) continue;
      if (level.meta[a].obj > level.meta[b].obj) continue;
      const double* eb = &level.ends[b * static_cast<std::size_t>(K)];
      bool dominates = true;
      bool strict = level.meta[a].obj < level.meta[b].obj;
      for (int k = 0; k < K; ++k) {
        if (ea[k] < eb[k] || (ea[k] != eb[k] && ea[k] >= next_start)) {
          dominates = false;
          break;
        }
        if (ea[k] > eb[k]) strict = true;
      }
      if (dominates && strict) dead[b] = 1;
    }
  }
  DpLevel pruned;
  pruned.meta.reserve(n);
  pruned.ends.reserve(level.ends.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (dead[i]) continue;
    pruned.meta.push_back(level.meta[i]);
    const double* e = &level.ends[i * static_cast<std::size_t>(K)];
    pruned.ends.insert(pruned.ends.end(), e, e + K);
  }
  level = std::move(pruned);
}

}  // namespace

UnitDpOutcome schedule_unit_optimal(const Instance& inst, int unit,
                                    const std::vector<char>& usable) {
  const auto& mos = inst.units[static_cast<std::size_t>(unit)].mos;
  const int K = static_cast<int>(inst.types.size());
  if (K > 31) throw std::invalid_argument("more than 31 maintenance types");
  const std::uint32_t nsub = 1u << K;

  UnitDp dp{inst, unit, usable, K, {}, {}, {},
            static_cast<double>(inst.horizon)};
  for (int k = 0; k < K; ++k) {
    dp.o_min.push_back(to_minutes(inst.types[static_cast<std::size_t>(k)].interval_hours));
    dp.v_min.push_back(to_minutes(inst.types[static_cast<std::size_t>(k)].duration_hours));
    dp.b_min.push_back(to_minutes(
        inst.b_hours[static_cast<std::size_t>(unit)][static_cast<std::size_t>(k)]));
  }
  std::vector<double> subset_v(nsub, 0.0);
  std::vector<int> subset_count(nsub, 0);
  for (std::uint32_t m = 1; m < nsub; ++m) {
    const int k = std::countr_zero(m);
    subset_v[m] = subset_v[m & (m - 1)] + dp.v_min[static_cast<std::size_t>(k)];
    subset_count[m] = subset_count[m & (m - 1)] + 1;
  }

  std::vector<DpLevel> levels(mos.size() + 1);
  levels[0].meta.push_back(DpMeta{});
  levels[0].ends = dp.b_min;

  DpFail fail;
  auto start_of = [&](std::size_t pos) {
    return pos < mos.size() ? static_cast<double>(mos[pos].start) : kInf;
  };
  fathom_level(dp, levels[0], start_of(0), fail);

  for (std::size_t j = 0; j < mos.size() && !levels[j].meta.empty(); ++j) {
    const DpLevel& prev = levels[j];
    DpLevel next;
    const double s = static_cast<double>(mos[j].start);
    const double e = static_cast<double>(mos[j].end);
    const double cap = e - s;
    const bool mo_usable = usable[j] != 0;
    const long long night_inc = mos[j].is_day ? 0 : 1;
    const double next_start = start_of(j + 1);

    std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    buckets.reserve(prev.meta.size() * 2);
    auto insert_state = [&](DpMeta m, const double* ends_in,
                            std::uint32_t mask) {
      // fathom at creation
      std::uint64_t h = m.done * 0x9E3779B97F4A7C15ULL;
      double tmp[32];
      int dead_k = -1;
      double dead_deadline = kInf;
      for (int k = 0; k < K; ++k) {
        tmp[k] = (mask >> k & 1u) ? e : ends_in[k];
        const double deadline = tmp[k] + dp.o_min[static_cast<std::size_t>(k)];
        if (dp.active(m.done, k, tmp[k]) && deadline < next_start) {
          if (deadline < dead_deadline) {
            dead_deadline = deadline;
            dead_k = k;
          }
        }
        h = mix64(h ^ bits_of(tmp[k]));
      }
      if (dead_k >= 0) {
        if (!fail.set || dead_deadline > fail.to) {
          fail.set = true;
          fail.type_slot = dead_k;
          fail.from = tmp[dead_k];
          fail.to = dead_deadline;
        }
        return;
      }
      auto& bucket = buckets[h];
      for (int idx : bucket) {
        if (next.meta[static_cast<std::size_t>(idx)].done != m.done) continue;
        const double* have = &next.ends[static_cast<std::size_t>(idx) *
                                        static_cast<std::size_t>(K)];
        bool same = true;
        for (int k = 0; k < K; ++k) {
          if (have[k] != tmp[k]) {
            same = false;
            break;
          }
        }
        if (same) {
          if (m.obj < next.meta[static_cast<std::size_t>(idx)].obj) {
            next.meta[static_cast<std::size_t>(idx)] = m;
            double* dst = &next.ends[static_cast<std::size_t>(idx) *
                                     static_cast<std::size_t>(K)];
            std::copy(tmp, tmp + K, dst);
          }
          return;
        }
      }
      bucket.push_back(static_cast<int>(next.meta.size()));
      next.meta.push_back(m);
      next.ends.insert(next.ends.end(), tmp, tmp + K);
    };

    for (std::size_t i = 0; i < prev.meta.size(); ++i) {
      const DpMeta& m = prev.meta[i];
      const double* ends = &prev.ends[i * static_cast<std::size_t>(K)];
      for (std::uint32_t mask = 0; mask < nsub; ++mask) {
        if (mask != 0) {
          if (!mo_usable || subset_v[mask] > cap) continue;
          bool ok = true;
          for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
            const int k = std::countr_zero(rest);
            const double end_k = ends[k];
            if (s > end_k + dp.o_min[static_cast<std::size_t>(k)] ||
                ((m.done >> k & 1u) && s <= end_k)) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
        }
        DpMeta nm;
        nm.obj = {m.obj.night + night_inc * subset_count[mask],
                  m.obj.total + subset_count[mask]};
        nm.parent = static_cast<int>(i);
        nm.chosen = mask;
        nm.done = m.done | mask;
        insert_state(nm, ends, mask);
      }
    }
    dominance_prune(dp, next, next_start);
    levels[j + 1] = std::move(next);
  }

  UnitDpOutcome out;
  const DpLevel& last = levels[mos.size()];
  if (last.meta.empty()) {
    out.feasible = false;
    if (fail.set) {
      out.fail_type_slot = fail.type_slot;
      out.fail_window_start_hours = fail.from / 60.0;
      out.fail_window_end_hours = fail.to / 60.0;
    }
    return out;
  }

  int best = 0;
  for (std::size_t i = 1; i < last.meta.size(); ++i) {
    const auto cmp = last.meta[i].obj <=> last.meta[best].obj;
    if (cmp < 0) {
      best = static_cast<int>(i);
    } else if (cmp == 0) {
      // canonical representative: prefer later credited ends
      const double* ei = &last.ends[i * static_cast<std::size_t>(K)];
      const double* eb = &last.ends[static_cast<std::size_t>(best) *
                                    static_cast<std::size_t>(K)];
      for (int k = 0; k < K; ++k) {
        if (ei[k] != eb[k]) {
          if (ei[k] > eb[k]) best = static_cast<int>(i);
          break;
        }
      }
    }
  }

  out.feasible = true;
  out.objective = last.meta[static_cast<std::size_t>(best)].obj;
  int idx = best;
  for (std::size_t j = mos.size(); j > 0; --j) {
    const DpMeta& m = levels[j].meta[static_cast<std::size_t>(idx)];
    for (std::uint32_t rest = m.chosen; rest != 0; rest &= rest - 1) {
      out.picks.emplace_back(static_cast<int>(j) - 1, std::countr_zero(rest));
    }
    idx = m.parent;
  }
  std::sort(out.picks.begin(), out.picks.end());
  return out;
}

// ---------------------------------------------------------------------------
// Solve context: per-unit memoization keyed by the open subset of the unit's
// relevant daytime locations, plus a shared thread pool.
// ---------------------------------------------------------------------------

class SolveContext {
 public:
  SolveContext(const Instance& inst, const SolverOptions& opt)
      : inst_(inst), opt_(opt), pool_(opt.threads) {
    units_.resize(inst.units.size());
    for (std::size_t u = 0; u < inst.units.size(); ++u) {
      UnitInfo& info = units_[u];
      const auto& mos = inst.units[u].mos;
      for (const auto& mo : mos) {
        if (mo.is_day && inst.catalog.is_candidate(mo.location)) {
          info.relevant.push_back(mo.location);
        }
      }
      std::sort(info.relevant.begin(), info.relevant.end());
      info.relevant.erase(
          std::unique(info.relevant.begin(), info.relevant.end()),
          info.relevant.end());
      info.cacheable = info.relevant.size() <= 63;
      info.static_usable.resize(mos.size());
      info.day_bit.assign(mos.size(), -1);
      for (std::size_t p = 0; p < mos.size(); ++p) {
        const Opportunity& mo = mos[p];
        if (!mo.is_day) {
          info.static_usable[p] = inst.catalog.is_night_open(mo.location) ? 1 : 0;
        } else if (inst.catalog.is_candidate(mo.location)) {
          info.static_usable[p] = 0;
          const auto it = std::lower_bound(info.relevant.begin(),
                                           info.relevant.end(), mo.location);
          info.day_bit[p] =
              static_cast<int>(std::distance(info.relevant.begin(), it));
        } else {
          info.static_usable[p] = 0;  // daytime at a non-candidate location
        }
      }
    }
  }

  const Instance& instance() const { return inst_; }
  const SolverOptions& options() const { return opt_; }
  ThreadPool& pool() { return pool_; }

  std::uint64_t unit_key(std::size_t u, const std::vector<std::string>& y_sorted) const {
    const UnitInfo& info = units_[u];
    std::uint64_t key = 0;
    for (std::size_t b = 0; b < info.relevant.size(); ++b) {
      if (std::binary_search(y_sorted.begin(), y_sorted.end(), info.relevant[b])) {
        key |= 1ull << b;
      }
    }
    return key;
  }

  const UnitDpOutcome& unit_solve(std::size_t u, std::uint64_t key) {
    UnitInfo& info = units_[u];
    if (info.cacheable) {
      auto it = info.memo.find(key);
      if (it != info.memo.end()) return it->second;
    }
    std::vector<char> usable = info.static_usable;
    for (std::size_t p = 0; p < usable.size(); ++p) {
      if (info.day_bit[p] >= 0 && (key >> info.day_bit[p] & 1ull)) usable[p] = 1;
    }
    UnitDpOutcome out =
        schedule_unit_optimal(inst_, static_cast<int>(u), usable);
    if (!info.cacheable) {
      info.scratch = std::move(out);
      return info.scratch;
    }
    return info.memo.emplace(key, std::move(out)).first->second;
  }

 private:
  struct UnitInfo {
    std::vector<std::string> relevant;
    std::vector<int> day_bit;
    std::vector<char> static_usable;
    bool cacheable = true;
    std::unordered_map<std::uint64_t, UnitDpOutcome> memo;
    UnitDpOutcome scratch;
  };

  const Instance& inst_;
  SolverOptions opt_;
  ThreadPool pool_;
  std::vector<UnitInfo> units_;
};

std::shared_ptr<SolveContext> make_context(const Instance& inst,
                                           const SolverOptions& opt) {
  return std::make_shared<SolveContext>(inst, opt);
}

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

SolveResult solve_for_choice(const Instance& inst,
                             const std::vector<std::string>& y_day,
                             SolveContext& ctx) {
  const std::vector<std::string> open = sorted_unique(y_day);
  for (const auto& loc : open) {
    if (!inst.catalog.is_candidate(loc)) {
      throw std::invalid_argument("'" + loc + "' is not a daytime candidate");
    }
  }
  const std::size_t n = inst.units.size();
  std::vector<const UnitDpOutcome*> outcomes(n, nullptr);
  ctx.pool().parallel_for(n, [&](std::size_t u) {
    outcomes[u] = &ctx.unit_solve(u, ctx.unit_key(u, open));
  });

  SolveResult res;
  for (std::size_t u = 0; u < n; ++u) {
    if (!outcomes[u]->feasible) {
      res.infeasible_units.push_back(inst.units[u].unit_id);
    }
  }
  if (!res.infeasible_units.empty()) {
    res.status = SolveStatus::Infeasible;
    return res;
  }
  res.status = SolveStatus::Optimal;
  res.solution.y_day = open;
  res.solution.schedules.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    res.solution.schedules[u].picks = outcomes[u]->picks;
    res.solution.objective = res.solution.objective + outcomes[u]->objective;
  }
  return res;
}

SolveResult solve_for_choice(const Instance& inst,
                             const std::vector<std::string>& y_day,
                             const SolverOptions& opt) {
  SolveContext ctx(inst, opt);
  return solve_for_choice(inst, y_day, ctx);
}

// ---------------------------------------------------------------------------
// Greedy
// ---------------------------------------------------------------------------

namespace {

// (infeasible unit count, night, total): smaller is better, so an infeasible
// choice is worse than any feasible one.
struct ChoiceScore {
  std::size_t infeasible = 0;
  Objective obj;
  friend auto operator<=>(const ChoiceScore&, const ChoiceScore&) = default;
};

ChoiceScore score_of(const SolveResult& r) {
  if (r.ok()) return {0, r.solution.objective};
  return {r.infeasible_units.size(), {0, 0}};
}

SolveResult greedy_core(const Instance& inst, SolveContext& ctx,
                        std::vector<std::string>* chosen_out) {
  const auto& cands = inst.catalog.day_candidates;
  const std::size_t budget =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(inst.lmax_day, 0)),
                            cands.size());
  std::vector<std::string> chosen;
  SolveResult current = solve_for_choice(inst, chosen, ctx);
  ChoiceScore current_score = score_of(current);
  while (chosen.size() < budget) {
    bool found = false;
    ChoiceScore best_score;
    std::string best_loc;
    SolveResult best_result;
    for (const auto& cand : cands) {
      if (std::binary_search(chosen.begin(), chosen.end(), cand)) continue;
      std::vector<std::string> trial = chosen;
      trial.push_back(cand);
      SolveResult r = solve_for_choice(inst, trial, ctx);
      const ChoiceScore s = score_of(r);
      if (!found || s < best_score) {  // ties keep the first (smallest id)
        found = true;
        best_score = s;
        best_loc = cand;
        best_result = std::move(r);
      }
    }
    if (!found || !(best_score < current_score)) break;
    chosen.push_back(best_loc);
    std::sort(chosen.begin(), chosen.end());
    current = std::move(best_result);
    current_score = best_score;
  }
  if (chosen_out) *chosen_out = chosen;
  return current;
}

}  // namespace

SolveResult solve_greedy(const Instance& inst, const SolverOptions& opt) {
  SolveContext ctx(inst, opt);
  return greedy_core(inst, ctx, nullptr);
}

SolveResult solve_greedy(const Instance& inst, SolveContext& ctx) {
  return greedy_core(inst, ctx, nullptr);
}

// ---------------------------------------------------------------------------
// Exact search
// ---------------------------------------------------------------------------

namespace {

std::uint64_t choose_count(std::uint64_t n, std::uint64_t m,
                           std::uint64_t cap) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= m; ++i) {
    c = c * (n - m + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

struct ExactSearch {
  const Instance& inst;
  SolveContext& ctx;
  std::size_t budget;
  bool have_best = false;
  Objective best_obj;
  std::vector<std::string> best_y;

  void offer(const std::vector<std::string>& y, const SolveResult& r) {
    if (!r.ok()) return;
    if (!have_best || r.solution.objective < best_obj) {
      have_best = true;
      best_obj = r.solution.objective;
      best_y = y;
    }
  }

  void enumerate_subsets() {
    const auto& cands = inst.catalog.day_candidates;
    const std::size_t n = cands.size();
    std::vector<std::size_t> pick(budget);
    for (std::size_t i = 0; i < budget; ++i) pick[i] = i;
    for (;;) {
      std::vector<std::string> y;
      y.reserve(budget);
      for (std::size_t i : pick) y.push_back(cands[i]);
      offer(y, solve_for_choice(inst, y, ctx));
      // next combination
      std::size_t i = budget;
      while (i > 0 && pick[i - 1] == n - budget + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t t = i; t < budget; ++t) pick[t] = pick[t - 1] + 1;
    }
  }

  void branch(const std::vector<std::string>& order, std::size_t idx,
              std::vector<std::string>& opened) {
    if (opened.size() == budget || idx == order.size()) {
      std::vector<std::string> y = opened;
      std::sort(y.begin(), y.end());
      offer(y, solve_for_choice(inst, y, ctx));
      return;
    }
    // bound: everything still undecided open
    std::vector<std::string> relax = opened;
    relax.insert(relax.end(), order.begin() + static_cast<std::ptrdiff_t>(idx),
                 order.end());
    SolveResult bound = solve_for_choice(inst, relax, ctx);
    if (!bound.ok()) return;
    if (have_best && bound.solution.objective >= best_obj) return;
    opened.push_back(order[idx]);
    branch(order, idx + 1, opened);
    opened.pop_back();
    branch(order, idx + 1, opened);
  }
};

}  // namespace

std::vector<InfeasibilityCertificate> detect_structural_infeasibility(
    const Instance& inst, const SolverOptions& opt) {
  SolveContext ctx(inst, opt);
  const AvailabilityMask mask = make_mask(inst, inst.catalog.day_candidates);
  std::vector<InfeasibilityCertificate> out;
  const double horizon = static_cast<double>(inst.horizon);
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& mos = inst.units[u].mos;
    bool unit_flagged = false;
    for (std::size_t k = 0; k < inst.types.size(); ++k) {
      // Greedy-latest chain for this type alone; succeeds whenever any
      // single-type chain exists.
      const double o = to_minutes(inst.types[k].interval_hours);
      const double v = to_minutes(inst.types[k].duration_hours);
      double cred = to_minutes(inst.b_hours[u][k]);
      bool done = false;
      for (;;) {
        const bool required =
            (!done && !inst.guard_initial) || cred + o <= horizon;
        if (!required) break;
        int pickp = -1;
        for (std::size_t p = 0; p < mos.size(); ++p) {
          if (!mask.usable[u][p]) continue;
          const double s = static_cast<double>(mos[p].start);
          const double e = static_cast<double>(mos[p].end);
          if (e - s < v) continue;
          if (s > cred + o) break;
          if (done && s <= cred) continue;
          pickp = static_cast<int>(p);
        }
        if (pickp < 0) {
          out.push_back({inst.units[u].unit_id, inst.types[k].id, cred / 60.0,
                         (cred + o) / 60.0});
          unit_flagged = true;
          break;
        }
        cred = static_cast<double>(mos[static_cast<std::size_t>(pickp)].end);
        done = true;
      }
    }
    if (unit_flagged) continue;
    // Per-type chains exist; the unit can still be infeasible when types
    // compete for MO capacity. Fall back to the full DP for a witness.
    const UnitDpOutcome& full =
        ctx.unit_solve(u, ctx.unit_key(u, inst.catalog.day_candidates));
    if (!full.feasible) {
      const int slot = full.fail_type_slot >= 0 ? full.fail_type_slot : 0;
      out.push_back({inst.units[u].unit_id,
                     inst.types[static_cast<std::size_t>(slot)].id,
                     full.fail_window_start_hours, full.fail_window_end_hours});
    }
  }
  return out;
}

SolveResult solve_exact(const Instance& inst, SolveContext& ctx) {
  const SolverOptions& opt = ctx.options();
  const auto& cands = inst.catalog.day_candidates;

  SolveResult all_open = solve_for_choice(inst, cands, ctx);
  if (!all_open.ok()) {
    SolveResult res;
    res.status = SolveStatus::Infeasible;
    res.infeasible_units = all_open.infeasible_units;
    res.certificates = detect_structural_infeasibility(inst, opt);
    return res;
  }

  ExactSearch search{inst, ctx,
                     std::min<std::size_t>(
                         static_cast<std::size_t>(std::max(inst.lmax_day, 0)),
                         cands.size()),
                     false,
                     {},
                     {}};

  if (search.budget == cands.size()) {
    search.offer(cands, all_open);
  } else if (choose_count(cands.size(), search.budget, opt.enum_cap) <=
             opt.enum_cap) {
    search.enumerate_subsets();
  } else {
    // Branch and bound over open/close decisions. Candidates are ordered by
    // their single-location result; the greedy solution seeds the incumbent.
    std::vector<std::string> greedy_y;
    SolveResult greedy = greedy_core(inst, ctx, &greedy_y);
    if (greedy.ok()) {
      search.have_best = true;
      search.best_obj = greedy.solution.objective;
      search.best_y = greedy_y;
    }
    std::vector<std::pair<ChoiceScore, std::string>> ranked;
    ranked.reserve(cands.size());
    for (const auto& cand : cands) {
      ranked.emplace_back(score_of(solve_for_choice(inst, {cand}, ctx)), cand);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::string> order;
    order.reserve(ranked.size());
    for (auto& [score, cand] : ranked) order.push_back(std::move(cand));
    std::vector<std::string> opened;
    search.branch(order, 0, opened);
  }

  if (!search.have_best) {
    // Feasible with everything open, but not within the budget.
    SolveResult res;
    res.status = SolveStatus::Infeasible;
    return res;
  }

  // Canonical representative: drop locations that do not change the
  // objective, trying higher location ids first.
  std::vector<std::string> y = sorted_unique(search.best_y);
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t i = y.size(); i > 0; --i) {
      std::vector<std::string> trial = y;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i) - 1);
      SolveResult r = solve_for_choice(inst, trial, ctx);
      if (r.ok() && r.solution.objective == search.best_obj) {
        y = std::move(trial);
        removed = true;
        break;
      }
    }
  }
  return solve_for_choice(inst, y, ctx);
}

SolveResult solve_exact(const Instance& inst, const SolverOptions& opt) {
  SolveContext ctx(inst, opt);
  return solve_exact(inst, ctx);
}

// ---------------------------------------------------------------------------
// Brute-force reference solvers
// ---------------------------------------------------------------------------

namespace {

struct OracleUnit {
  int bits = 0;                    // mos * K
  std::vector<char> usable;        // under the current y
  const UnitOpportunities* unit = nullptr;
};

// Literal constraint check of one unit's assignment bit vector. Bit j*K+k
// means type slot k performed at MO position j.
bool unit_assignment_feasible(const Instance& inst, std::size_t u,
                              const std::vector<char>& usable,
                              std::uint32_t mask, Objective* obj) {
  const auto& mos = inst.units[u].mos;
  const int K = static_cast<int>(inst.types.size());
  long long night = 0, total = 0;

  for (std::size_t j = 0; j < mos.size(); ++j) {
    double used = 0.0;
    for (int k = 0; k < K; ++k) {
      if (!(mask >> (static_cast<int>(j) * K + k) & 1u)) continue;
      if (!usable[j]) return false;  // open-location rule
      used += to_minutes(inst.types[static_cast<std::size_t>(k)].duration_hours);
      if (!mos[j].is_day) ++night;
      ++total;
    }
    if (used > static_cast<double>(mos[j].end - mos[j].start)) return false;
  }

  for (int k = 0; k < K; ++k) {
    const double o = to_minutes(inst.types[static_cast<std::size_t>(k)].interval_hours);
    // initial requirement
    if (inst.initial_requirement_active(static_cast<int>(u), k)) {
      const double deadline = to_minutes(inst.b_hours[u][static_cast<std::size_t>(k)]) + o;
      bool found = false;
      for (std::size_t p = 0; p < mos.size() && !found; ++p) {
        if ((mask >> (static_cast<int>(p) * K + k) & 1u) &&
            static_cast<double>(mos[p].start) <= deadline) {
          found = true;
        }
      }
      if (!found) return false;
    }
    // chain requirement
    for (std::size_t j = 0; j < mos.size(); ++j) {
      if (!(mask >> (static_cast<int>(j) * K + k) & 1u)) continue;
      const double end_j = static_cast<double>(mos[j].end);
      if (end_j + o > static_cast<double>(inst.horizon)) continue;
      bool found = false;
      for (std::size_t p = 0; p < mos.size() && !found; ++p) {
        if (!(mask >> (static_cast<int>(p) * K + k) & 1u)) continue;
        const double s = static_cast<double>(mos[p].start);
        if (end_j < s && s <= end_j + o) found = true;
      }
      if (!found) return false;
    }
  }
  if (obj) *obj = {night, total};
  return true;
}

std::vector<std::pair<int, int>> decode_picks(const Instance& inst,
                                              std::size_t u,
                                              std::uint32_t mask) {
  const int K = static_cast<int>(inst.types.size());
  std::vector<std::pair<int, int>> picks;
  for (std::size_t j = 0; j < inst.units[u].mos.size(); ++j) {
    for (int k = 0; k < K; ++k) {
      if (mask >> (static_cast<int>(j) * K + k) & 1u) {
        picks.emplace_back(static_cast<int>(j), k);
      }
    }
  }
  return picks;
}

void check_oracle_caps(const Instance& inst) {
  std::size_t bits = inst.total_possible_activities();
  if (bits > 24) {
    throw OracleError("instance too large for the reference solver (" +
                      std::to_string(bits) + " assignment variables > 24)");
  }
  if (inst.catalog.day_candidates.size() > 12) {
    throw OracleError("instance too large for the reference solver (>12 candidates)");
  }
}

template <typename PerChoice>
SolveResult oracle_scan(const Instance& inst, PerChoice per_choice) {
  const auto& cands = inst.catalog.day_candidates;
  const std::size_t n = cands.size();
  const std::size_t budget =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(inst.lmax_day, 0)), n);

  SolveResult best;
  best.status = SolveStatus::Infeasible;
  for (std::uint32_t ybits = 0; ybits < (1u << n); ++ybits) {
    if (static_cast<std::size_t>(std::popcount(ybits)) > budget) continue;
    std::vector<std::string> y;
    for (std::size_t i = 0; i < n; ++i) {
      if (ybits >> i & 1u) y.push_back(cands[i]);
    }
    SolveResult r = per_choice(y);
    if (!r.ok()) continue;
    if (best.status == SolveStatus::Infeasible ||
        r.solution.objective < best.solution.objective) {
      best = std::move(r);
    }
  }
  return best;
}

std::vector<OracleUnit> oracle_units(const Instance& inst,
                                     const std::vector<std::string>& y) {
  const AvailabilityMask mask = make_mask(inst, y);
  const int K = static_cast<int>(inst.types.size());
  std::vector<OracleUnit> units(inst.units.size());
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    units[u].bits = static_cast<int>(inst.units[u].mos.size()) * K;
    units[u].usable = mask.usable[u];
    units[u].unit = &inst.units[u];
  }
  return units;
}

}  // namespace

SolveResult brute_force_oracle(const Instance& inst) {
  check_oracle_caps(inst);
  return oracle_scan(inst, [&](const std::vector<std::string>& y) {
    auto units = oracle_units(inst, y);
    SolveResult r;
    r.solution.y_day = y;
    r.solution.schedules.resize(inst.units.size());
    for (std::size_t u = 0; u < units.size(); ++u) {
      bool found = false;
      Objective best_obj;
      std::uint32_t best_mask = 0;
      for (std::uint32_t m = 0; m < (1u << units[u].bits); ++m) {
        Objective obj;
        if (!unit_assignment_feasible(inst, u, units[u].usable, m, &obj)) continue;
        if (!found || obj < best_obj) {
          found = true;
          best_obj = obj;
          best_mask = m;
        }
      }
      if (!found) {
        r.status = SolveStatus::Infeasible;
        r.infeasible_units.push_back(inst.units[u].unit_id);
        return r;
      }
      r.solution.schedules[u].picks = decode_picks(inst, u, best_mask);
      r.solution.objective = r.solution.objective + best_obj;
    }
    r.status = SolveStatus::Optimal;
    return r;
  });
}

SolveResult brute_force_oracle_joint(const Instance& inst) {
  check_oracle_caps(inst);
  // bit offsets of each unit inside the joint vector
  std::vector<int> offset(inst.units.size() + 1, 0);
  const int K = static_cast<int>(inst.types.size());
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    offset[u + 1] = offset[u] + static_cast<int>(inst.units[u].mos.size()) * K;
  }
  const int total_bits = offset.back();

  return oracle_scan(inst, [&](const std::vector<std::string>& y) {
    const AvailabilityMask mask = make_mask(inst, y);
    SolveResult r;
    bool found = false;
    Objective best_obj;
    std::uint64_t best_joint = 0;
    for (std::uint64_t joint = 0; joint < (1ull << total_bits); ++joint) {
      Objective sum;
      bool ok = true;
      for (std::size_t u = 0; u < inst.units.size() && ok; ++u) {
        const auto m = static_cast<std::uint32_t>(
            (joint >> offset[u]) & ((1ull << (offset[u + 1] - offset[u])) - 1));
        Objective obj;
        if (!unit_assignment_feasible(inst, u, mask.usable[u], m, &obj)) {
          ok = false;
        } else {
          sum = sum + obj;
        }
      }
      if (!ok) continue;
      if (!found || sum < best_obj) {
        found = true;
        best_obj = sum;
        best_joint = joint;
      }
    }
    if (!found) {
      r.status = SolveStatus::Infeasible;
      return r;
    }
    r.status = SolveStatus::Optimal;
    r.solution.y_day = y;
    r.solution.objective = best_obj;
    r.solution.schedules.resize(inst.units.size());
    for (std::size_t u = 0; u < inst.units.size(); ++u) {
      const auto m = static_cast<std::uint32_t>(
          (best_joint >> offset[u]) & ((1ull << (offset[u + 1] - offset[u])) - 1));
      r.solution.schedules[u].picks = decode_picks(inst, u, m);
    }
    return r;
  });
}

// ---------------------------------------------------------------------------
// Independent solution checker
// ---------------------------------------------------------------------------

std::vector<ConstraintViolation> validate_solution(const Instance& inst,
                                                   const Solution& sol) {
  std::vector<ConstraintViolation> out;

  if (sol.y_day.size() > static_cast<std::size_t>(std::max(inst.lmax_day, 0))) {
    out.push_back({"budget", "", 0, 0,
                   std::to_string(sol.y_day.size()) + " locations opened, budget " +
                       std::to_string(inst.lmax_day)});
  }
  std::vector<std::string> open = sol.y_day;
  std::sort(open.begin(), open.end());
  for (const auto& loc : open) {
    if (!inst.catalog.is_candidate(loc)) {
      out.push_back({"candidate-set", "", 0, 0,
                     "'" + loc + "' is not a daytime candidate"});
    }
  }

  if (sol.schedules.size() != inst.units.size()) {
    out.push_back({"unknown-pick", "", 0, 0, "schedule count does not match units"});
    return out;
  }

  long long night = 0, total = 0;
  for (std::size_t u = 0; u < inst.units.size(); ++u) {
    const auto& unit = inst.units[u];
    const auto& mos = unit.mos;
    auto picks = sol.schedules[u].picks;
    std::sort(picks.begin(), picks.end());

    bool picks_ok = true;
    for (std::size_t i = 0; i < picks.size(); ++i) {
      const auto [j, k] = picks[i];
      if (j < 0 || static_cast<std::size_t>(j) >= mos.size() || k < 0 ||
          static_cast<std::size_t>(k) >= inst.types.size()) {
        out.push_back({"unknown-pick", unit.unit_id, j + 1, 0,
                       "assignment references an unknown MO or type"});
        picks_ok = false;
        continue;
      }
      if (i > 0 && picks[i] == picks[i - 1]) {
        out.push_back({"duplicate-pick", unit.unit_id, j + 1,
                       inst.types[static_cast<std::size_t>(k)].id,
                       "assignment repeated"});
        picks_ok = false;
      }
    }
    if (!picks_ok) continue;

    auto assigned = [&](int j, int k) {
      return std::binary_search(picks.begin(), picks.end(), std::make_pair(j, k));
    };

    // opened-location rule and per-MO capacity
    for (std::size_t j = 0; j < mos.size(); ++j) {
      double used = 0.0;
      for (std::size_t k = 0; k < inst.types.size(); ++k) {
        if (!assigned(static_cast<int>(j), static_cast<int>(k))) continue;
        used += to_minutes(inst.types[k].duration_hours);
        const bool available =
            mos[j].is_day ? std::binary_search(open.begin(), open.end(), mos[j].location)
                          : inst.catalog.is_night_open(mos[j].location);
        if (!available) {
          out.push_back({"availability", unit.unit_id, mos[j].index,
                         inst.types[k].id,
                         "MO at " + mos[j].location + " is not available"});
        }
        if (!mos[j].is_day) ++night;
        ++total;
      }
      if (used > static_cast<double>(mos[j].end - mos[j].start)) {
        out.push_back({"capacity", unit.unit_id, mos[j].index, 0,
                       "assigned durations exceed the MO length"});
      }
    }

    // interval rules
    for (std::size_t k = 0; k < inst.types.size(); ++k) {
      const double o = to_minutes(inst.types[k].interval_hours);
      if (inst.initial_requirement_active(static_cast<int>(u), static_cast<int>(k))) {
        const double deadline = to_minutes(inst.b_hours[u][k]) + o;
        bool found = false;
        for (std::size_t p = 0; p < mos.size() && !found; ++p) {
          if (assigned(static_cast<int>(p), static_cast<int>(k)) &&
              static_cast<double>(mos[p].start) <= deadline) {
            found = true;
          }
        }
        if (!found) {
          out.push_back({"interval-initial", unit.unit_id, 0, inst.types[k].id,
                         "no activity starts within the initial interval"});
        }
      }
      for (std::size_t j = 0; j < mos.size(); ++j) {
        if (!assigned(static_cast<int>(j), static_cast<int>(k))) continue;
        const double end_j = static_cast<double>(mos[j].end);
        if (end_j + o > static_cast<double>(inst.horizon)) continue;
        bool found = false;
        for (std::size_t p = 0; p < mos.size() && !found; ++p) {
          if (!assigned(static_cast<int>(p), static_cast<int>(k))) continue;
          const double s = static_cast<double>(mos[p].start);
          if (end_j < s && s <= end_j + o) found = true;
        }
        if (!found) {
          out.push_back({"interval-chain", unit.unit_id, mos[j].index,
                         inst.types[k].id,
                         "no follow-up activity inside the interval window"});
        }
      }
    }
  }

  if (night != sol.objective.night || total != sol.objective.total) {
    out.push_back({"objective-mismatch", "", 0, 0,
                   "stated objective (" + std::to_string(sol.objective.night) +
                       "," + std::to_string(sol.objective.total) +
                       ") differs from recount (" + std::to_string(night) + "," +
                       std::to_string(total) + ")"});
  }
  return out;
}

}  // namespace mlcp
