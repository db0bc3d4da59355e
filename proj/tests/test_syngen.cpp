#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "mlcp/instance.hpp"
#include "mlcp/solver.hpp"
#include "mlcp/syngen.hpp"

using namespace mlcp;

namespace {

std::string csv_of(const Circulation& circ) {
  std::ostringstream out;
  write_circulation_csv(circ, out);
  return out.str();
}

}  // namespace

TEST_CASE("identical params and seed give identical bytes") {
  GenParams p;
  p.n_units = 5;
  p.horizon_days = 7;
  p.seed = 42;
  CHECK(csv_of(generate(p)) == csv_of(generate(p)));

  GenParams q = p;
  q.seed = 43;
  CHECK(csv_of(generate(p)) != csv_of(generate(q)));
}

TEST_CASE("generated circulations validate") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    GenParams p;
    p.n_units = 8;
    p.horizon_days = 10;
    p.seed = seed;
    const Circulation circ = generate(p);
    CHECK(circ.rosters.size() == 8);
    CHECK(circ.horizon == 10 * kMinutesPerDay);
    CHECK(validate_circulation(circ).empty());
  }
}

TEST_CASE("one unit over two days: overnight always, midday when asked") {
  GenParams p;
  p.n_units = 1;
  p.horizon_days = 2;
  p.p_midday = 1.0;
  p.seed = 7;
  const Circulation circ = generate(p);
  const auto units = extract_opportunities(circ, ExtractOptions{});
  REQUIRE(units.size() == 1);

  int day_mos = 0, night_mos = 0, crossing = 0;
  for (const auto& mo : units[0].mos) {
    (mo.is_day ? day_mos : night_mos)++;
    if (mo.start / kMinutesPerDay != mo.end / kMinutesPerDay) ++crossing;
  }
  CHECK(day_mos >= 2);    // one long midday stop per day
  CHECK(night_mos >= 1);  // the overnight standstill
  CHECK(crossing >= 1);
}

TEST_CASE("no midday stops means no daytime opportunities at all") {
  GenParams p;
  p.n_units = 4;
  p.horizon_days = 5;
  p.p_midday = 0.0;
  p.seed = 11;
  const auto units = extract_opportunities(generate(p), ExtractOptions{});
  for (const auto& unit : units) {
    for (const auto& mo : unit.mos) {
      CHECK_FALSE(mo.is_day);
    }
  }
}

TEST_CASE("every 24-hour window of every unit contains an opportunity") {
  GenParams p;
  p.n_units = 6;
  p.horizon_days = 12;
  p.seed = 99;
  const auto units = extract_opportunities(generate(p), ExtractOptions{});
  for (const auto& unit : units) {
    REQUIRE(!unit.mos.empty());
    CHECK(unit.mos.front().start == 0);  // boundary standstill before day one
    for (std::size_t i = 0; i + 1 < unit.mos.size(); ++i) {
      CHECK(unit.mos[i + 1].start - unit.mos[i].end <= kMinutesPerDay);
    }
  }
}

TEST_CASE("default parameters produce a feasible instance") {
  GenParams p;
  p.n_units = 6;
  p.horizon_days = 7;
  p.seed = 5;
  const auto mos = extract_opportunities(generate(p), ExtractOptions{});
  InstanceConfig config = default_instance_config();
  config.lmax_day = 2;
  Instance inst = build_instance(mos, config, 7 * kMinutesPerDay);
  CHECK(detect_structural_infeasibility(inst).empty());
  CHECK(solve_for_choice(inst, {}).ok());
}

TEST_CASE("params json loader") {
  std::istringstream in(R"({
    "n_units": 3,
    "stations": ["Aa", "Bb", "Cc", "Dd"],
    "horizon_days": 4,
    "mean_trip_hours": 1.5,
    "p_midday": 0.25,
    "overnight_rotation": 2,
    "seed": 9
  })");
  const GenParams p = gen_params_from_json(in);
  CHECK(p.n_units == 3);
  CHECK(p.stations.size() == 4);
  CHECK(p.horizon_days == 4);
  CHECK(p.mean_trip_hours == 1.5);
  CHECK(p.p_midday == 0.25);
  CHECK(p.overnight_rotation == 2);
  CHECK(p.seed == 9);

  std::istringstream bad("not json");
  CHECK_THROWS_AS(gen_params_from_json(bad), FormatError);
}

TEST_CASE("parameter validation") {
  GenParams p;
  p.n_units = 0;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);
  p = GenParams{};
  p.horizon_days = 0;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);
  p = GenParams{};
  p.stations = {"A", "B"};
  CHECK_THROWS_AS(generate(p), std::invalid_argument);
  p = GenParams{};
  p.p_midday = 1.5;
  CHECK_THROWS_AS(generate(p), std::invalid_argument);
}
