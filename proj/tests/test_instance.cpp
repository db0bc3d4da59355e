#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "mlcp/instance.hpp"
#include "mlcp/rng.hpp"

using namespace mlcp;

namespace {

Opportunity mo(int index, const std::string& loc, Minutes s, Minutes e,
               bool day = false) {
  return Opportunity{index, loc, s, e, day};
}

std::vector<Opportunity> random_mos(SplitMix64& rng, int count) {
  std::vector<Opportunity> mos;
  Minutes t = rng.next_range(0, 120);
  for (int i = 0; i < count; ++i) {
    const Minutes start = t + rng.next_range(1, 600);
    const Minutes end = start + rng.next_range(15, 240);
    mos.push_back(mo(i + 1, "L" + std::to_string(rng.next_below(3)), start, end,
                     rng.next_bernoulli(0.5)));
    t = end;
  }
  return mos;
}

}  // namespace

TEST_CASE("successor sets follow the window definition") {
  // ends at 10h, candidate starts at 20h and 33h, interval 24h
  std::vector<Opportunity> mos = {mo(1, "A", 9 * 60, 10 * 60),
                                  mo(2, "A", 20 * 60, 21 * 60),
                                  mo(3, "A", 33 * 60, 34 * 60)};
  CHECK(successor_set(mos, 0, 24.0) == std::vector<int>{1, 2});
  // zero interval admits nothing (strict lower bound)
  CHECK(successor_set(mos, 0, 0.0).empty());
  // last opportunity has no successors
  CHECK(successor_set(mos, 2, 24.0).empty());
  // boundary: a start exactly at end + interval is included
  std::vector<Opportunity> edge = {mo(1, "A", 0, 60), mo(2, "A", 25 * 60, 26 * 60)};
  CHECK(successor_set(edge, 0, 24.0) == std::vector<int>{1});
  CHECK(successor_set(edge, 0, 23.99).empty());
}

TEST_CASE("initial sets follow the offset definition") {
  // the worked example's first opportunities start at 10.683 and 19.867 hours
  std::vector<Opportunity> mos = {mo(1, "Hrl", 641, 979),
                                  mo(2, "Ekz", 1192, 1209)};
  CHECK(initial_set(mos, 24.0, 0.0) == std::vector<int>{0, 1});
  CHECK(initial_set(mos, 5.0, 0.0).empty());
  CHECK(initial_set(mos, 5.0, 1000.0) == std::vector<int>{0, 1});
  // boundary inclusive
  CHECK(initial_set(mos, 641.0 / 60.0, 0.0) == std::vector<int>{0});
}

TEST_CASE("set membership matches an exhaustive scan") {
  SplitMix64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const auto mos = random_mos(rng, static_cast<int>(rng.next_range(1, 8)));
    const double o = static_cast<double>(rng.next_range(1, 2000)) / 60.0;
    const double b = static_cast<double>(rng.next_range(0, 600)) / 60.0;
    for (std::size_t j = 0; j < mos.size(); ++j) {
      const auto got = successor_set(mos, static_cast<int>(j), o);
      for (std::size_t p = 0; p < mos.size(); ++p) {
        const bool in = static_cast<double>(mos[p].start) >
                            static_cast<double>(mos[j].end) &&
                        static_cast<double>(mos[p].start) <=
                            static_cast<double>(mos[j].end) + o * 60.0;
        CHECK(std::binary_search(got.begin(), got.end(), static_cast<int>(p)) == in);
      }
    }
    const auto got0 = initial_set(mos, o, b);
    for (std::size_t p = 0; p < mos.size(); ++p) {
      const bool in = static_cast<double>(mos[p].start) <= (o + b) * 60.0;
      CHECK(std::binary_search(got0.begin(), got0.end(), static_cast<int>(p)) == in);
    }
  }
}

TEST_CASE("successor and initial sets grow with the interval") {
  SplitMix64 rng(12);
  for (int round = 0; round < 100; ++round) {
    const auto mos = random_mos(rng, static_cast<int>(rng.next_range(1, 8)));
    const double o1 = static_cast<double>(rng.next_range(1, 1500)) / 60.0;
    const double o2 = o1 + static_cast<double>(rng.next_range(0, 600)) / 60.0;
    for (std::size_t j = 0; j < mos.size(); ++j) {
      const auto small = successor_set(mos, static_cast<int>(j), o1);
      const auto large = successor_set(mos, static_cast<int>(j), o2);
      CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
    const auto small0 = initial_set(mos, o1, 0.5);
    const auto large0 = initial_set(mos, o2, 0.5);
    CHECK(std::includes(large0.begin(), large0.end(), small0.begin(), small0.end()));
  }
}

TEST_CASE("config defaults match the standard setup") {
  const InstanceConfig c = default_instance_config();
  REQUIRE(c.types.size() == 2);
  CHECK(c.types[0].id == 1);
  CHECK(c.types[0].duration_hours == 0.5);
  CHECK(c.types[0].interval_hours == 24.0);
  CHECK(c.types[1].id == 2);
  CHECK(c.types[1].duration_hours == 1.0);
  CHECK(c.types[1].interval_hours == 48.0);
  CHECK(c.day_start == 7 * 60);
  CHECK(c.night_start == 19 * 60);
  CHECK(c.epsilon == 0.001);
  CHECK(c.include_boundary_mos);
  CHECK(c.guard_initial);
}

TEST_CASE("config json round trips") {
  const std::string text = R"({
    "types": [{"id": 1, "duration_hours": 0.5, "interval_hours": 24},
              {"id": 2, "duration_hours": 1.0, "interval_hours": 48}],
    "locations": [{"id": "Amr", "night_open": true},
                  {"id": "Mt", "night_open": false}],
    "day_candidates": ["Amr"],
    "lmax_day": 2,
    "b": {"u1:1": 3.5},
    "delta_day": "07:00",
    "delta_night": "19:00",
    "epsilon": 0.001,
    "include_boundary_mos": false,
    "guard_initial_constraint": false,
    "classification": "formula"
  })";
  std::istringstream in(text);
  const InstanceConfig c = load_instance_config(in);
  CHECK(c.lmax_day == 2);
  REQUIRE(c.locations.has_value());
  CHECK(c.locations->size() == 2);
  CHECK_FALSE((*c.locations)[1].second);
  REQUIRE(c.day_candidates.has_value());
  CHECK(c.day_candidates->size() == 1);
  CHECK(c.b_hours.at("u1:1") == 3.5);
  CHECK_FALSE(c.include_boundary_mos);
  CHECK_FALSE(c.guard_initial);
  CHECK(c.day_rule == DayRule::EndOnly);

  std::istringstream bad("{\"classification\": \"other\"}");
  CHECK_THROWS_AS(load_instance_config(bad), FormatError);
  std::istringstream not_json("nope");
  CHECK_THROWS_AS(load_instance_config(not_json), FormatError);
}

TEST_CASE("build assembles catalog, offsets and successor sets") {
  std::vector<UnitOpportunities> units;
  units.push_back({"u1",
                   {mo(1, "Hrl", 641, 979, true), mo(2, "Ekz", 1192, 1209),
                    mo(3, "Mt", 1411, 1441), mo(4, "Ehv", 1506, 1774)}});
  InstanceConfig config = default_instance_config();
  config.b_hours["u1:2"] = 2.0;
  const Instance inst = build_instance(units, config, 2 * kMinutesPerDay);

  CHECK(inst.catalog.locations == std::vector<std::string>{"Ehv", "Ekz", "Hrl", "Mt"});
  CHECK(inst.catalog.day_candidates == inst.catalog.locations);
  CHECK(inst.catalog.is_night_open("Mt"));
  CHECK(inst.b_hours[0][0] == 0.0);
  CHECK(inst.b_hours[0][1] == 2.0);
  CHECK(inst.epsilon_bound_ok);

  // successor sets materialized for every (unit, mo, type)
  REQUIRE(inst.successors.next.size() == 1);
  REQUIRE(inst.successors.next[0].size() == 4);
  CHECK(inst.successors.next[0][0][0] == std::vector<int>{1, 2, 3});
  CHECK(inst.successors.initial[0][0] == std::vector<int>{0, 1, 2});
  CHECK(inst.successors.initial[0][1] == std::vector<int>{0, 1, 2, 3});

  // an empty set of opportunities is a valid instance
  const Instance empty = build_instance({}, config, kMinutesPerDay);
  CHECK(empty.units.empty());
  CHECK(empty.catalog.locations.empty());
}

TEST_CASE("build rejects bad inputs") {
  std::vector<UnitOpportunities> units;
  units.push_back({"u1", {mo(1, "Xyz", 0, 60)}});

  InstanceConfig config = default_instance_config();
  config.locations = {{{"Amr", true}}};
  CHECK_THROWS_WITH_AS(build_instance(units, config, kMinutesPerDay),
                       doctest::Contains("Xyz"), BuildError);

  InstanceConfig no_types = default_instance_config();
  no_types.types.clear();
  CHECK_THROWS_AS(build_instance({}, no_types, kMinutesPerDay), BuildError);

  InstanceConfig bad_type = default_instance_config();
  bad_type.types[0].duration_hours = 0.0;
  CHECK_THROWS_AS(build_instance({}, bad_type, kMinutesPerDay), BuildError);

  InstanceConfig dup = default_instance_config();
  dup.types.push_back(dup.types[0]);
  CHECK_THROWS_AS(build_instance({}, dup, kMinutesPerDay), BuildError);

  InstanceConfig bad_b = default_instance_config();
  bad_b.b_hours["u1:9"] = 1.0;  // unknown type id
  CHECK_THROWS_AS(build_instance({}, bad_b, kMinutesPerDay), BuildError);

  InstanceConfig bad_cand = default_instance_config();
  bad_cand.locations = {{{"Amr", true}}};
  bad_cand.day_candidates = {{"Mt"}};
  CHECK_THROWS_AS(build_instance({}, bad_cand, kMinutesPerDay), BuildError);
}

TEST_CASE("epsilon bound warning flag") {
  std::vector<UnitOpportunities> units;
  std::vector<Opportunity> many;
  for (int i = 0; i < 600; ++i) {
    many.push_back(mo(i + 1, "A", i * 100, i * 100 + 50));
  }
  units.push_back({"u1", std::move(many)});
  InstanceConfig config = default_instance_config();
  const Instance inst = build_instance(units, config, 600 * 100 + 100);
  // 600 MOs * 2 types * 0.001 = 1.2 >= 1
  CHECK_FALSE(inst.epsilon_bound_ok);
}

TEST_CASE("initial requirement guard") {
  std::vector<UnitOpportunities> units;
  units.push_back({"u1", {mo(1, "A", 60, 120)}});
  InstanceConfig config = default_instance_config();  // o1=24h, o2=48h
  const Instance guarded = build_instance(units, config, kMinutesPerDay);
  CHECK(guarded.initial_requirement_active(0, 0));        // 24h <= 24h horizon
  CHECK_FALSE(guarded.initial_requirement_active(0, 1));  // 48h > horizon

  config.guard_initial = false;
  const Instance literal = build_instance(units, config, kMinutesPerDay);
  CHECK(literal.initial_requirement_active(0, 0));
  CHECK(literal.initial_requirement_active(0, 1));
}
