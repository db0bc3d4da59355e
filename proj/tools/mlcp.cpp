// Command line front end: validate and transform circulations, solve
// instances, export the integer program, generate synthetic data and run
// experiment sweeps.
//
// Exit codes: 0 success, 1 validation failure, 2 I/O or format error,
// 3 infeasible model.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlcp/circulation.hpp"
#include "mlcp/instance.hpp"
#include "mlcp/lpexport.hpp"
#include "mlcp/metrics.hpp"
#include "mlcp/opportunities.hpp"
#include "mlcp/solution_io.hpp"
#include "mlcp/solver.hpp"
#include "mlcp/syngen.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitInfeasible = 3;

struct CommonOpts {
  std::string circulation;
  std::string config;
  std::string out_dir;
  int threads = 1;
  int lmax = -1;  // -1: keep config value
  int tau = 0;    // 0: full horizon
  std::optional<bool> include_boundaries;
  std::optional<bool> guard_initial;
  std::string classification;
};

mlcp::InstanceConfig make_config(const CommonOpts& opts) {
  mlcp::InstanceConfig config = opts.config.empty()
                                    ? mlcp::default_instance_config()
                                    : mlcp::load_instance_config_file(opts.config);
  if (opts.lmax >= 0) config.lmax_day = opts.lmax;
  if (opts.include_boundaries) config.include_boundary_mos = *opts.include_boundaries;
  if (opts.guard_initial) config.guard_initial = *opts.guard_initial;
  if (!opts.classification.empty()) {
    config.day_rule = opts.classification == "formula" ? mlcp::DayRule::EndOnly
                                                       : mlcp::DayRule::Prose;
  }
  return config;
}

mlcp::ExtractOptions extract_options(const mlcp::InstanceConfig& config) {
  mlcp::ExtractOptions opt;
  opt.day_start = config.day_start;
  opt.night_start = config.night_start;
  opt.include_boundaries = config.include_boundary_mos;
  opt.rule = config.day_rule;
  return opt;
}

int report_violations(const std::vector<mlcp::RuleViolation>& violations) {
  for (const auto& v : violations) {
    std::cout << "unit=" << (v.unit_id.empty() ? "-" : v.unit_id)
              << " trip=" << v.trip_index << " rule=" << v.rule << ": "
              << v.message << "\n";
  }
  return violations.empty() ? kExitOk : kExitValidation;
}

// Loads, validates and assembles an instance; prints violations and returns
// an exit code on failure.
int prepare(const CommonOpts& opts, mlcp::Instance* out,
            mlcp::InstanceConfig* config_out = nullptr) {
  mlcp::Circulation circ = mlcp::read_circulation_csv_file(opts.circulation);
  if (opts.tau > 0) circ = mlcp::truncate_circulation(circ, opts.tau);
  const auto violations = mlcp::validate_circulation(circ);
  if (!violations.empty()) return report_violations(violations);
  const mlcp::InstanceConfig config = make_config(opts);
  auto mos = mlcp::extract_opportunities(circ, extract_options(config));
  *out = mlcp::build_instance(std::move(mos), config, circ.horizon);
  if (config_out) *config_out = config;
  return -1;  // keep going
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mlcp::FormatError("cannot open '" + path.string() + "' for writing");
  return out;
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  fs::create_directories(p);
  return p;
}

int cmd_validate(const CommonOpts& opts) {
  return report_violations(
      mlcp::validate_circulation(mlcp::read_circulation_csv_file(opts.circulation)));
}

int cmd_extract(const CommonOpts& opts) {
  mlcp::Circulation circ = mlcp::read_circulation_csv_file(opts.circulation);
  if (opts.tau > 0) circ = mlcp::truncate_circulation(circ, opts.tau);
  const auto violations = mlcp::validate_circulation(circ);
  if (!violations.empty()) return report_violations(violations);
  const auto mos = mlcp::extract_opportunities(circ, extract_options(make_config(opts)));
  if (opts.out_dir.empty()) {
    mlcp::write_opportunity_csv(mos, std::cout);
  } else {
    auto out = open_out(ensure_out_dir(opts.out_dir) / "mos.csv");
    mlcp::write_opportunity_csv(mos, out);
  }
  return kExitOk;
}

int cmd_solve(const CommonOpts& opts, const std::string& solver) {
  mlcp::Instance inst;
  const int rc = prepare(opts, &inst);
  if (rc >= 0) return rc;

  mlcp::SolverOptions sopt;
  sopt.threads = opts.threads;
  mlcp::SolveResult result;
  if (solver == "greedy") {
    result = mlcp::solve_greedy(inst, sopt);
  } else if (solver == "oracle") {
    result = mlcp::brute_force_oracle(inst);
  } else {
    result = mlcp::solve_exact(inst, sopt);
  }

  const fs::path dir = ensure_out_dir(opts.out_dir);
  open_out(dir / "solution.json") << mlcp::solution_to_string(inst, result);
  const std::string scenario = fs::path(opts.circulation).stem().string();
  const auto report = mlcp::scenario_report(scenario, inst.lmax_day, inst, result);
  {
    auto out = open_out(dir / "report.csv");
    mlcp::write_share_csv({report}, out);
  }
  if (!result.ok()) {
    std::cout << "infeasible";
    for (const auto& u : result.infeasible_units) std::cout << ' ' << u;
    std::cout << "\n";
    return kExitInfeasible;
  }
  std::cout << "objective night=" << result.solution.objective.night
            << " total=" << result.solution.objective.total << " y_day=[";
  for (std::size_t i = 0; i < result.solution.y_day.size(); ++i) {
    std::cout << (i ? "," : "") << result.solution.y_day[i];
  }
  std::cout << "]\n";
  return kExitOk;
}

int cmd_export_lp(const CommonOpts& opts) {
  mlcp::Instance inst;
  const int rc = prepare(opts, &inst);
  if (rc >= 0) return rc;
  const mlcp::LpModel model = mlcp::build_lp(inst);
  const fs::path dir = ensure_out_dir(opts.out_dir);
  open_out(dir / "model.lp") << mlcp::write_lp(model);
  open_out(dir / "model.map.json") << mlcp::variable_map_json(model).dump(2) << "\n";
  return kExitOk;
}

int cmd_gen(const CommonOpts& opts, std::uint64_t seed, bool seed_set) {
  mlcp::GenParams params;
  if (!opts.config.empty()) params = mlcp::gen_params_from_json_file(opts.config);
  if (seed_set) params.seed = seed;
  const mlcp::Circulation circ = mlcp::generate(params);
  if (opts.out_dir.empty()) {
    mlcp::write_circulation_csv(circ, std::cout);
  } else {
    auto out = open_out(ensure_out_dir(opts.out_dir) / "circulation.csv");
    mlcp::write_circulation_csv(circ, out);
  }
  return kExitOk;
}

struct ExperimentConfig {
  std::optional<mlcp::GenParams> gen;
  std::string circulation;
  mlcp::InstanceConfig instance = mlcp::default_instance_config();
  std::vector<std::uint64_t> seeds = {1};
  std::vector<int> taus = {0};
  std::vector<int> lmaxes = {0};
  std::vector<int> unit_counts = {0};
  std::string solver = "exact";
};

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mlcp::FormatError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw mlcp::FormatError(std::string("experiment config: ") + e.what());
  }
  ExperimentConfig c;
  try {
    if (j.contains("gen")) {
      std::stringstream ss(j.at("gen").dump());
      c.gen = mlcp::gen_params_from_json(ss);
    }
    c.circulation = j.value("circulation", c.circulation);
    if (j.contains("instance")) {
      std::stringstream ss(j.at("instance").dump());
      c.instance = mlcp::load_instance_config(ss);
    }
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("taus")) c.taus = j.at("taus").get<std::vector<int>>();
    if (j.contains("lmaxes")) c.lmaxes = j.at("lmaxes").get<std::vector<int>>();
    if (j.contains("unit_counts")) {
      c.unit_counts = j.at("unit_counts").get<std::vector<int>>();
    }
    c.solver = j.value("solver", c.solver);
  } catch (const nlohmann::json::exception& e) {
    throw mlcp::FormatError(std::string("experiment config: ") + e.what());
  }
  if (!c.gen.has_value() && c.circulation.empty()) {
    throw mlcp::FormatError("experiment config needs 'gen' or 'circulation'");
  }
  if (c.seeds.empty() || c.taus.empty() || c.lmaxes.empty() || c.unit_counts.empty()) {
    throw mlcp::FormatError("experiment sweep lists must be non-empty");
  }
  return c;
}

int cmd_experiment(const CommonOpts& opts) {
  const ExperimentConfig config = load_experiment_config(opts.config);
  mlcp::SolverOptions sopt;
  sopt.threads = opts.threads;

  std::vector<mlcp::ScenarioReport> reports;
  for (const std::uint64_t seed : config.seeds) {
    mlcp::Circulation base;
    if (config.gen.has_value()) {
      mlcp::GenParams params = *config.gen;
      params.seed = seed;
      base = mlcp::generate(params);
    } else {
      base = mlcp::read_circulation_csv_file(config.circulation);
    }
    for (const int units : config.unit_counts) {
      mlcp::Circulation filtered = base;
      if (units > 0 && static_cast<std::size_t>(units) < filtered.rosters.size()) {
        filtered.rosters.resize(static_cast<std::size_t>(units));
      }
      for (const int tau : config.taus) {
        const mlcp::Circulation circ =
            tau > 0 ? mlcp::truncate_circulation(filtered, tau) : filtered;
        const auto violations = mlcp::validate_circulation(circ);
        if (!violations.empty()) return report_violations(violations);
        auto mos = mlcp::extract_opportunities(
            circ, extract_options(config.instance));
        for (const int lmax : config.lmaxes) {
          mlcp::InstanceConfig icfg = config.instance;
          icfg.lmax_day = lmax;
          const mlcp::Instance inst =
              mlcp::build_instance(mos, icfg, circ.horizon);
          mlcp::SolveResult result;
          if (config.solver == "greedy") {
            result = mlcp::solve_greedy(inst, sopt);
          } else if (config.solver == "oracle") {
            result = mlcp::brute_force_oracle(inst);
          } else {
            result = mlcp::solve_exact(inst, sopt);
          }
          const std::string scenario = "b" + std::to_string(seed) + "_nu" +
                                       std::to_string(units) + "_tau" +
                                       std::to_string(tau);
          reports.push_back(mlcp::scenario_report(scenario, lmax, inst, result));
        }
      }
    }
  }

  const fs::path dir = ensure_out_dir(opts.out_dir);
  {
    auto out = open_out(dir / "share.csv");
    mlcp::write_share_csv(reports, out);
  }
  {
    auto out = open_out(dir / "locations.csv");
    mlcp::write_locations_csv(mlcp::consistency(reports), out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maintenance location choice for fixed rolling stock circulations"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string solver = "exact";
  std::uint64_t seed = 1;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd, bool needs_circulation) {
    if (needs_circulation) {
      cmd->add_option("--circulation", opts.circulation, "circulation CSV")
          ->required();
    }
    cmd->add_option("--config", opts.config, "config JSON");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--threads", opts.threads, "worker threads")
        ->envname("MLCP_THREADS");
    cmd->add_option("--lmax", opts.lmax, "daytime location budget");
    cmd->add_option("--tau", opts.tau, "truncate to the first DAYS days");
    cmd->add_option("--include-boundaries", opts.include_boundaries,
                    "include horizon-boundary standstills");
    cmd->add_option("--guard-initial", opts.guard_initial,
                    "skip initial requirements whose deadline exceeds the horizon");
    cmd->add_option("--classification", opts.classification,
                    "daytime rule: prose|formula")
        ->check(CLI::IsMember({"prose", "formula"}));
  };

  CLI::App* validate = app.add_subcommand("validate", "check a circulation CSV");
  validate->add_option("--circulation", opts.circulation, "circulation CSV")->required();

  CLI::App* extract = app.add_subcommand("extract-mos", "list maintenance opportunities");
  add_common(extract, true);

  CLI::App* solve = app.add_subcommand("solve", "choose locations and schedule");
  add_common(solve, true);
  solve->add_option("--solver", solver, "exact|greedy|oracle")
      ->check(CLI::IsMember({"exact", "greedy", "oracle"}));

  CLI::App* export_lp = app.add_subcommand("export-lp", "write the integer program");
  add_common(export_lp, true);

  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic circulation");
  gen->add_option("--config", opts.config, "generator params JSON");
  gen->add_option("--out", opts.out_dir, "output directory");
  gen->add_option("--seed", seed, "generator seed")->each([&](const std::string&) {
    seed_set = true;
  });

  CLI::App* experiment = app.add_subcommand("experiment", "run a sweep");
  experiment->add_option("--config", opts.config, "experiment config JSON")->required();
  experiment->add_option("--out", opts.out_dir, "output directory");
  experiment->add_option("--threads", opts.threads, "worker threads")
      ->envname("MLCP_THREADS");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) return cmd_validate(opts);
    if (app.got_subcommand(extract)) return cmd_extract(opts);
    if (app.got_subcommand(solve)) return cmd_solve(opts, solver);
    if (app.got_subcommand(export_lp)) return cmd_export_lp(opts);
    if (app.got_subcommand(gen)) return cmd_gen(opts, seed, seed_set);
    if (app.got_subcommand(experiment)) return cmd_experiment(opts);
  } catch (const mlcp::OracleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}
