// SPDX-License-Identifier: Apache-2.0

#include "starnoma/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starnoma/baselines.hpp"
#include "starnoma/config_io.hpp"
#include "starnoma/harness.hpp"
#include "starnoma/oracles.hpp"

namespace starnoma {

namespace {

struct Common {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  int trials = 1;
  std::string frameworks;
  std::string ablations;
  int workers = 0;
};

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

SystemConfig load(const Common& c) {
  SystemConfig config = c.config_path.empty() ? SystemConfig{} : load_config(c.config_path);
  if (c.seed) config.rng_seed = *c.seed;
  validate(config);
  return config;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Framework> parse_frameworks(const std::string& frameworks,
                                        const std::string& ablations) {
  std::vector<Framework> out;
  auto add = [&](Framework f) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  };
  if (frameworks == "all") {
    for (Framework f : {Framework::HybridNomaStar, Framework::TdmaStar, Framework::ReflectOnly,
                        Framework::NoRis}) {
      add(f);
    }
  } else {
    for (const std::string& name : split_list(frameworks)) add(framework_from_string(name));
  }
  if (ablations == "all") {
    for (Ablation a : {Ablation::EqualTime, Ablation::EqualPower, Ablation::DistancePairing,
                       Ablation::RandomPhase}) {
      add(to_framework(a));
    }
  } else {
    for (const std::string& name : split_list(ablations)) add(to_framework(ablation_from_string(name)));
  }
  if (out.empty()) throw std::invalid_argument("no frameworks selected");
  return out;
}

void add_common(CLI::App* cmd, Common& c, bool sweep) {
  cmd->add_option("--config", c.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out_path, "output CSV path");
  cmd->add_option("--seed", c.seed, "base seed (overrides the config)");
  if (sweep) {
    cmd->add_option("--trials", c.trials, "Monte Carlo trials per cell")->check(CLI::PositiveNumber);
    cmd->add_option("--frameworks", c.frameworks, "comma list or 'all'")
        ->default_str("hybrid_noma_star");
    cmd->add_option("--ablations", c.ablations,
                    "comma list of equal_time,equal_power,distance_pairing,random_phase or 'all'");
    cmd->add_option("--workers", c.workers, "worker threads (0: automatic)");
  }
}

void print_summary(std::ostream& out, const ResultTable& table) {
  out << "framework,elements,value,n,mean_min_rate,se\n";
  for (const CellSummary& c : summarize(table)) {
    out << c.framework << ',' << c.elements << ',' << fmt(c.value) << ',' << c.n << ','
        << fmt(c.mean, "%.9g") << ',' << fmt(c.se, "%.3g") << '\n';
  }
}

int finish_sweep(const Common& c, const ResultTable& table, std::ostream& out,
                 std::ostream& err) {
  for (const std::string& f : table.failures) err << "trial failed: " << f << '\n';
  if (!c.out_path.empty()) emit_csv(table, c.out_path);
  print_summary(out, table);
  return table.failures.empty() ? 0 : 3;
}

std::string trial_path(const std::string& path, int trial, int trials) {
  if (trials == 1) return path;
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_t" + std::to_string(trial) +
                             p.extension().string()))
      .string();
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"STAR-RIS hybrid NOMA-TDMA max-min rate optimizer"};
  app.require_subcommand(1);

  Common solve_opts;
  std::string solve_framework_name = "hybrid_noma_star";
  auto* solve_cmd = app.add_subcommand("solve", "solve one scenario and print the solution");
  add_common(solve_cmd, solve_opts, false);
  solve_cmd->add_option("--framework", solve_framework_name, "framework to run");

  Common conv_opts;
  auto* conv_cmd = app.add_subcommand("convergence", "write inner/outer objective traces");
  add_common(conv_cmd, conv_opts, false);
  conv_cmd->add_option("--trials", conv_opts.trials, "scenarios (seed, seed+1, ...)")
      ->check(CLI::PositiveNumber);

  Common users_opts;
  std::vector<int> users{2, 4, 6};
  auto* users_cmd = app.add_subcommand("sweep-users", "min rate versus users per side");
  add_common(users_cmd, users_opts, true);
  users_cmd->add_option("--users", users, "users per side")->delimiter(',');

  Common dist_opts;
  std::vector<double> distances{50, 200, 400};
  std::vector<int> elements{16, 64};
  auto* dist_cmd =
      app.add_subcommand("sweep-distance", "min rate versus BS-RIS ground distance, per array size");
  add_common(dist_cmd, dist_opts, true);
  dist_cmd->add_option("--distances", distances, "BS-RIS 2-D distances in m")->delimiter(',');
  dist_cmd->add_option("--elements", elements, "array sizes (perfect squares)")->delimiter(',');

  Common oracle_opts;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the optimizer with brute force");
  add_common(oracle_cmd, oracle_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*solve_cmd) {
      const SystemConfig config = load(solve_opts);
      const Framework framework = framework_from_string(solve_framework_name);
      const Scenario s = make_scenario(config, config.rng_seed);
      const Solution sol = solve_framework(s, framework);
      check_solution(framework_channels(s, framework), sol);
      out << "framework " << to_string(framework) << '\n'
          << "seed " << s.seed << '\n'
          << "users_per_side " << config.users_per_side << '\n'
          << "elements " << config.elements() << '\n'
          << "matching " << to_string(sol.matching) << '\n'
          << "min_rate " << fmt(sol.min_rate(), "%.9g") << '\n'
          << "user_rates";
      for (Eigen::Index u = 0; u < sol.report.rate.size(); ++u) {
        out << ' ' << fmt(sol.report.rate(u), "%.9g");
      }
      out << '\n'
          << "inner_iterations " << sol.inner_iterations << '\n'
          << "outer_scans " << sol.outer_scans << '\n';
      if (!solve_opts.out_path.empty()) emit_trace(sol, solve_opts.out_path);
      return 0;
    }
    if (*conv_cmd) {
      const SystemConfig config = load(conv_opts);
      out << "seed,inner_iterations,converged,outer_scans,min_rate\n";
      for (int t = 0; t < conv_opts.trials; ++t) {
        const Scenario s = make_scenario(config, config.rng_seed + t);
        const Solution sol = solve_hybrid_noma_star(s);
        check_solution(s.channels, sol);
        out << s.seed << ',' << sol.inner_iterations << ',' << (sol.inner_converged ? 1 : 0)
            << ',' << sol.outer_scans << ',' << fmt(sol.min_rate(), "%.9g") << '\n';
        if (!conv_opts.out_path.empty()) {
          emit_trace(sol, trial_path(conv_opts.out_path, t, conv_opts.trials));
        }
      }
      return 0;
    }
    if (*users_cmd) {
      ExperimentSpec spec;
      spec.base = load(users_opts);
      spec.base_seed = spec.base.rng_seed;
      spec.frameworks = parse_frameworks(
          users_opts.frameworks.empty() ? "hybrid_noma_star" : users_opts.frameworks,
          users_opts.ablations);
      spec.variable = SweepVariable::NumUsers;
      spec.values.assign(users.begin(), users.end());
      spec.trials = users_opts.trials;
      spec.workers = users_opts.workers;
      return finish_sweep(users_opts, run_experiment(spec), out, err);
    }
    if (*dist_cmd) {
      ResultTable combined;
      const SystemConfig base = load(dist_opts);
      for (int m : elements) {
        ExperimentSpec spec;
        spec.base = apply_sweep(base, SweepVariable::Elements, m);
        spec.base_seed = base.rng_seed;
        spec.frameworks = parse_frameworks(
            dist_opts.frameworks.empty() ? "hybrid_noma_star" : dist_opts.frameworks,
            dist_opts.ablations);
        spec.variable = SweepVariable::BsRisDistance;
        spec.values = distances;
        spec.trials = dist_opts.trials;
        spec.workers = dist_opts.workers;
        ResultTable t = run_experiment(spec);
        combined.rows.insert(combined.rows.end(), t.rows.begin(), t.rows.end());
        combined.failures.insert(combined.failures.end(), t.failures.begin(), t.failures.end());
      }
      return finish_sweep(dist_opts, combined, out, err);
    }
    if (*oracle_cmd) {
      oracle::SuiteOptions o;
      o.base = load(oracle_opts);
      o.seed = o.base.rng_seed;
      bool all = true;
      std::ostringstream report;
      for (const oracle::CheckResult& r : oracle::run_oracle_suite(o)) {
        report << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")\n";
        all = all && r.passed;
      }
      out << report.str();
      if (!oracle_opts.out_path.empty()) {
        std::ofstream f(oracle_opts.out_path);
        if (!f) throw std::runtime_error("cannot open " + oracle_opts.out_path + " for writing");
        f << report.str();
      }
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace starnoma
