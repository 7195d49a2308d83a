// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo sweeps over frameworks, CSV output and summary statistics.

#ifndef STARNOMA_HARNESS_HPP
#define STARNOMA_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "starnoma/baselines.hpp"

namespace starnoma {

enum class SweepVariable { NumUsers, Elements, BsRisDistance };

/// num_users, elements, bs_ris_2d_distance
std::string to_string(SweepVariable variable);
SweepVariable sweep_variable_from_string(const std::string& name);

/// Applies one sweep value to a config. Elements must be a perfect square
/// (square array); the other variables take the value as is.
SystemConfig apply_sweep(const SystemConfig& base, SweepVariable variable, double value);

struct ExperimentSpec {
  std::vector<Framework> frameworks;
  SweepVariable variable = SweepVariable::NumUsers;
  std::vector<double> values;  // strictly increasing
  int trials = 1;
  SystemConfig base;
  std::uint64_t base_seed = 1;  // trial t uses base_seed + t
  int workers = 0;              // 0: hardware threads, capped by STARNOMA_WORKERS
};

void validate(const ExperimentSpec& spec);

struct ResultRow {
  std::string framework;
  std::string sweep;
  double value = 0;
  int elements = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double min_rate = 0;
  int inner_iterations = 0;
  int outer_scans = 0;
  double wall_ms = 0;
  std::vector<double> user_rates;
};

struct ResultTable {
  std::vector<ResultRow> rows;       // ordered by framework, value, trial
  std::vector<std::string> failures;  // one message per failed trial
};

/// Number of worker threads for `requested` (0 = automatic).
int worker_count(int requested);

ResultTable run_experiment(const ExperimentSpec& spec);

struct CellSummary {
  std::string framework;
  int elements = 0;
  double value = 0;
  int n = 0;
  double mean = 0;
  double se = 0;
};

/// Mean and standard error of min_rate per (framework, elements, value).
std::vector<CellSummary> summarize(const ResultTable& table);

/// `elements` < 0 matches any array size.
const CellSummary* find_cell(const std::vector<CellSummary>& cells, const std::string& framework,
                             double value, int elements = -1);

/// Mean of (a - b) over trials present for both, with the standard error of
/// the paired differences.
struct PairedGap {
  int n = 0;
  double mean = 0;
  double se = 0;
};

PairedGap paired_gap(const ResultTable& table, const std::string& framework_a, double value_a,
                     const std::string& framework_b, double value_b);

/// framework,sweep,value,elements,trial,seed,min_rate,inner_iterations,
/// outer_scans,wall_ms,user_rates,cell_mean,cell_se
/// Floats use 9 significant digits; user_rates are ';'-separated.
void write_csv(const ResultTable& table, std::ostream& out);
void emit_csv(const ResultTable& table, const std::string& path);
ResultTable parse_csv(std::istream& in);
ResultTable parse_csv_file(const std::string& path);

/// layer,iteration,block,objective. Inner rows carry the AO block name, outer
/// rows the swap decision as swap:<tu_a>:<tu_b>:<accept|reject>.
void write_trace(const Solution& solution, std::ostream& out);
void emit_trace(const Solution& solution, const std::string& path);

}  // namespace starnoma

#endif  // STARNOMA_HARNESS_HPP
