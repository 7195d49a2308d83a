// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference solutions. These recompute rates from the raw link
// coefficients with their own code path and search exhaustively, so they can
// check the optimizer.

#ifndef STARNOMA_ORACLES_HPP
#define STARNOMA_ORACLES_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "starnoma/baselines.hpp"
#include "starnoma/inner_ao.hpp"

namespace starnoma::oracle {

/// min of the two unit rates of a pair, order by gains (TU wins ties).
double pair_min_rate(const PairLinks& links, double beta_tu, double rho_tu, double power,
                     double noise);

struct GridOptimum {
  double x = 0;
  double y = 0;
  double value = 0;
};

/// Best beta_tu on {0, step, ..., 1}.
GridOptimum grid_amplitude(const PairLinks& links, double rho_tu, double power, double noise,
                           double step = 1e-3);

/// Best rho_tu on {0, step, ..., 1}.
GridOptimum grid_power(const PairLinks& links, double beta_tu, double power, double noise,
                       double step = 1e-3);

/// Best (beta_tu, rho_tu) on a product grid; x = beta, y = rho.
GridOptimum grid_joint(const PairLinks& links, double power, double noise, double step = 1e-3);

/// Dense simplex for max c'x s.t. A x <= b, x >= 0, with b >= 0 (origin
/// feasible). Bland's rule. Returns the optimal x; throws if unbounded.
Eigen::VectorXd simplex_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                                 const Eigen::VectorXd& b);

/// Max-min time allocation by LP: returns S.
double time_allocation_lp(const Eigen::VectorXd& unit_rates);

/// Best utility over all K! matchings, computed with `inner_solve`.
struct EnumeratedBest {
  Matching matching;
  double utility = 0;
  int count = 0;
};

EnumeratedBest enumerate_matchings(const ChannelRealization& channels, const LinkBudget& link,
                                   const SolverOptions& options);

/// max |combined_gain| over `draws` uniform phase vectors.
double random_phase_best_gain(std::complex<double> h_direct, const CVectorXd& ris_user,
                              const CVectorXd& bs_ris, double beta, int draws,
                              std::uint64_t seed);

/// Aligned-phase links of the single pair of a K = 1 scenario.
PairLinks aligned_pair(const ChannelRealization& channels, int tu, int ru);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteOptions {
  SystemConfig base;
  std::uint64_t seed = 1;
  int amplitude_instances = 50;
  int power_instances = 50;
  int time_instances = 100;
  int joint_instances = 25;
  int matching_scenarios = 50;
  int phase_realizations = 20;
};

CheckResult check_amplitude_oracle(const SuiteOptions& o);
CheckResult check_power_oracle(const SuiteOptions& o);
CheckResult check_time_oracle(const SuiteOptions& o);
CheckResult check_joint_oracle(const SuiteOptions& o);
CheckResult check_matching_oracle(const SuiteOptions& o);
CheckResult check_phase_oracle(const SuiteOptions& o);

std::vector<CheckResult> run_oracle_suite(const SuiteOptions& o);

}  // namespace starnoma::oracle

#endif  // STARNOMA_ORACLES_HPP
