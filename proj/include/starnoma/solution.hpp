// SPDX-License-Identifier: Apache-2.0

#ifndef STARNOMA_SOLUTION_HPP
#define STARNOMA_SOLUTION_HPP

#include <string>
#include <vector>

#include "starnoma/pairing.hpp"
#include "starnoma/star_noma.hpp"

namespace starnoma {

struct InnerTraceEntry {
  int iteration;
  std::string block;  // init, order, phase, amplitude, power, time
  double objective;
};

struct OuterTraceEntry {
  int scan;
  int tu_a;
  int tu_b;
  bool accepted;
  double utility;  // utility of the current matching after the decision
};

struct Solution {
  Matching matching;
  AllocationState allocation;
  RateReport report;

  std::vector<InnerTraceEntry> inner_trace;
  int inner_iterations = 0;
  bool inner_converged = false;

  std::vector<OuterTraceEntry> outer_trace;
  int outer_scans = 0;
  bool outer_cap_fired = false;
  int utility_evaluations = 0;

  double min_rate() const { return report.min_rate; }
};

/// Feasibility of a finished solution: simplex constraints, decoding orders,
/// bijective matching, and a report consistent with the allocation.
/// Throws std::invalid_argument naming the violated constraint.
void check_solution(const ChannelRealization& channels, const Solution& solution,
                    double tol = 1e-9);

}  // namespace starnoma

#endif  // STARNOMA_SOLUTION_HPP
