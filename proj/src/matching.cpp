// SPDX-License-Identifier: Apache-2.0

#include "starnoma/matching.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace starnoma {

UtilityCache::UtilityCache(const ChannelRealization& channels, const LinkBudget& link,
                           const SolverOptions& options, BlockPlan plan)
    : channels_(channels), link_(link), options_(options), plan_(std::move(plan)) {}

const Solution& UtilityCache::solve(const Matching& matching) {
  if (auto it = cache_.find(matching.key()); it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  ++evaluations_;
  auto [it, inserted] =
      cache_.emplace(matching.key(), inner_solve(channels_, matching, link_, options_, plan_));
  return it->second;
}

int default_max_scans(int users_per_side) {
  return std::max(1, users_per_side * (users_per_side - 1) / 2);
}

Solution outer_solve(const ChannelRealization& channels, const LinkBudget& link,
                     const SolverOptions& options, const Matching& initial, int max_scans,
                     const BlockPlan& plan) {
  UtilityCache cache(channels, link, options, plan);
  return outer_solve(cache, initial, max_scans);
}

Solution outer_solve(UtilityCache& cache, const Matching& initial, int max_scans) {
  if (!initial.is_valid()) throw std::invalid_argument("outer_solve: invalid initial matching");
  if (max_scans < 0) throw std::invalid_argument("outer_solve: max_scans must be >= 0");
  const int k = initial.size();

  Matching current = initial;
  double current_utility = cache.utility(current);
  std::vector<OuterTraceEntry> trace;
  int scans = 0;
  bool last_scan_accepted = false;
  while (scans < max_scans && k > 1) {
    ++scans;
    last_scan_accepted = false;
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        const Matching candidate = swap(current, a, b);
        const double u = cache.utility(candidate);
        const bool accept = u > current_utility;
        if (accept) {
          current = candidate;
          current_utility = u;
          last_scan_accepted = true;
        }
        trace.push_back({scans, a, b, accept, current_utility});
      }
    }
    if (!last_scan_accepted) break;
  }

  Solution best = cache.solve(current);
  best.outer_trace = std::move(trace);
  best.outer_scans = scans;
  best.outer_cap_fired = last_scan_accepted;
  best.utility_evaluations = cache.evaluations();
  return best;
}

bool is_swap_stable(UtilityCache& cache, const Matching& matching) {
  const double base = cache.utility(matching);
  for (int a = 0; a < matching.size(); ++a) {
    for (int b = a + 1; b < matching.size(); ++b) {
      if (cache.utility(swap(matching, a, b)) > base) return false;
    }
  }
  return true;
}

}  // namespace starnoma
