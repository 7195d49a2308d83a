// SPDX-License-Identifier: Apache-2.0
//
// Outer layer: swap matching over TU/RU pairings. The utility of a pairing is
// the min rate reached by the inner solver on it.

#ifndef STARNOMA_MATCHING_HPP
#define STARNOMA_MATCHING_HPP

#include <map>
#include <vector>

#include "starnoma/inner_ao.hpp"
#include "starnoma/pairing.hpp"
#include "starnoma/solution.hpp"

namespace starnoma {

/// Memoized inner solutions keyed by matching.
class UtilityCache {
 public:
  UtilityCache(const ChannelRealization& channels, const LinkBudget& link,
               const SolverOptions& options, BlockPlan plan = {});

  /// Solves on a miss; hits return the stored solution unchanged.
  const Solution& solve(const Matching& matching);
  double utility(const Matching& matching) { return solve(matching).min_rate(); }

  int evaluations() const { return evaluations_; }
  const std::map<std::vector<int>, Solution>& entries() const { return cache_; }
  int hits() const { return hits_; }

 private:
  const ChannelRealization& channels_;
  LinkBudget link_;
  SolverOptions options_;
  BlockPlan plan_;
  std::map<std::vector<int>, Solution> cache_;
  int evaluations_ = 0;
  int hits_ = 0;
};

/// Default cap on full swap scans: K (K - 1) / 2, at least one.
int default_max_scans(int users_per_side);

/// First-improvement swap search in lexicographic TU-pair order, accepting a
/// swap only on strict utility increase. Stops after a scan with no accepted
/// swap or after `max_scans` scans. `max_scans` = 0 skips swaps entirely.
Solution outer_solve(const ChannelRealization& channels, const LinkBudget& link,
                     const SolverOptions& options, const Matching& initial, int max_scans,
                     const BlockPlan& plan = {});

/// Same search on a caller-owned cache, so every evaluated matching stays
/// inspectable afterwards.
Solution outer_solve(UtilityCache& cache, const Matching& initial, int max_scans);

/// True when no single swap strictly improves the utility of `matching`.
bool is_swap_stable(UtilityCache& cache, const Matching& matching);

}  // namespace starnoma

#endif  // STARNOMA_MATCHING_HPP
