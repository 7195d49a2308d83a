// SPDX-License-Identifier: Apache-2.0
//
// The proposed two-layer algorithm and the comparison schemes, behind one
// entry point.

#ifndef STARNOMA_BASELINES_HPP
#define STARNOMA_BASELINES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "starnoma/channel.hpp"
#include "starnoma/matching.hpp"
#include "starnoma/scenario.hpp"
#include "starnoma/solution.hpp"

namespace starnoma {

enum class Framework {
  HybridNomaStar,
  TdmaStar,
  ReflectOnly,
  NoRis,
  EqualTime,
  EqualPower,
  DistancePairing,
  RandomPhase,
};

enum class Ablation { EqualTime, EqualPower, DistancePairing, RandomPhase };

/// hybrid_noma_star, tdma_star, reflect_only, no_ris, equal_time, equal_power,
/// distance_pairing, random_phase.
std::string to_string(Framework framework);
Framework framework_from_string(const std::string& name);
Ablation ablation_from_string(const std::string& name);
Framework to_framework(Ablation ablation);
const std::vector<Framework>& all_frameworks();

/// One drop: users and channels drawn from `seed`.
struct Scenario {
  SystemConfig config;
  UserSet users;
  ChannelRealization channels;
  std::uint64_t seed = 0;
};

Scenario make_scenario(const SystemConfig& config, std::uint64_t seed);

/// Full algorithm: distance pairing, then swap search with the inner AO.
Solution solve_hybrid_noma_star(const Scenario& scenario);

/// One slot per user, beta = 1 toward the served side, aligned phases,
/// max-min time shares. Power per slot follows `config.tdma_power`.
Solution solve_tdma_star(const Scenario& scenario);

/// TUs see the direct link only (beta_TU = 0), RUs the full reflection.
Solution solve_reflect_only(const Scenario& scenario);

/// Every cascade zeroed; phase and amplitude blocks skipped.
Solution solve_no_ris(const Scenario& scenario);

Solution solve_ablation(const Scenario& scenario, Ablation ablation);

Solution solve_framework(const Scenario& scenario, Framework framework);

/// Channels a framework's solution is evaluated on.
ChannelRealization framework_channels(const Scenario& scenario, Framework framework);

}  // namespace starnoma

#endif  // STARNOMA_BASELINES_HPP
