// SPDX-License-Identifier: Apache-2.0

#include "starnoma/baselines.hpp"

#include <array>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "starnoma/inner_ao.hpp"

namespace starnoma {

namespace {

constexpr std::array<std::pair<Framework, const char*>, 8> kNames{{
    {Framework::HybridNomaStar, "hybrid_noma_star"},
    {Framework::TdmaStar, "tdma_star"},
    {Framework::ReflectOnly, "reflect_only"},
    {Framework::NoRis, "no_ris"},
    {Framework::EqualTime, "equal_time"},
    {Framework::EqualPower, "equal_power"},
    {Framework::DistancePairing, "distance_pairing"},
    {Framework::RandomPhase, "random_phase"},
}};

Matching distance_matching(const Scenario& s) {
  return initial_matching(s.users, s.config.ris_position, PairingPolicy::Distance);
}

Solution run_two_layer(const Scenario& s, const ChannelRealization& channels,
                       const SolverOptions& options, const BlockPlan& plan, int max_scans) {
  return outer_solve(channels, link_budget(s.config), options, distance_matching(s), max_scans,
                     plan);
}

int scans(const Scenario& s) { return default_max_scans(s.config.users_per_side); }

}  // namespace

std::string to_string(Framework framework) {
  for (const auto& [f, name] : kNames) {
    if (f == framework) return name;
  }
  throw std::invalid_argument("unknown framework");
}

Framework framework_from_string(const std::string& name) {
  for (const auto& [f, n] : kNames) {
    if (name == n) return f;
  }
  throw std::invalid_argument("unknown framework: " + name);
}

Ablation ablation_from_string(const std::string& name) {
  if (name == "equal_time") return Ablation::EqualTime;
  if (name == "equal_power") return Ablation::EqualPower;
  if (name == "distance_pairing") return Ablation::DistancePairing;
  if (name == "random_phase") return Ablation::RandomPhase;
  throw std::invalid_argument("unknown ablation: " + name);
}

Framework to_framework(Ablation ablation) {
  switch (ablation) {
    case Ablation::EqualTime: return Framework::EqualTime;
    case Ablation::EqualPower: return Framework::EqualPower;
    case Ablation::DistancePairing: return Framework::DistancePairing;
    case Ablation::RandomPhase: return Framework::RandomPhase;
  }
  throw std::invalid_argument("unknown ablation");
}

const std::vector<Framework>& all_frameworks() {
  static const std::vector<Framework> all = [] {
    std::vector<Framework> v;
    for (const auto& [f, name] : kNames) v.push_back(f);
    return v;
  }();
  return all;
}

Scenario make_scenario(const SystemConfig& config, std::uint64_t seed) {
  validate(config);
  Scenario s;
  s.config = config;
  s.config.rng_seed = seed;
  s.seed = seed;
  std::mt19937_64 placement = make_stream(seed, Stream::Placement);
  s.users = generate_users(config, placement);
  std::mt19937_64 fading = make_stream(seed, Stream::Fading);
  s.channels = build_channels(config, s.users, fading);
  return s;
}

Solution solve_hybrid_noma_star(const Scenario& s) {
  return run_two_layer(s, s.channels, s.config.solver, {}, scans(s));
}

Solution solve_tdma_star(const Scenario& s) {
  const ChannelRealization& ch = s.channels;
  const int n = ch.users();
  const LinkBudget link = link_budget(s.config);
  AllocationState a;
  a.access = Access::Tdma;
  a.star.beta = Eigen::VectorXd::Ones(n);
  a.star.theta.resize(ch.elements(), n);
  for (int u = 0; u < n; ++u) {
    a.star.theta.col(u) = optimal_phase(ch.h_direct[u], ch.h_ris_user[u], ch.h_bs_ris);
  }
  const double share = s.config.tdma_power == TdmaPower::FullPerSlot ? 1.0 : 1.0 / n;
  a.rho = Eigen::VectorXd::Constant(n, share);
  a.pi = Eigen::VectorXi::Zero(n);

  Eigen::VectorXd unit(n);
  for (int u = 0; u < n; ++u) {
    const double g = std::norm(
        combined_gain(ch.h_direct[u], ch.h_ris_user[u], ch.h_bs_ris, 1.0, a.star.theta.col(u)));
    unit(u) = std::log2(1.0 + sinr(g, share, 0.0, 0, link.power, link.noise));
  }
  a.tau = optimize_time(unit).tau;

  Solution sol;
  sol.matching = Matching::identity(s.config.users_per_side);
  sol.report = evaluate(ch, sol.matching, a, link);
  sol.allocation = std::move(a);
  sol.inner_trace.push_back({0, "time", sol.report.min_rate});
  sol.inner_iterations = 1;
  sol.inner_converged = true;
  return sol;
}

Solution solve_reflect_only(const Scenario& s) {
  const int k = s.config.users_per_side;
  BlockPlan plan;
  plan.optimize_amplitude = false;
  Eigen::VectorXd beta(2 * k);
  beta.head(k).setZero();
  beta.tail(k).setOnes();
  plan.fixed_beta = beta;
  return run_two_layer(s, s.channels, s.config.solver, plan, scans(s));
}

Solution solve_no_ris(const Scenario& s) {
  BlockPlan plan;
  plan.optimize_phase = false;
  plan.optimize_amplitude = false;
  return run_two_layer(s, without_cascade(s.channels), s.config.solver, plan, scans(s));
}

Solution solve_ablation(const Scenario& s, Ablation ablation) {
  SolverOptions options = s.config.solver;
  BlockPlan plan;
  int max_scans = scans(s);
  switch (ablation) {
    case Ablation::EqualTime:
      plan.optimize_time = false;
      break;
    case Ablation::EqualPower:
      plan.optimize_power = false;
      options.initial_rho = 0.5;
      break;
    case Ablation::DistancePairing:
      max_scans = 0;
      break;
    case Ablation::RandomPhase: {
      plan.optimize_phase = false;
      std::mt19937_64 rng = make_stream(s.seed, Stream::Phase);
      std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
      Eigen::MatrixXd theta(s.channels.elements(), s.channels.users());
      for (int u = 0; u < theta.cols(); ++u) {
        for (int m = 0; m < theta.rows(); ++m) theta(m, u) = uniform(rng);
      }
      plan.fixed_theta = std::move(theta);
      break;
    }
  }
  return run_two_layer(s, s.channels, options, plan, max_scans);
}

Solution solve_framework(const Scenario& s, Framework framework) {
  switch (framework) {
    case Framework::HybridNomaStar: return solve_hybrid_noma_star(s);
    case Framework::TdmaStar: return solve_tdma_star(s);
    case Framework::ReflectOnly: return solve_reflect_only(s);
    case Framework::NoRis: return solve_no_ris(s);
    case Framework::EqualTime: return solve_ablation(s, Ablation::EqualTime);
    case Framework::EqualPower: return solve_ablation(s, Ablation::EqualPower);
    case Framework::DistancePairing: return solve_ablation(s, Ablation::DistancePairing);
    case Framework::RandomPhase: return solve_ablation(s, Ablation::RandomPhase);
  }
  throw std::invalid_argument("unknown framework");
}

ChannelRealization framework_channels(const Scenario& s, Framework framework) {
  return framework == Framework::NoRis ? without_cascade(s.channels) : s.channels;
}

}  // namespace starnoma
