// SPDX-License-Identifier: Apache-2.0

#include "starnoma/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace starnoma::oracle {

namespace {

double gain_of(const UserLink& l, double beta) {
  const std::complex<double> h = l.direct + std::sqrt(beta) * l.cascade;
  return h.real() * h.real() + h.imag() * h.imag();
}

std::string describe(double worst, int failures, int total) {
  std::ostringstream s;
  s.precision(6);
  s << failures << "/" << total << " failed, worst " << worst;
  return s.str();
}

SystemConfig instance_config(const SuiteOptions& o, int k) {
  SystemConfig c = o.base;
  c.users_per_side = k;
  c.set_elements(4, 4);
  return c;
}

bool feasible(const ChannelRealization& channels, const Solution& sol) {
  try {
    check_solution(channels, sol);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

}  // namespace

double pair_min_rate(const PairLinks& links, double beta_tu, double rho_tu, double power,
                     double noise) {
  const double gt = gain_of(links.tu, beta_tu);
  const double gr = gain_of(links.ru, 1.0 - beta_tu);
  const double rho_ru = 1.0 - rho_tu;
  double st = 0;
  double sr = 0;
  if (gt >= gr) {
    // TU decodes last: interference free. RU sees the TU's signal.
    st = gt * rho_tu * power / noise;
    sr = gr * rho_ru * power / (gr * rho_tu * power + noise);
  } else {
    st = gt * rho_tu * power / (gt * rho_ru * power + noise);
    sr = gr * rho_ru * power / noise;
  }
  return std::min(std::log2(1.0 + st), std::log2(1.0 + sr));
}

GridOptimum grid_amplitude(const PairLinks& links, double rho_tu, double power, double noise,
                           double step) {
  const int n = static_cast<int>(std::lround(1.0 / step));
  GridOptimum best{0, rho_tu, -1};
  for (int i = 0; i <= n; ++i) {
    const double b = static_cast<double>(i) / n;
    const double v = pair_min_rate(links, b, rho_tu, power, noise);
    if (v > best.value) best = {b, rho_tu, v};
  }
  return best;
}

GridOptimum grid_power(const PairLinks& links, double beta_tu, double power, double noise,
                       double step) {
  const int n = static_cast<int>(std::lround(1.0 / step));
  GridOptimum best{beta_tu, 0, -1};
  for (int i = 0; i <= n; ++i) {
    const double r = static_cast<double>(i) / n;
    const double v = pair_min_rate(links, beta_tu, r, power, noise);
    if (v > best.value) best = {beta_tu, r, v};
  }
  return best;
}

GridOptimum grid_joint(const PairLinks& links, double power, double noise, double step) {
  const int n = static_cast<int>(std::lround(1.0 / step));
  GridOptimum best{0, 0, -1};
  for (int i = 0; i <= n; ++i) {
    const double b = static_cast<double>(i) / n;
    for (int j = 0; j <= n; ++j) {
      const double r = static_cast<double>(j) / n;
      const double v = pair_min_rate(links, b, r, power, noise);
      if (v > best.value) best = {b, r, v};
    }
  }
  return best;
}

Eigen::VectorXd simplex_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                                 const Eigen::VectorXd& b) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (c.size() != n || b.size() != m) throw std::invalid_argument("simplex: dimension mismatch");
  if ((b.array() < 0).any()) throw std::invalid_argument("simplex: b must be >= 0");

  // Tableau rows 0..m-1 are constraints, row m is the reduced cost row.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  t.block(0, 0, m, n) = a;
  t.block(0, n, m, m).setIdentity();
  t.col(n + m).head(m) = b;
  t.row(m).head(n) = -c.transpose();
  std::vector<Eigen::Index> basis(m);
  std::iota(basis.begin(), basis.end(), n);

  const double eps = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) > eps) {
        const double ratio = t(i, n + m) / t(i, enter);
        if (ratio < best_ratio - eps || (std::abs(ratio - best_ratio) <= eps && leave >= 0 &&
                                         basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("simplex: unbounded");
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[leave] = enter;
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] < n) x(basis[i]) = t(i, n + m);
  }
  return x;
}

double time_allocation_lp(const Eigen::VectorXd& unit_rates) {
  // Variables (tau_1..tau_K, S): S - r_p tau_p <= 0, sum tau <= 1.
  const Eigen::Index k = unit_rates.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k + 1);
  for (Eigen::Index p = 0; p < k; ++p) {
    a(p, p) = -unit_rates(p);
    a(p, k) = 1.0;
    a(k, p) = 1.0;
  }
  b(k) = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k + 1);
  c(k) = 1.0;
  return simplex_maximize(c, a, b)(k);
}

EnumeratedBest enumerate_matchings(const ChannelRealization& channels, const LinkBudget& link,
                                   const SolverOptions& options) {
  const int k = channels.users() / 2;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  EnumeratedBest best;
  best.utility = -1;
  do {
    const Matching m(perm);
    const double u = inner_solve(channels, m, link, options).min_rate();
    ++best.count;
    if (u > best.utility) {
      best.utility = u;
      best.matching = m;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double random_phase_best_gain(std::complex<double> h_direct, const CVectorXd& ris_user,
                              const CVectorXd& bs_ris, double beta, int draws,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  double best = 0;
  for (int d = 0; d < draws; ++d) {
    std::complex<double> h = h_direct;
    for (Eigen::Index m = 0; m < ris_user.size(); ++m) {
      h += std::conj(ris_user(m)) * std::sqrt(beta) * std::polar(1.0, uniform(rng)) * bs_ris(m);
    }
    best = std::max(best, std::abs(h));
  }
  return best;
}

PairLinks aligned_pair(const ChannelRealization& ch, int tu, int ru) {
  auto link = [&](int u) {
    const Eigen::VectorXd theta = optimal_phase(ch.h_direct[u], ch.h_ris_user[u], ch.h_bs_ris);
    return UserLink{ch.h_direct[u], cascade_sum(ch.h_ris_user[u], ch.h_bs_ris, theta)};
  };
  return {link(tu), link(ru)};
}

CheckResult check_amplitude_oracle(const SuiteOptions& o) {
  const SystemConfig c = instance_config(o, 1);
  const LinkBudget link = link_budget(c);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> uniform(0.05, 0.95);
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < o.amplitude_instances; ++i) {
    const Scenario s = make_scenario(c, o.seed + i);
    const PairLinks pair = aligned_pair(s.channels, 0, 1);
    const double rho = uniform(rng);
    const double beta = optimize_pair_amplitude(pair, rho, c.solver.initial_beta, link, c.solver);
    const double ours = pair_min_rate(pair, beta, rho, link.power, link.noise);
    const double grid = grid_amplitude(pair, rho, link.power, link.noise).value;
    const double ratio = grid > 0 ? ours / grid : 1.0;
    worst = std::min(worst, ratio);
    if (ours < grid * (1.0 - 1e-3)) ++failures;
  }
  return {"pair amplitude vs grid (ratio >= 0.999)", failures == 0,
          describe(worst, failures, o.amplitude_instances)};
}

CheckResult check_power_oracle(const SuiteOptions& o) {
  const SystemConfig c = instance_config(o, 1);
  const LinkBudget link = link_budget(c);
  std::mt19937_64 rng(o.seed + 7);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < o.power_instances; ++i) {
    const Scenario s = make_scenario(c, o.seed + 1000 + i);
    const PairLinks pair = aligned_pair(s.channels, 0, 1);
    const double beta = uniform(rng);
    const double rho = optimize_pair_power(pair, beta, c.solver.initial_rho, link, c.solver);
    const double ours = pair_min_rate(pair, beta, rho, link.power, link.noise);
    const double grid = grid_power(pair, beta, link.power, link.noise).value;
    const double ratio = grid > 0 ? ours / grid : 1.0;
    worst = std::min(worst, ratio);
    if (ours < grid * (1.0 - 1e-3)) ++failures;
  }
  return {"pair power vs grid (ratio >= 0.999)", failures == 0,
          describe(worst, failures, o.power_instances)};
}

CheckResult check_time_oracle(const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed + 11);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_real_distribution<double> uniform(0.0, 5.0);
  int failures = 0;
  double worst = 0;
  for (int i = 0; i < o.time_instances; ++i) {
    Eigen::VectorXd r(size(rng));
    for (Eigen::Index p = 0; p < r.size(); ++p) r(p) = uniform(rng);
    if (i == 0) r(0) = 0.0;
    const TimeAllocation closed = optimize_time(r);
    const double lp = time_allocation_lp(r);
    const double achieved = r.cwiseProduct(closed.tau).minCoeff();
    const double err = std::max(std::abs(closed.min_rate - lp), std::abs(achieved - lp));
    worst = std::max(worst, err);
    if (err > 1e-9 || std::abs(closed.tau.sum() - 1.0) > 1e-9) ++failures;
  }
  return {"time shares vs LP (|dS| <= 1e-9)", failures == 0,
          describe(worst, failures, o.time_instances)};
}

CheckResult check_joint_oracle(const SuiteOptions& o) {
  const SystemConfig c = instance_config(o, 1);
  const LinkBudget link = link_budget(c);
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < o.joint_instances; ++i) {
    const Scenario s = make_scenario(c, o.seed + 2000 + i);
    const Solution sol = inner_solve(s.channels, Matching::identity(1), link, c.solver);
    const double ours = sol.min_rate();
    const double grid =
        grid_joint(aligned_pair(s.channels, 0, 1), link.power, link.noise).value;
    const double ratio = grid > 0 ? ours / grid : 1.0;
    worst = std::min(worst, ratio);
    if (ours < grid * 0.99 || !feasible(s.channels, sol)) ++failures;
  }
  return {"K=1 inner solve vs joint grid (ratio >= 0.99)", failures == 0,
          describe(worst, failures, o.joint_instances)};
}

CheckResult check_matching_oracle(const SuiteOptions& o) {
  int matched = 0;
  int exceeded = 0;
  int unstable = 0;
  int infeasible = 0;
  for (int i = 0; i < o.matching_scenarios; ++i) {
    const int k = 2 + i % 2;
    const SystemConfig c = instance_config(o, k);
    const LinkBudget link = link_budget(c);
    const Scenario s = make_scenario(c, o.seed + 3000 + i);
    const Matching start = initial_matching(s.users, c.ris_position, PairingPolicy::Distance);
    const Solution sol = outer_solve(s.channels, link, c.solver, start, default_max_scans(k));
    const EnumeratedBest best = enumerate_matchings(s.channels, link, c.solver);
    if (!feasible(s.channels, sol)) ++infeasible;
    const double tol = 1e-9 * std::max(1.0, best.utility);
    if (sol.min_rate() >= best.utility - tol) ++matched;
    if (sol.min_rate() > best.utility + tol) ++exceeded;
    if (!sol.outer_cap_fired) {
      UtilityCache cache(s.channels, link, c.solver);
      if (!is_swap_stable(cache, sol.matching)) ++unstable;
    }
  }
  std::ostringstream d;
  d << matched << "/" << o.matching_scenarios << " optimal, " << exceeded << " exceeded, "
    << unstable << " unstable, " << infeasible << " infeasible";
  const bool ok = matched * 5 >= o.matching_scenarios * 4 && exceeded == 0 && unstable == 0 &&
                  infeasible == 0;
  return {"swap matching vs enumeration (>= 80% optimal)", ok, d.str()};
}

CheckResult check_phase_oracle(const SuiteOptions& o) {
  const SystemConfig c = instance_config(o, 2);
  std::mt19937_64 rng(o.seed + 13);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  int failures = 0;
  int total = 0;
  double worst_identity = 0;
  for (int i = 0; i < o.phase_realizations; ++i) {
    const Scenario s = make_scenario(c, o.seed + 4000 + i);
    const ChannelRealization& ch = s.channels;
    for (int u = 0; u < ch.users(); ++u) {
      ++total;
      const double beta = uniform(rng);
      const Eigen::VectorXd theta = optimal_phase(ch.h_direct[u], ch.h_ris_user[u], ch.h_bs_ris);
      const double aligned =
          std::abs(combined_gain(ch.h_direct[u], ch.h_ris_user[u], ch.h_bs_ris, beta, theta));
      double bound = std::abs(ch.h_direct[u]);
      for (Eigen::Index m = 0; m < ch.elements(); ++m) {
        bound += std::sqrt(beta) * std::abs(ch.h_ris_user[u](m)) * std::abs(ch.h_bs_ris(m));
      }
      const double identity = std::abs(aligned - bound) / bound;
      worst_identity = std::max(worst_identity, identity);
      const double random_best = random_phase_best_gain(ch.h_direct[u], ch.h_ris_user[u],
                                                        ch.h_bs_ris, beta, 1000, o.seed + i * 31 + u);
      if (identity > 1e-9 || aligned < random_best * (1.0 - 1e-9)) ++failures;
    }
  }
  return {"aligned phases vs 1000 random draws", failures == 0,
          describe(worst_identity, failures, total)};
}

std::vector<CheckResult> run_oracle_suite(const SuiteOptions& o) {
  return {check_amplitude_oracle(o), check_power_oracle(o), check_time_oracle(o),
          check_joint_oracle(o),     check_matching_oracle(o), check_phase_oracle(o)};
}

}  // namespace starnoma::oracle
