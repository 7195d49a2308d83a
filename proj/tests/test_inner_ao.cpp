// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "starnoma/baselines.hpp"
#include "starnoma/inner_ao.hpp"
#include "starnoma/oracles.hpp"

using namespace starnoma;
using cd = std::complex<double>;

namespace {

SystemConfig small_config(int k, int my = 4, int mz = 4) {
  SystemConfig c;
  c.users_per_side = k;
  c.set_elements(my, mz);
  return c;
}

// Direct-only user whose P |h|^2 / n equals `snr`.
UserLink snr_link(double snr, const LinkBudget& link) {
  return {cd(std::sqrt(snr * link.noise / link.power), 0.0), cd(0.0)};
}

void check_trace_monotone(const Solution& sol) {
  for (size_t i = 1; i < sol.inner_trace.size(); ++i) {
    CHECK(sol.inner_trace[i].objective >= sol.inner_trace[i - 1].objective - 1e-9);
  }
}

}  // namespace

TEST_CASE("gain_coefficients") {
  CVectorXd g = CVectorXd::Ones(3);
  CVectorXd h = CVectorXd::Zero(3);
  const GainCoefficients no_ris = gain_coefficients(cd(0.3, 0.4), h, g, Eigen::VectorXd::Zero(3));
  CHECK(no_ris.a == doctest::Approx(0.25));
  CHECK(no_ris.b == 0.0);
  CHECK(no_ris.c == 0.0);
  h.setConstant(cd(0.0, 1.0));
  const GainCoefficients no_direct =
      gain_coefficients(cd(0.0), h, g, optimal_phase(cd(0.0), h, g));
  CHECK(no_direct.a == 0.0);
  CHECK(no_direct.b == 0.0);
  CHECK(no_direct.c == doctest::Approx(9.0));

  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 12;
    CVectorXd hr(m), hb(m);
    for (int i = 0; i < m; ++i) {
      hr(i) = {n(rng), n(rng)};
      hb(i) = {n(rng), n(rng)};
    }
    const cd hd(n(rng), n(rng));
    const Eigen::VectorXd theta = optimal_phase(hd, hr, hb);
    const GainCoefficients k = gain_coefficients(hd, hr, hb, theta);
    CHECK(k.b * k.b == doctest::Approx(4 * k.a * k.c).epsilon(1e-12));
    for (double beta : {0.0, 0.37, 1.0}) {
      const double exact = std::norm(combined_gain(hd, hr, hb, beta, theta));
      CHECK(std::abs(k.gain(beta) - exact) <= 1e-10 * exact);
    }
  }
}

TEST_CASE("amplitude_surrogate_bound") {
  const GainCoefficients k{2.0, 3.0, 1.5};
  const double l2 = 4.0, noise = 0.1;
  auto truth = [&](double b) { return std::log2(l2 * k.gain(b) + noise); };
  for (double x0 : {1e-6, 0.2, 0.5, 1.0}) {
    const AffineBound ub = amplitude_surrogate_bound(x0, k, l2, noise);
    CHECK(std::abs(ub(x0) - truth(x0)) <= 1e-12 * std::abs(truth(x0)));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const double b = u(rng);
      CHECK(ub(b) >= truth(b) - 1e-12);
    }
  }
  const AffineBound flat = amplitude_surrogate_bound(0.3, k, 0.0, noise);
  CHECK(flat.slope == 0.0);
  CHECK(flat(0.9) == doctest::Approx(std::log2(noise)));
  CHECK_THROWS_AS(amplitude_surrogate_bound(0.0, k, l2, noise), std::invalid_argument);
}

TEST_CASE("power_surrogate_bound") {
  const double l3 = 7.0, noise = 0.2;
  auto truth = [&](double r) { return std::log2(l3 * r + noise); };
  for (double x0 : {0.0, 0.3, 1.0}) {
    const AffineBound ub = power_surrogate_bound(x0, l3, noise);
    CHECK(std::abs(ub(x0) - truth(x0)) <= 1e-12 * std::abs(truth(x0)));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const double r = u(rng);
      CHECK(ub(r) >= truth(r) - 1e-12);
    }
  }
  CHECK(power_surrogate_bound(0.4, 0.0, noise)(0.9) == doctest::Approx(std::log2(noise)));
}

TEST_CASE("optimize_pair_amplitude") {
  const SystemConfig c = small_config(1);
  const LinkBudget link = link_budget(c);
  SUBCASE("no cascaded path returns the midpoint") {
    const PairLinks p{snr_link(10, link), snr_link(30, link)};
    CHECK(optimize_pair_amplitude(p, 0.4, 0.9, link, c.solver) == 0.5);
  }
  SUBCASE("matches the grid oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int i = 0; i < 20; ++i) {
      const Scenario s = make_scenario(c, 100 + i);
      const PairLinks p = oracle::aligned_pair(s.channels, 0, 1);
      const double rho = u(rng);
      const double b = optimize_pair_amplitude(p, rho, 0.5, link, c.solver);
      const double ours = oracle::pair_min_rate(p, b, rho, link.power, link.noise);
      const double grid = oracle::grid_amplitude(p, rho, link.power, link.noise).value;
      CHECK(ours >= grid * (1 - 1e-3));
      // Fixed point: restarting from the answer keeps the objective.
      const double b2 = optimize_pair_amplitude(p, rho, b, link, c.solver);
      CHECK(oracle::pair_min_rate(p, b2, rho, link.power, link.noise) >= ours - c.solver.sca_tol);
    }
  }
  SUBCASE("never worse than the incoming point") {
    for (int i = 0; i < 20; ++i) {
      const Scenario s = make_scenario(c, 200 + i);
      const PairLinks p = oracle::aligned_pair(s.channels, 0, 1);
      for (double start : {0.0, 0.3, 1.0}) {
        const double b = optimize_pair_amplitude(p, 0.3, start, link, c.solver);
        CHECK(pair_rates(p, b, 0.3, link).min() >= pair_rates(p, start, 0.3, link).min());
      }
    }
  }
}

TEST_CASE("optimize_pair_power equalizes rates") {
  const SystemConfig c = small_config(1);
  const LinkBudget link = link_budget(c);
  // Strong TU at SNR 100, weak RU at SNR 10.
  const PairLinks p{snr_link(100, link), snr_link(10, link)};
  const double rho_strong = optimize_pair_power(p, 0.5, 0.5, link, c.solver);

  // Bisection on log2(1 + 10 w / (10 s + 1)) = log2(1 + 100 s), w = 1 - s.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double s = 0.5 * (lo + hi);
    const double weak = std::log2(1 + 10 * (1 - s) / (10 * s + 1));
    const double strong = std::log2(1 + 100 * s);
    (strong < weak ? lo : hi) = s;
  }
  CHECK(rho_strong == doctest::Approx(lo).epsilon(1e-6));
  CHECK(1 - rho_strong == doctest::Approx(0.941).epsilon(1e-3));
  const PairRates r = pair_rates(p, 0.5, rho_strong, link);
  CHECK(r.tu == doctest::Approx(r.ru).epsilon(1e-6));
}

TEST_CASE("optimize_pair_power special cases") {
  const SystemConfig c = small_config(1);
  const LinkBudget link = link_budget(c);
  SUBCASE("identical gains: the strong user gets less power") {
    const PairLinks p{snr_link(50, link), snr_link(50, link)};
    const double rho_tu = optimize_pair_power(p, 0.5, 0.5, link, c.solver);
    CHECK(pair_rates(p, 0.5, rho_tu, link).pi_tu == 1);
    CHECK(rho_tu < 0.5);
    const auto grid = oracle::grid_power(p, 0.5, link.power, link.noise);
    CHECK(grid.y < 0.5);
    CHECK(pair_rates(p, 0.5, rho_tu, link).min() >= grid.value * (1 - 1e-3));
  }
  SUBCASE("one zero-gain user") {
    const PairLinks p{snr_link(50, link), UserLink{cd(0.0), cd(0.0)}};
    const double rho_tu = optimize_pair_power(p, 0.5, 0.5, link, c.solver);
    CHECK(rho_tu == 1.0);
    CHECK(pair_rates(p, 0.5, rho_tu, link).min() == 0.0);
  }
  SUBCASE("random instances vs grid") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const Scenario s = make_scenario(c, 300 + i);
      const PairLinks p = oracle::aligned_pair(s.channels, 0, 1);
      const double beta = u(rng);
      const double rho = optimize_pair_power(p, beta, 0.5, link, c.solver);
      const double grid = oracle::grid_power(p, beta, link.power, link.noise).value;
      CHECK(oracle::pair_min_rate(p, beta, rho, link.power, link.noise) >= grid * (1 - 1e-3));
    }
  }
}

TEST_CASE("optimize_time") {
  Eigen::VectorXd r(2);
  r << 1, 1;
  TimeAllocation t = optimize_time(r);
  CHECK(t.tau(0) == doctest::Approx(0.5));
  CHECK(t.min_rate == doctest::Approx(0.5));
  r << 1, 3;
  t = optimize_time(r);
  CHECK(t.tau(0) == doctest::Approx(0.75));
  CHECK(t.tau(1) == doctest::Approx(0.25));
  CHECK(t.min_rate == doctest::Approx(0.75));
  CHECK(oracle::time_allocation_lp(r) == doctest::Approx(0.75).epsilon(1e-12));
  Eigen::VectorXd one(1);
  one << 2.5;
  t = optimize_time(one);
  CHECK(t.tau(0) == 1.0);
  CHECK(t.min_rate == 2.5);
  r << 0, 3;
  t = optimize_time(r);
  CHECK(t.min_rate == 0.0);
  CHECK(t.tau(0) == 0.5);
  CHECK_THROWS_AS(optimize_time(Eigen::VectorXd(0)), std::invalid_argument);
}

TEST_CASE("optimize_time matches the LP oracle") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd r(1 + i % 7);
    for (Eigen::Index p = 0; p < r.size(); ++p) r(p) = u(rng);
    if (i % 10 == 0) r(0) = 0.0;
    CHECK(std::abs(optimize_time(r).min_rate - oracle::time_allocation_lp(r)) <= 1e-9);
  }
}

TEST_CASE("inner_solve traces are non-decreasing") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 40; ++i) {
    const int k = 1 + i % 4;
    const int side = 1 + i % 4;
    const SystemConfig c = small_config(k, side, side);
    const Scenario s = make_scenario(c, 500 + i);
    const Solution sol = inner_solve(s.channels, Matching::identity(k), link_budget(c), c.solver);
    check_trace_monotone(sol);
    CHECK(sol.inner_converged);
    CHECK_NOTHROW(check_solution(s.channels, sol));
  }
}

TEST_CASE("inner_solve at K = 1 is within 1% of the joint grid") {
  const SystemConfig c = small_config(1);
  const LinkBudget link = link_budget(c);
  for (int i = 0; i < 8; ++i) {
    const Scenario s = make_scenario(c, 700 + i);
    const double ours = inner_solve(s.channels, Matching::identity(1), link, c.solver).min_rate();
    const double grid =
        oracle::grid_joint(oracle::aligned_pair(s.channels, 0, 1), link.power, link.noise, 2e-3)
            .value;
    CHECK(ours >= 0.99 * grid);
  }
}

TEST_CASE("inner_solve without cascade reduces to power and time") {
  const SystemConfig c = small_config(2);
  const Scenario s = make_scenario(c, 42);
  const ChannelRealization z = without_cascade(s.channels);
  const Solution sol = inner_solve(z, Matching::identity(2), link_budget(c), c.solver);
  for (int u = 0; u < 4; ++u) CHECK(sol.report.gain(u) == std::norm(z.h_direct[u]));
  CHECK((sol.allocation.star.beta.array() == 0.5).all());
  BlockPlan plan;
  plan.optimize_phase = false;
  plan.optimize_amplitude = false;
  const Solution reduced = inner_solve(z, Matching::identity(2), link_budget(c), c.solver, plan);
  CHECK(reduced.report.rate == sol.report.rate);
}

TEST_CASE("per-pair decomposition of the amplitude block") {
  // With rho and tau fixed, the joint max over (beta_1, beta_2) of the global
  // min rate equals the min over pairs of each pair's own best.
  const SystemConfig c = small_config(2, 2, 2);
  const LinkBudget link = link_budget(c);
  const Scenario s = make_scenario(c, 77);
  const Matching m = Matching::identity(2);
  AllocationState a;
  a.star.theta.resize(4, 4);
  for (int u = 0; u < 4; ++u) {
    a.star.theta.col(u) = optimal_phase(s.channels.h_direct[u], s.channels.h_ris_user[u],
                                        s.channels.h_bs_ris);
  }
  a.rho = Eigen::VectorXd::Constant(4, 0.5);
  a.tau = Eigen::VectorXd::Constant(2, 0.5);
  a.pi = Eigen::VectorXi::Zero(4);
  a.star.beta = Eigen::VectorXd::Zero(4);
  auto set = [&](int t, double b) {
    a.star.beta(t) = b;
    a.star.beta(t + 2) = 1 - b;
    const double gt = std::norm(combined_gain(s.channels.h_direct[t], s.channels.h_ris_user[t],
                                              s.channels.h_bs_ris, b, a.star.theta.col(t)));
    const double gr = std::norm(combined_gain(s.channels.h_direct[t + 2], s.channels.h_ris_user[t + 2],
                                              s.channels.h_bs_ris, 1 - b, a.star.theta.col(t + 2)));
    const auto [pt, pr] = decoding_order(gt, gr, Side::Transmitted);
    a.pi(t) = pt;
    a.pi(t + 2) = pr;
  };
  const int n = 100;
  double joint = -1;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      set(0, double(i) / n);
      set(1, double(j) / n);
      joint = std::max(joint, evaluate(s.channels, m, a, link).min_rate);
    }
  }
  double per_pair = 1e300;
  for (int t = 0; t < 2; ++t) {
    double best = -1;
    for (int i = 0; i <= n; ++i) {
      set(0, 0.5);
      set(1, 0.5);
      set(t, double(i) / n);
      const RateReport r = evaluate(s.channels, m, a, link);
      best = std::max(best, std::min(r.rate(t), r.rate(t + 2)));
    }
    per_pair = std::min(per_pair, best);
  }
  CHECK(joint == doctest::Approx(per_pair).epsilon(1e-12));
}

TEST_CASE("inner_solve rejects bad input") {
  const SystemConfig c = small_config(2);
  const Scenario s = make_scenario(c, 1);
  CHECK_THROWS_AS(inner_solve(s.channels, Matching::identity(3), link_budget(c), c.solver),
                  std::invalid_argument);
  BlockPlan plan;
  plan.optimize_phase = false;
  plan.fixed_theta = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(inner_solve(s.channels, Matching::identity(2), link_budget(c), c.solver, plan),
                  std::invalid_argument);
}
