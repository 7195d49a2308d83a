// SPDX-License-Identifier: Apache-2.0

#include "starnoma/inner_ao.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "starnoma/scalar_search.hpp"

namespace starnoma {

namespace {

// Expansion points closer to zero than this are shifted up: the amplitude
// bound's slope has a 1/sqrt(beta) term.
constexpr double kMinExpansion = 1e-6;
constexpr int kDirectSearchGrid = 200;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

AffineBound amplitude_surrogate_bound(double beta_eps, const GainCoefficients& k, double l2,
                                      double noise) {
  if (!(beta_eps >= 0 && beta_eps <= 1)) {
    throw std::invalid_argument("amplitude_surrogate_bound: expansion point not in [0, 1]");
  }
  if (l2 == 0.0) return {beta_eps, std::log2(noise), 0.0};
  if (beta_eps == 0.0 && k.b > 0) {
    throw std::invalid_argument("amplitude_surrogate_bound: singular slope at beta = 0");
  }
  const double inner = l2 * k.gain(beta_eps) + noise;
  const double dgain = (k.b > 0 ? k.b / (2.0 * std::sqrt(beta_eps)) : 0.0) + k.c;
  return {beta_eps, std::log2(inner), l2 * dgain / (std::log(2.0) * inner)};
}

AffineBound power_surrogate_bound(double rho_eps, double l3, double noise) {
  if (!(rho_eps >= 0 && rho_eps <= 1)) {
    throw std::invalid_argument("power_surrogate_bound: expansion point not in [0, 1]");
  }
  const double inner = l3 * rho_eps + noise;
  return {rho_eps, std::log2(inner), l3 / (std::log(2.0) * inner)};
}

PairRates pair_rates_fixed_order(const PairLinks& links, double beta_tu, double rho_tu,
                                 int pi_tu, const LinkBudget& link) {
  const double gt = links.tu.gain(beta_tu);
  const double gr = links.ru.gain(1.0 - beta_tu);
  const double rho_ru = 1.0 - rho_tu;
  return {std::log2(1.0 + sinr(gt, rho_tu, rho_ru, 1 - pi_tu, link.power, link.noise)),
          std::log2(1.0 + sinr(gr, rho_ru, rho_tu, pi_tu, link.power, link.noise)), pi_tu};
}

PairRates pair_rates(const PairLinks& links, double beta_tu, double rho_tu,
                     const LinkBudget& link) {
  const double gt = links.tu.gain(beta_tu);
  const double gr = links.ru.gain(1.0 - beta_tu);
  const int pi_tu = decoding_order(gt, gr, Side::Transmitted).first;
  return pair_rates_fixed_order(links, beta_tu, rho_tu, pi_tu, link);
}

namespace {

struct OrderRegion {
  double lo;
  double hi;
  int pi_tu;
};

// Ranges of beta_tu on which the SIC order is constant. The TU gain is
// non-decreasing and the RU gain non-increasing in beta_tu, so there are at
// most two.
std::vector<OrderRegion> order_regions(const GainCoefficients& tu, const GainCoefficients& ru,
                                       double tol) {
  auto tu_strong = [&](double b) { return tu.gain(b) >= ru.gain(1.0 - b); };
  if (tu_strong(0.0)) return {{0.0, 1.0, 1}};
  if (!tu_strong(1.0)) return {{0.0, 1.0, 0}};
  const auto [last_ru, first_tu] = bisect_boundary(tu_strong, 0.0, 1.0, tol);
  return {{0.0, last_ru, 0}, {first_tu, 1.0, 1}};
}

// SCA on one order region: each user's interference log term is replaced by
// its tangent at the current point, which leaves a concave max-min problem.
double sca_amplitude_region(const PairLinks& links, const GainCoefficients& ct,
                            const GainCoefficients& cr, const OrderRegion& region, double rho_tu,
                            double beta_start, const LinkBudget& link,
                            const SolverOptions& options) {
  const double p = link.power;
  const double n = link.noise;
  const double l1_tu = p * rho_tu;
  const double l2_tu = (1 - region.pi_tu) * p * (1.0 - rho_tu);
  const double l1_ru = p * (1.0 - rho_tu);
  const double l2_ru = region.pi_tu * p * rho_tu;
  auto exact = [&](double b) {
    return pair_rates_fixed_order(links, b, rho_tu, region.pi_tu, link).min();
  };

  double beta = std::clamp(beta_start, region.lo, region.hi);
  double value = exact(beta);
  for (int it = 0; it < options.max_sca_iters; ++it) {
    const AffineBound ub_tu =
        amplitude_surrogate_bound(std::max(beta, kMinExpansion), ct, l2_tu, n);
    const AffineBound ub_ru =
        amplitude_surrogate_bound(std::max(1.0 - beta, kMinExpansion), cr, l2_ru, n);
    auto surrogate = [&](double b) {
      const double s_tu = std::log2((l1_tu + l2_tu) * ct.gain(b) + n) - ub_tu(b);
      const double s_ru = std::log2((l1_ru + l2_ru) * cr.gain(1.0 - b) + n) - ub_ru(1.0 - b);
      return std::min(s_tu, s_ru);
    };
    const ScalarOptimum next =
        golden_section_maximize(surrogate, region.lo, region.hi, options.oned_tol);
    const double next_value = exact(next.x);
    if (!(next_value > value)) break;
    const double improvement = next_value - value;
    beta = next.x;
    value = next_value;
    if (improvement < options.sca_tol) break;
  }
  return beta;
}

double direct_search_amplitude(const PairLinks& links, double rho_tu, const LinkBudget& link,
                               const SolverOptions& options) {
  auto exact = [&](double b) { return pair_rates(links, b, rho_tu, link).min(); };
  int best = 0;
  double best_value = exact(0.0);
  for (int i = 1; i <= kDirectSearchGrid; ++i) {
    const double v = exact(static_cast<double>(i) / kDirectSearchGrid);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  const double lo = std::max(0, best - 1) / static_cast<double>(kDirectSearchGrid);
  const double hi = std::min(kDirectSearchGrid, best + 1) / static_cast<double>(kDirectSearchGrid);
  const ScalarOptimum refined = golden_section_maximize(exact, lo, hi, options.oned_tol);
  return refined.value > best_value ? refined.x
                                    : static_cast<double>(best) / kDirectSearchGrid;
}

}  // namespace

double optimize_pair_amplitude(const PairLinks& links, double rho_tu, double beta_incoming,
                               const LinkBudget& link, const SolverOptions& options,
                               AmplitudeMethod method) {
  const GainCoefficients ct = gain_coefficients(links.tu);
  const GainCoefficients cr = gain_coefficients(links.ru);
  // No cascaded path on either side: the objective does not depend on beta.
  if (ct.c == 0.0 && cr.c == 0.0) return 0.5;

  auto exact = [&](double b) { return pair_rates(links, b, rho_tu, link).min(); };
  double best = clamp01(beta_incoming);
  double best_value = exact(best);

  std::vector<double> candidates;
  if (method == AmplitudeMethod::DirectSearch) {
    candidates.push_back(direct_search_amplitude(links, rho_tu, link, options));
  } else {
    for (const OrderRegion& region : order_regions(ct, cr, options.oned_tol)) {
      candidates.push_back(
          sca_amplitude_region(links, ct, cr, region, rho_tu, best, link, options));
    }
  }
  for (double b : candidates) {
    const double v = exact(b);
    if (v > best_value) {
      best = b;
      best_value = v;
    }
  }
  return best;
}

double optimize_pair_power(const PairLinks& links, double beta_tu, double rho_incoming,
                           const LinkBudget& link, const SolverOptions& options) {
  const double gt = links.tu.gain(beta_tu);
  const double gr = links.ru.gain(1.0 - beta_tu);
  if (gt == 0.0 && gr == 0.0) return 0.5;
  // A zero-gain user has rate 0 for every split; serve the other one fully.
  if (gt == 0.0) return 0.0;
  if (gr == 0.0) return 1.0;

  const int pi_tu = decoding_order(gt, gr, Side::Transmitted).first;
  const double p = link.power;
  const double n = link.noise;
  const double l4_tu = p * gt;
  const double l3_tu = (1 - pi_tu) * p * gt;
  const double l4_ru = p * gr;
  const double l3_ru = pi_tu * p * gr;
  auto exact = [&](double rho) {
    return pair_rates_fixed_order(links, beta_tu, rho, pi_tu, link).min();
  };

  double rho = clamp01(rho_incoming);
  double value = exact(rho);
  for (int it = 0; it < options.max_sca_iters; ++it) {
    // Each bound is in the partner's power share: 1 - rho for the TU, rho for the RU.
    const AffineBound ub_tu = power_surrogate_bound(1.0 - rho, l3_tu, n);
    const AffineBound ub_ru = power_surrogate_bound(rho, l3_ru, n);
    auto surrogate = [&](double x) {
      const double s_tu = std::log2(l4_tu * x + l3_tu * (1.0 - x) + n) - ub_tu(1.0 - x);
      const double s_ru = std::log2(l4_ru * (1.0 - x) + l3_ru * x + n) - ub_ru(x);
      return std::min(s_tu, s_ru);
    };
    const ScalarOptimum next = golden_section_maximize(surrogate, 0.0, 1.0, options.oned_tol);
    const double next_value = exact(next.x);
    if (!(next_value > value)) break;
    const double improvement = next_value - value;
    rho = next.x;
    value = next_value;
    if (improvement < options.sca_tol) break;
  }
  return rho;
}

namespace {

constexpr int kJointGrid = 100;

// Max over rho of the pair min rate, order fixed by the gains at beta_tu. With
// the order fixed the TU rate increases and the RU rate decreases in rho, so
// the min is unimodal.
ScalarOptimum best_power(const PairLinks& links, double beta_tu, const LinkBudget& link,
                         double tol) {
  const double gt = links.tu.gain(beta_tu);
  const double gr = links.ru.gain(1.0 - beta_tu);
  const int pi_tu = decoding_order(gt, gr, Side::Transmitted).first;
  return golden_section_maximize(
      [&](double rho) { return pair_rates_fixed_order(links, beta_tu, rho, pi_tu, link).min(); },
      0.0, 1.0, tol);
}

}  // namespace

std::pair<double, double> optimize_pair_joint(const PairLinks& links, double beta_incoming,
                                              double rho_incoming, const LinkBudget& link,
                                              const SolverOptions& options) {
  double beta = clamp01(beta_incoming);
  double rho = clamp01(rho_incoming);
  // Without a cascaded path beta has no effect and the power block already
  // solved the pair.
  if (links.tu.cascade == 0.0 && links.ru.cascade == 0.0) return {beta, rho};
  double value = pair_rates(links, beta, rho, link).min();
  auto profile = [&](double b) { return best_power(links, b, link, options.oned_tol).value; };

  int best_i = 0;
  double best_grid = -1.0;
  for (int i = 0; i <= kJointGrid; ++i) {
    const double v = profile(static_cast<double>(i) / kJointGrid);
    if (v > best_grid) {
      best_grid = v;
      best_i = i;
    }
  }
  const double lo = std::max(0, best_i - 1) / static_cast<double>(kJointGrid);
  const double hi = std::min(kJointGrid, best_i + 1) / static_cast<double>(kJointGrid);
  const ScalarOptimum b = golden_section_maximize(profile, lo, hi, options.oned_tol);
  const ScalarOptimum r = best_power(links, b.x, link, options.oned_tol);
  if (pair_rates(links, b.x, r.x, link).min() > value) {
    beta = b.x;
    rho = r.x;
  }
  return {beta, rho};
}

TimeAllocation optimize_time(const Eigen::VectorXd& unit_rates) {
  const Eigen::Index k = unit_rates.size();
  if (k == 0) throw std::invalid_argument("optimize_time: no slots");
  if ((unit_rates.array() < 0).any()) throw std::invalid_argument("optimize_time: negative rate");
  if ((unit_rates.array() == 0).any()) {
    return {Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k)), 0.0};
  }
  const Eigen::VectorXd inv = unit_rates.cwiseInverse();
  const double total = inv.sum();
  return {inv / total, 1.0 / total};
}

void optimize_amplitudes(const std::vector<UserLink>& links, const Matching& matching,
                         AllocationState& state, const LinkBudget& link,
                         const SolverOptions& options, AmplitudeMethod method) {
  const int k = matching.size();
  for (int t = 0; t < k; ++t) {
    const int r = k + matching.ru_of_tu(t);
    const PairLinks pair{links[t], links[r]};
    const double b =
        optimize_pair_amplitude(pair, state.rho(t), state.star.beta(t), link, options, method);
    state.star.beta(t) = b;
    state.star.beta(r) = 1.0 - b;
    const auto [pt, pr] = decoding_order(pair.tu.gain(b), pair.ru.gain(1.0 - b), Side::Transmitted);
    state.pi(t) = pt;
    state.pi(r) = pr;
  }
}

void optimize_powers(const std::vector<UserLink>& links, const Matching& matching,
                     AllocationState& state, const LinkBudget& link,
                     const SolverOptions& options) {
  const int k = matching.size();
  for (int t = 0; t < k; ++t) {
    const int r = k + matching.ru_of_tu(t);
    const PairLinks pair{links[t], links[r]};
    const double rho = optimize_pair_power(pair, state.star.beta(t), state.rho(t), link, options);
    state.rho(t) = rho;
    state.rho(r) = 1.0 - rho;
  }
}

namespace {

std::vector<UserLink> make_links(const ChannelRealization& ch, const Eigen::MatrixXd& theta) {
  std::vector<UserLink> links(ch.users());
  for (int u = 0; u < ch.users(); ++u) {
    links[u] = {ch.h_direct[u], cascade_sum(ch.h_ris_user[u], ch.h_bs_ris, theta.col(u))};
  }
  return links;
}

Eigen::MatrixXd aligned_phases(const ChannelRealization& ch) {
  Eigen::MatrixXd theta(ch.elements(), ch.users());
  for (int u = 0; u < ch.users(); ++u) {
    theta.col(u) = optimal_phase(ch.h_direct[u], ch.h_ris_user[u], ch.h_bs_ris);
  }
  return theta;
}

void update_order(const std::vector<UserLink>& links, const Matching& matching,
                  AllocationState& state) {
  const int k = matching.size();
  for (int t = 0; t < k; ++t) {
    const int r = k + matching.ru_of_tu(t);
    const auto [pt, pr] = decoding_order(links[t].gain(state.star.beta(t)),
                                         links[r].gain(state.star.beta(r)), Side::Transmitted);
    state.pi(t) = pt;
    state.pi(r) = pr;
  }
}

}  // namespace

Solution inner_solve(const ChannelRealization& channels, const Matching& matching,
                     const LinkBudget& link, const SolverOptions& options,
                     const BlockPlan& plan) {
  const int k = matching.size();
  const int n = 2 * k;
  const int m = channels.elements();
  if (k < 1 || !matching.is_valid()) throw std::invalid_argument("inner_solve: invalid matching");
  if (channels.users() != n) throw std::invalid_argument("inner_solve: matching/channel size mismatch");

  AllocationState state;
  state.access = Access::HybridNoma;
  if (plan.fixed_theta) {
    if (plan.fixed_theta->rows() != m || plan.fixed_theta->cols() != n) {
      throw std::invalid_argument("inner_solve: fixed_theta must be M x 2K");
    }
    state.star.theta = *plan.fixed_theta;
  } else if (plan.optimize_phase) {
    // The aligned phases do not depend on any other variable, so the AO
    // starts from them.
    state.star.theta = aligned_phases(channels);
  } else {
    state.star.theta = Eigen::MatrixXd::Zero(m, n);
  }
  state.star.beta.resize(n);
  state.rho.resize(n);
  state.pi = Eigen::VectorXi::Zero(n);
  for (int t = 0; t < k; ++t) {
    const int r = k + matching.ru_of_tu(t);
    state.star.beta(t) = options.initial_beta;
    state.star.beta(r) = 1.0 - options.initial_beta;
    state.rho(t) = options.initial_rho;
    state.rho(r) = 1.0 - options.initial_rho;
  }
  if (plan.fixed_beta) {
    if (plan.fixed_beta->size() != n) throw std::invalid_argument("inner_solve: fixed_beta must have 2K entries");
    state.star.beta = *plan.fixed_beta;
  }
  state.tau = Eigen::VectorXd::Constant(k, 1.0 / k);

  std::vector<UserLink> links = make_links(channels, state.star.theta);
  update_order(links, matching, state);

  Solution sol;
  sol.matching = matching;
  auto record = [&](int iteration, const char* block) {
    sol.report = evaluate(channels, matching, state, link);
    sol.inner_trace.push_back({iteration, block, sol.report.min_rate});
    return sol.report.min_rate;
  };

  const AmplitudeMethod amplitude_method =
      plan.optimize_phase ? AmplitudeMethod::Sca : AmplitudeMethod::DirectSearch;
  double previous = record(0, "init");
  for (int it = 1; it <= options.max_inner_iters; ++it) {
    try {
      update_order(links, matching, state);
      record(it, "order");
      if (plan.optimize_phase) {
        state.star.theta = aligned_phases(channels);
        links = make_links(channels, state.star.theta);
        update_order(links, matching, state);
        record(it, "phase");
      }
      if (plan.optimize_amplitude) {
        optimize_amplitudes(links, matching, state, link, options, amplitude_method);
        record(it, "amplitude");
      }
      if (plan.optimize_power) {
        optimize_powers(links, matching, state, link, options);
        record(it, "power");
      }
      if (plan.joint_refinement && plan.optimize_amplitude && plan.optimize_power) {
        for (int t = 0; t < k; ++t) {
          const int r = k + matching.ru_of_tu(t);
          const auto [b, rho] = optimize_pair_joint(PairLinks{links[t], links[r]}, state.star.beta(t),
                                                    state.rho(t), link, options);
          state.star.beta(t) = b;
          state.star.beta(r) = 1.0 - b;
          state.rho(t) = rho;
          state.rho(r) = 1.0 - rho;
        }
        update_order(links, matching, state);
        record(it, "joint");
      }
      if (plan.optimize_time) {
        Eigen::VectorXd unit(k);
        for (int t = 0; t < k; ++t) {
          const int r = k + matching.ru_of_tu(t);
          unit(t) = pair_rates(PairLinks{links[t], links[r]}, state.star.beta(t), state.rho(t), link)
                        .min();
        }
        state.tau = optimize_time(unit).tau;
        record(it, "time");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("inner_solve iteration " + std::to_string(it) + ": " + e.what());
    }
    const double current = sol.report.min_rate;
    sol.inner_iterations = it;
    if (current - previous <= options.inner_tol * std::abs(previous)) {
      sol.inner_converged = true;
      break;
    }
    previous = current;
  }
  sol.allocation = std::move(state);
  return sol;
}

}  // namespace starnoma
