// SPDX-License-Identifier: Apache-2.0
//
// Inner layer: for a fixed pairing, alternate over decoding order, STAR-RIS
// phases, amplitude split (SCA), power split (SCA) and time shares (closed
// form) to maximize the minimum user rate.
//
// Given the time shares, each pair's amplitude and power variables only touch
// that pair's two rates, so both SCA blocks decompose into independent
// one-dimensional problems per pair.

#ifndef STARNOMA_INNER_AO_HPP
#define STARNOMA_INNER_AO_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "starnoma/solution.hpp"
#include "starnoma/star_noma.hpp"

namespace starnoma {

/// |h|^2 = a + b sqrt(beta) + c beta for phase-aligned links.
struct GainCoefficients {
  double a = 0;
  double b = 0;
  double c = 0;

  double gain(double beta) const { return a + b * std::sqrt(beta) + c * beta; }
};

/// Coefficients for phases already aligned with the direct link:
/// a = |h_d|^2, b = 2 |h_d| |s|, c = |s|^2 with s the unit-amplitude cascade.
template <typename DerivedU, typename DerivedB, typename DerivedT>
GainCoefficients gain_coefficients(typename DerivedU::Scalar h_direct,
                                   const Eigen::MatrixBase<DerivedU>& ris_user,
                                   const Eigen::MatrixBase<DerivedB>& bs_ris,
                                   const Eigen::MatrixBase<DerivedT>& theta) {
  const double s = std::abs(cascade_sum(ris_user, bs_ris, theta));
  const double d = std::abs(h_direct);
  return {d * d, 2.0 * d * s, s * s};
}

inline GainCoefficients gain_coefficients(const UserLink& link) {
  const double s = std::abs(link.cascade);
  const double d = std::abs(link.direct);
  return {d * d, 2.0 * d * s, s * s};
}

/// value + slope * (x - x0)
struct AffineBound {
  double x0;
  double value;
  double slope;

  double operator()(double x) const { return value + slope * (x - x0); }
};

/// First-order upper bound, in beta, of log2(l2 * (a + b sqrt(beta) + c beta) + noise),
/// tight at `beta_eps`.
AffineBound amplitude_surrogate_bound(double beta_eps, const GainCoefficients& coeffs,
                                      double l2, double noise);

/// First-order upper bound, in the partner's power share, of log2(l3 * rho + noise),
/// tight at `rho_eps`.
AffineBound power_surrogate_bound(double rho_eps, double l3, double noise);

/// The two users of one pair under fixed phases.
struct PairLinks {
  UserLink tu;
  UserLink ru;
};

struct PairRates {
  double tu;  // log2(1 + sinr), before the time share
  double ru;
  int pi_tu;  // decoding order of the TU (RU has 1 - pi_tu)

  double min() const { return std::min(tu, ru); }
};

/// Unit rates with the SIC order implied by the gains at `beta_tu`.
PairRates pair_rates(const PairLinks& links, double beta_tu, double rho_tu,
                     const LinkBudget& link);

/// Unit rates with an imposed decoding order.
PairRates pair_rates_fixed_order(const PairLinks& links, double beta_tu, double rho_tu,
                                 int pi_tu, const LinkBudget& link);

enum class AmplitudeMethod {
  Sca,           // phase-aligned links: SCA on each SIC-order region
  DirectSearch,  // arbitrary phases: grid plus golden refinement on exact rates
};

/// Best TU amplitude share for one pair, never worse than `beta_incoming`.
double optimize_pair_amplitude(const PairLinks& links, double rho_tu, double beta_incoming,
                               const LinkBudget& link, const SolverOptions& options,
                               AmplitudeMethod method = AmplitudeMethod::Sca);

/// Best TU power share for one pair with gains (and hence order) fixed,
/// never worse than `rho_incoming`.
double optimize_pair_power(const PairLinks& links, double beta_tu, double rho_incoming,
                           const LinkBudget& link, const SolverOptions& options);

/// Joint (beta_tu, rho_tu) for one pair: for each beta the power split is
/// solved exactly, and beta is searched on a grid then refined. Never worse
/// than the incoming point. Breaks the stall of alternating single-variable
/// steps at the kink where the two rates are equal.
std::pair<double, double> optimize_pair_joint(const PairLinks& links, double beta_incoming,
                                              double rho_incoming, const LinkBudget& link,
                                              const SolverOptions& options);

struct TimeAllocation {
  Eigen::VectorXd tau;
  double min_rate;
};

/// Max-min time shares for slot rates r_p: tau_p proportional to 1/r_p.
/// Any zero rate gives uniform shares and a zero objective.
TimeAllocation optimize_time(const Eigen::VectorXd& unit_rates);

/// Which AO blocks run, and what stays fixed when a block is off.
struct BlockPlan {
  bool optimize_phase = true;
  bool optimize_amplitude = true;
  bool optimize_power = true;
  bool optimize_time = true;
  bool joint_refinement = true;  // only runs when amplitudes and powers are both optimized
  std::optional<Eigen::MatrixXd> fixed_theta;  // M x 2K, used when phases are not optimized
  std::optional<Eigen::VectorXd> fixed_beta;   // per user, used when amplitudes are not optimized
};

/// Updates the TU amplitude share of every pair (and the implied SIC order).
void optimize_amplitudes(const std::vector<UserLink>& links, const Matching& matching,
                         AllocationState& state, const LinkBudget& link,
                         const SolverOptions& options, AmplitudeMethod method);

/// Updates the TU power share of every pair.
void optimize_powers(const std::vector<UserLink>& links, const Matching& matching,
                     AllocationState& state, const LinkBudget& link,
                     const SolverOptions& options);

/// Alternating optimization for one pairing. The per-block exact objective is
/// recorded in `Solution::inner_trace`.
Solution inner_solve(const ChannelRealization& channels, const Matching& matching,
                     const LinkBudget& link, const SolverOptions& options,
                     const BlockPlan& plan = {});

}  // namespace starnoma

#endif  // STARNOMA_INNER_AO_HPP
