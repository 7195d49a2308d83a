// SPDX-License-Identifier: Apache-2.0
//
// STAR-RIS assisted hybrid NOMA physical layer: equivalent-combined channel,
// phase alignment, SIC decoding order, SINR and rates.

#ifndef STARNOMA_STAR_NOMA_HPP
#define STARNOMA_STAR_NOMA_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "starnoma/channel.hpp"
#include "starnoma/pairing.hpp"

namespace starnoma {

/// Per-element cascade e_m = conj(h_ris_user[m]) * h_bs_ris[m].
template <typename DerivedU, typename DerivedB>
auto cascade_elements(const Eigen::MatrixBase<DerivedU>& ris_user,
                      const Eigen::MatrixBase<DerivedB>& bs_ris) {
  if (ris_user.size() != bs_ris.size()) {
    throw std::invalid_argument("cascade_elements: dimension mismatch");
  }
  return ris_user.conjugate().cwiseProduct(bs_ris);
}

/// sum_m conj(h_ris_user[m]) e^{j theta_m} h_bs_ris[m], i.e. the RIS term at unit amplitude.
template <typename DerivedU, typename DerivedB, typename DerivedT>
typename DerivedU::Scalar cascade_sum(const Eigen::MatrixBase<DerivedU>& ris_user,
                                      const Eigen::MatrixBase<DerivedB>& bs_ris,
                                      const Eigen::MatrixBase<DerivedT>& theta) {
  using Real = typename DerivedT::Scalar;
  if (theta.size() != ris_user.size()) {
    throw std::invalid_argument("cascade_sum: phase vector dimension mismatch");
  }
  const auto phasors = theta.unaryExpr([](Real t) { return std::polar(Real(1), t); });
  return cascade_elements(ris_user, bs_ris).cwiseProduct(phasors).sum();
}

/// h_direct + sqrt(beta) * sum_m conj(h_ris_user[m]) e^{j theta_m} h_bs_ris[m].
template <typename DerivedU, typename DerivedB, typename DerivedT>
typename DerivedU::Scalar combined_gain(typename DerivedU::Scalar h_direct,
                                        const Eigen::MatrixBase<DerivedU>& ris_user,
                                        const Eigen::MatrixBase<DerivedB>& bs_ris,
                                        typename DerivedU::RealScalar beta,
                                        const Eigen::MatrixBase<DerivedT>& theta) {
  if (!(beta >= 0 && beta <= 1)) throw std::invalid_argument("combined_gain: beta not in [0,1]");
  return h_direct + std::sqrt(beta) * cascade_sum(ris_user, bs_ris, theta);
}

template <typename Real>
Real wrap_two_pi(Real angle) {
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  Real out = std::fmod(angle, two_pi);
  if (out < 0) out += two_pi;
  if (out >= two_pi) out = 0;
  return out;
}

/// Phases that co-phase every cascade element with the direct link:
/// theta_m = arg(h_direct) - arg(conj(h_ris_user[m])) - arg(h_bs_ris[m]) (mod 2 pi).
/// With h_direct == 0 the common reference is zero.
template <typename DerivedU, typename DerivedB>
Eigen::Matrix<typename DerivedU::RealScalar, Eigen::Dynamic, 1> optimal_phase(
    typename DerivedU::Scalar h_direct, const Eigen::MatrixBase<DerivedU>& ris_user,
    const Eigen::MatrixBase<DerivedB>& bs_ris) {
  using Real = typename DerivedU::RealScalar;
  if (ris_user.size() != bs_ris.size()) {
    throw std::invalid_argument("optimal_phase: dimension mismatch");
  }
  const Real reference = h_direct == typename DerivedU::Scalar(0) ? Real(0) : std::arg(h_direct);
  Eigen::Matrix<Real, Eigen::Dynamic, 1> theta(ris_user.size());
  for (Eigen::Index m = 0; m < ris_user.size(); ++m) {
    theta(m) = wrap_two_pi(reference - std::arg(std::conj(ris_user(m))) - std::arg(bs_ris(m)));
  }
  return theta;
}

/// Direct term and unit-amplitude cascade term of one user under fixed phases.
/// |h(beta)|^2 = |direct + sqrt(beta) * cascade|^2.
struct UserLink {
  std::complex<double> direct;
  std::complex<double> cascade;

  double gain(double beta) const { return std::norm(direct + std::sqrt(beta) * cascade); }
};

/// SIC order inside a pair: the stronger user (pi = 1) decodes last and is
/// interference free. Equal gains: the transmitted user of the pair gets 1.
std::pair<int, int> decoding_order(double gain_k, double gain_paired, Side side_k);

/// g2 * rho_k * P / (pi_paired * g2 * rho_paired * P + noise).
double sinr(double g2, double rho_k, double rho_paired, int pi_paired, double power,
            double noise);

/// tau * log2(1 + sinr), bits/s/Hz.
double rate(double tau, double sinr_value);

enum class Access { HybridNoma, Tdma };

struct StarProfile {
  Eigen::VectorXd beta;   // per user
  Eigen::MatrixXd theta;  // M x users, column per user
};

/// Per-user variables are indexed by global user (TUs then RUs). `tau` is
/// indexed by pair (= TU index) under HybridNoma and by user under Tdma.
struct AllocationState {
  Access access = Access::HybridNoma;
  StarProfile star;
  Eigen::VectorXd rho;
  Eigen::VectorXi pi;
  Eigen::VectorXd tau;
};

struct RateReport {
  Eigen::VectorXd gain;  // |h_k|^2
  Eigen::VectorXd sinr;
  Eigen::VectorXd rate;
  double min_rate = 0.0;
};

struct LinkBudget {
  double power;
  double noise;
};

inline LinkBudget link_budget(const SystemConfig& config) {
  return {config.bs_power, config.noise_power};
}

/// Throws std::invalid_argument naming the violated constraint.
void check_allocation(const ChannelRealization& channels, const Matching& matching,
                      const AllocationState& allocation, double tol = 1e-9);

/// Exact rates from the model equations. `matching` is ignored for Tdma.
RateReport evaluate(const ChannelRealization& channels, const Matching& matching,
                    const AllocationState& allocation, const LinkBudget& link);

/// True when every pair's decoding order agrees with its current gains.
/// Pairs whose gains differ by at most `rel_tol` (relative) accept either order.
bool sic_consistent(const ChannelRealization& channels, const Matching& matching,
                    const AllocationState& allocation, double rel_tol = 0.0);

}  // namespace starnoma

#endif  // STARNOMA_STAR_NOMA_HPP
