// SPDX-License-Identifier: Apache-2.0

#include "starnoma/star_noma.hpp"

#include <algorithm>
#include <limits>

namespace starnoma {

std::pair<int, int> decoding_order(double gain_k, double gain_paired, Side side_k) {
  if (gain_k > gain_paired) return {1, 0};
  if (gain_k < gain_paired) return {0, 1};
  return side_k == Side::Transmitted ? std::pair{1, 0} : std::pair{0, 1};
}

double sinr(double g2, double rho_k, double rho_paired, int pi_paired, double power,
            double noise) {
  if (!(noise > 0)) throw std::invalid_argument("sinr: noise power must be > 0");
  return g2 * rho_k * power / (pi_paired * g2 * rho_paired * power + noise);
}

double rate(double tau, double sinr_value) { return tau * std::log2(1.0 + sinr_value); }

namespace {

[[noreturn]] void violated(const std::string& what) {
  throw std::invalid_argument("allocation violates " + what);
}

int pair_of_user(const Matching& matching, int u) {
  const int k = matching.size();
  return u < k ? u : matching.tu_of_ru(u - k);
}

}  // namespace

void check_allocation(const ChannelRealization& channels, const Matching& matching,
                      const AllocationState& a, double tol) {
  const int n = channels.users();
  const int m = channels.elements();
  if (a.star.beta.size() != n || a.rho.size() != n || a.pi.size() != n) {
    violated("per-user vector sizes");
  }
  if (a.star.theta.rows() != m || a.star.theta.cols() != n) violated("phase matrix shape");
  const double two_pi = 2.0 * std::numbers::pi;
  if ((a.star.theta.array() < 0).any() || (a.star.theta.array() > two_pi).any()) {
    violated("theta in [0, 2pi]");
  }
  if ((a.star.beta.array() < -tol).any() || (a.star.beta.array() > 1 + tol).any()) {
    violated("beta in [0, 1]");
  }
  if ((a.rho.array() < -tol).any() || (a.rho.array() > 1 + tol).any()) {
    violated("rho in [0, 1]");
  }
  if ((a.pi.array() != 0 && a.pi.array() != 1).any()) violated("pi in {0, 1}");
  if ((a.tau.array() < -tol).any() || (a.tau.array() > 1 + tol).any()) {
    violated("tau in [0, 1]");
  }
  if (std::abs(a.tau.sum() - 1.0) > tol) violated("sum of tau = 1");

  if (a.access == Access::Tdma) {
    if (a.tau.size() != n) violated("one TDMA slot per user");
    return;
  }
  const int k = n / 2;
  if (2 * k != n || matching.size() != k) violated("matching size");
  if (!matching.is_valid()) violated("bijective matching");
  if (a.tau.size() != k) violated("one time share per pair");
  for (int t = 0; t < k; ++t) {
    const int r = k + matching.ru_of_tu(t);
    if (std::abs(a.star.beta(t) + a.star.beta(r) - 1.0) > tol) violated("beta pair sum = 1");
    if (std::abs(a.rho(t) + a.rho(r) - 1.0) > tol) violated("rho pair sum = 1");
    if (a.pi(t) + a.pi(r) != 1) violated("one SIC user per pair");
  }
}

RateReport evaluate(const ChannelRealization& channels, const Matching& matching,
                    const AllocationState& a, const LinkBudget& link) {
  check_allocation(channels, matching, a);
  const int n = channels.users();
  RateReport report;
  report.gain.resize(n);
  report.sinr.resize(n);
  report.rate.resize(n);
  for (int u = 0; u < n; ++u) {
    report.gain(u) = std::norm(combined_gain(channels.h_direct[u], channels.h_ris_user[u],
                                             channels.h_bs_ris, a.star.beta(u),
                                             a.star.theta.col(u)));
  }
  for (int u = 0; u < n; ++u) {
    if (a.access == Access::Tdma) {
      report.sinr(u) = sinr(report.gain(u), a.rho(u), 0.0, 0, link.power, link.noise);
      report.rate(u) = rate(a.tau(u), report.sinr(u));
    } else {
      const int p = matching.partner(u);
      report.sinr(u) = sinr(report.gain(u), a.rho(u), a.rho(p), a.pi(p), link.power, link.noise);
      report.rate(u) = rate(a.tau(pair_of_user(matching, u)), report.sinr(u));
    }
  }
  report.min_rate = n > 0 ? report.rate.minCoeff() : 0.0;
  return report;
}

bool sic_consistent(const ChannelRealization& channels, const Matching& matching,
                    const AllocationState& a, double rel_tol) {
  if (a.access == Access::Tdma) return true;
  const int k = matching.size();
  for (int t = 0; t < k; ++t) {
    const int r = k + matching.ru_of_tu(t);
    const double gt = std::norm(combined_gain(channels.h_direct[t], channels.h_ris_user[t],
                                              channels.h_bs_ris, a.star.beta(t),
                                              a.star.theta.col(t)));
    const double gr = std::norm(combined_gain(channels.h_direct[r], channels.h_ris_user[r],
                                              channels.h_bs_ris, a.star.beta(r),
                                              a.star.theta.col(r)));
    if (std::abs(gt - gr) <= rel_tol * std::max(gt, gr)) continue;
    const auto [pt, pr] = decoding_order(gt, gr, Side::Transmitted);
    if (pt != a.pi(t) || pr != a.pi(r)) return false;
  }
  return true;
}

}  // namespace starnoma
