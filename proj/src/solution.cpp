// SPDX-License-Identifier: Apache-2.0

#include "starnoma/solution.hpp"

#include <cmath>
#include <stdexcept>

namespace starnoma {

void check_solution(const ChannelRealization& channels, const Solution& solution, double tol) {
  check_allocation(channels, solution.matching, solution.allocation, tol);
  if (!sic_consistent(channels, solution.matching, solution.allocation, 1e-9)) {
    throw std::invalid_argument("allocation violates SIC decoding order");
  }
  const Eigen::VectorXd& rates = solution.report.rate;
  if (rates.size() != channels.users()) throw std::invalid_argument("report size mismatch");
  if ((rates.array() < 0).any()) throw std::invalid_argument("negative rate in report");
  if (std::abs(rates.minCoeff() - solution.report.min_rate) > tol) {
    throw std::invalid_argument("report min_rate is not the minimum user rate");
  }
}

}  // namespace starnoma
