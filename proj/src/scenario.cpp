// SPDX-License-Identifier: Apache-2.0

#include "starnoma/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace starnoma {

double SystemConfig::bs_ris_distance_2d() const {
  return (bs_position.head<2>() - ris_position.head<2>()).norm();
}

void SystemConfig::set_bs_ris_distance_2d(double d) {
  if (!(d > 0.0)) throw std::invalid_argument("bs_ris_distance_2d must be > 0");
  bs_position.x() = ris_position.x() - d;
  bs_position.y() = ris_position.y();
}

void SystemConfig::set_elements(int my, int mz) {
  elements_y = my;
  elements_z = mz;
}

void validate(const SystemConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid config: ") + what);
  };
  require(c.users_per_side >= 1, "users_per_side >= 1");
  require(c.elements_y >= 1 && c.elements_z >= 1, "element counts >= 1");
  require(c.spacing_y > 0 && c.spacing_z > 0, "element spacings > 0");
  require(c.carrier_freq > 0, "carrier_freq > 0");
  require(c.bs_power > 0, "bs_power > 0");
  require(c.noise_power > 0, "noise_power > 0");
  require(c.bandwidth > 0, "bandwidth > 0");
  require(c.delta0 > 0, "delta0 > 0");
  require(c.alpha_direct > 0 && c.alpha_bs_ris > 0 && c.alpha_ris_user > 0,
          "path-loss exponents > 0");
  require(c.alpha_direct >= c.alpha_bs_ris, "alpha_direct >= alpha_bs_ris");
  require(c.region_half_extent > 0, "region_half_extent > 0");
  require(c.ris_position.z() > 0, "RIS height > 0");
  require(c.bs_position.z() > 0, "BS height > 0");
  require(c.bs_position.x() < c.ris_position.x(), "BS on the reflected (x < x_ris) side");
  require(c.solver.inner_tol > 0 && c.solver.sca_tol > 0 && c.solver.oned_tol > 0,
          "solver tolerances > 0");
  require(c.solver.max_inner_iters >= 1 && c.solver.max_sca_iters >= 1,
          "solver iteration caps >= 1");
  require(c.solver.initial_beta >= 0 && c.solver.initial_beta <= 1, "initial_beta in [0,1]");
  require(c.solver.initial_rho >= 0 && c.solver.initial_rho <= 1, "initial_rho in [0,1]");
}

double dbm_to_watts(double value_dbm) { return std::pow(10.0, value_dbm / 10.0) * 1e-3; }

double watts_to_dbm(double watts) {
  if (!(watts > 0)) throw std::invalid_argument("watts_to_dbm: power must be > 0");
  return 10.0 * std::log10(watts * 1e3);
}

double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

std::mt19937_64 make_stream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

UserSet generate_users(const SystemConfig& config, std::mt19937_64& rng) {
  if (config.users_per_side < 1) throw std::invalid_argument("generate_users: K must be >= 1");
  const double half = config.region_half_extent;
  if (!(half > 0)) throw std::invalid_argument("generate_users: region_half_extent must be > 0");

  const int k = config.users_per_side;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  UserSet users;
  users.positions.reserve(2 * k);
  users.side.reserve(2 * k);
  const double x0 = config.ris_position.x();
  const double y0 = config.ris_position.y();
  // unit() is in [0, 1): (0, L] for the transmitted side, [-L, 0) for the reflected side.
  for (int i = 0; i < k; ++i) {
    double x = half * (1.0 - unit(rng));
    double y = half * (2.0 * unit(rng) - 1.0);
    users.positions.emplace_back(x0 + x, y0 + y, 0.0);
    users.side.push_back(Side::Transmitted);
  }
  for (int i = 0; i < k; ++i) {
    double x = -half * (1.0 - unit(rng));
    double y = half * (2.0 * unit(rng) - 1.0);
    users.positions.emplace_back(x0 + x, y0 + y, 0.0);
    users.side.push_back(Side::Reflected);
  }
  return users;
}

}  // namespace starnoma
