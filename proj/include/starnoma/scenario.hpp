// SPDX-License-Identifier: Apache-2.0
//
// Scenario description: configuration, geometry and random user drops.

#ifndef STARNOMA_SCENARIO_HPP
#define STARNOMA_SCENARIO_HPP

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace starnoma {

using Position3D = Eigen::Vector3d;

inline constexpr double kSpeedOfLight = 3.0e8;

enum class Side { Transmitted, Reflected };

/// Knobs of the inner alternating optimization. Tolerances are on the
/// objective (bits/s/Hz) except `oned_tol`, which bounds scalar-search brackets.
struct SolverOptions {
  double inner_tol = 1e-4;
  int max_inner_iters = 50;
  double sca_tol = 1e-10;
  int max_sca_iters = 200;
  double oned_tol = 1e-9;
  double initial_beta = 0.5;
  double initial_rho = 0.5;
  // Time shares always start uniform (1/K).
};

enum class TdmaPower { FullPerSlot, EqualShare };

struct SystemConfig {
  int users_per_side = 4;
  int elements_y = 10;
  int elements_z = 10;
  double spacing_y = 0.04;  // m, lambda/10 at 750 MHz
  double spacing_z = 0.04;
  double carrier_freq = 750e6;
  double bs_power = 1.0;         // W
  double noise_power = 1e-12;    // W over the whole bandwidth
  double bandwidth = 1e6;        // Hz
  double delta0 = 1e-3;          // channel power at 1 m
  double alpha_direct = 3.0;
  double alpha_bs_ris = 2.0;
  double alpha_ris_user = 2.3;
  Position3D bs_position{-100.0, 0.0, 25.0};
  Position3D ris_position{0.0, 0.0, 20.0};
  double region_half_extent = 500.0;
  std::uint64_t rng_seed = 1;
  TdmaPower tdma_power = TdmaPower::FullPerSlot;
  SolverOptions solver;

  int elements() const { return elements_y * elements_z; }
  double wavelength() const { return kSpeedOfLight / carrier_freq; }
  double bs_ris_distance_2d() const;
  /// Moves the BS along -x so its ground distance to the RIS is `d`.
  void set_bs_ris_distance_2d(double d);
  /// Resizes the array and keeps the element spacing.
  void set_elements(int my, int mz);
};

/// Throws std::invalid_argument naming the first violated constraint.
void validate(const SystemConfig& config);

struct UserSet {
  // Transmitted users first (indices [0, K)), then reflected users [K, 2K).
  std::vector<Position3D> positions;
  std::vector<Side> side;

  int users_per_side() const { return static_cast<int>(positions.size()) / 2; }
  int size() const { return static_cast<int>(positions.size()); }
};

inline int tu_index(int t) { return t; }
inline int ru_index(int r, int k) { return k + r; }

double dbm_to_watts(double value_dbm);
double watts_to_dbm(double watts);
double db_to_linear(double value_db);

inline double distance(const Position3D& a, const Position3D& b) { return (a - b).norm(); }

/// Independent generator streams derived from one seed.
enum class Stream : std::uint64_t { Placement = 1, Fading = 2, Phase = 3, Pairing = 4 };

/// mt19937_64 seeded through seed_seq with (seed, stream tag).
std::mt19937_64 make_stream(std::uint64_t seed, Stream stream);

/// K transmitted users uniform on (0, L] x [-L, L], K reflected users uniform
/// on [-L, 0) x [-L, L], all at z = 0, with L = region_half_extent.
UserSet generate_users(const SystemConfig& config, std::mt19937_64& rng);

}  // namespace starnoma

#endif  // STARNOMA_SCENARIO_HPP
