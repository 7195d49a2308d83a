// SPDX-License-Identifier: Apache-2.0
//
// JSON configuration files. Unit-bearing keys carry their unit in the name
// (`_dbm`, `_hz`, `_m`, `_db`) and are converted to SI/linear values on load:
//
//   users_per_side              int
//   elements_y, elements_z      int
//   element_spacing_y_m         m      (default: wavelength / 10)
//   element_spacing_z_m         m      (default: wavelength / 10)
//   carrier_frequency_hz        Hz
//   bs_power_dbm                dBm
//   noise_density_dbm_per_hz    dBm/Hz (integrated over bandwidth_hz)
//   bandwidth_hz                Hz
//   reference_gain_db           dB     (channel power at 1 m)
//   path_loss_exponent_direct, path_loss_exponent_bs_ris, path_loss_exponent_ris_user
//   bs_position_m, ris_position_m       [x, y, z] in m
//   bs_ris_distance_2d_m        m      (overrides bs_position_m x/y)
//   region_half_extent_m        m
//   seed                        uint64
//   tdma_power                  "full_per_slot" | "equal_share"
//   solver                      { inner_tol, max_inner_iters, sca_tol, max_sca_iters,
//                                 oned_tol, initial_beta, initial_rho }
//
// Every key is optional; absent keys keep the SystemConfig defaults.
// Unknown keys are rejected.

#ifndef STARNOMA_CONFIG_IO_HPP
#define STARNOMA_CONFIG_IO_HPP

#include <string>

#include <json.hpp>

#include "starnoma/scenario.hpp"

namespace starnoma {

SystemConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const SystemConfig& config);

/// Reads and validates a configuration file; errors carry the path.
SystemConfig load_config(const std::string& path);

}  // namespace starnoma

#endif  // STARNOMA_CONFIG_IO_HPP
