// SPDX-License-Identifier: Apache-2.0

#include "starnoma/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace starnoma {

namespace {

Position3D position_from_json(const nlohmann::json& v, const char* key) {
  if (!v.is_array() || v.size() != 3) {
    throw std::invalid_argument(std::string(key) + " must be an array [x, y, z]");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

void check_keys(const nlohmann::json& doc, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : doc.items()) {
    if (!allowed.count(item.key())) {
      throw std::invalid_argument("unknown key '" + item.key() + "' in " + where);
    }
  }
}

}  // namespace

SystemConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  check_keys(doc,
             {"users_per_side", "elements_y", "elements_z", "element_spacing_y_m",
              "element_spacing_z_m", "carrier_frequency_hz", "bs_power_dbm",
              "noise_density_dbm_per_hz", "bandwidth_hz", "reference_gain_db",
              "path_loss_exponent_direct", "path_loss_exponent_bs_ris",
              "path_loss_exponent_ris_user", "bs_position_m", "ris_position_m",
              "bs_ris_distance_2d_m", "region_half_extent_m", "seed", "tdma_power", "solver"},
             "config");

  SystemConfig c;
  c.users_per_side = doc.value("users_per_side", c.users_per_side);
  c.elements_y = doc.value("elements_y", c.elements_y);
  c.elements_z = doc.value("elements_z", c.elements_z);
  c.carrier_freq = doc.value("carrier_frequency_hz", c.carrier_freq);
  if (!(c.carrier_freq > 0)) throw std::invalid_argument("carrier_frequency_hz must be > 0");
  c.spacing_y = doc.value("element_spacing_y_m", c.wavelength() / 10.0);
  c.spacing_z = doc.value("element_spacing_z_m", c.wavelength() / 10.0);
  if (doc.contains("bs_power_dbm")) c.bs_power = dbm_to_watts(doc["bs_power_dbm"].get<double>());
  c.bandwidth = doc.value("bandwidth_hz", c.bandwidth);
  if (doc.contains("noise_density_dbm_per_hz")) {
    if (!(c.bandwidth > 0)) throw std::invalid_argument("bandwidth_hz must be > 0");
    c.noise_power = dbm_to_watts(doc["noise_density_dbm_per_hz"].get<double>()) * c.bandwidth;
  }
  if (doc.contains("reference_gain_db")) {
    c.delta0 = db_to_linear(doc["reference_gain_db"].get<double>());
  }
  c.alpha_direct = doc.value("path_loss_exponent_direct", c.alpha_direct);
  c.alpha_bs_ris = doc.value("path_loss_exponent_bs_ris", c.alpha_bs_ris);
  c.alpha_ris_user = doc.value("path_loss_exponent_ris_user", c.alpha_ris_user);
  if (doc.contains("ris_position_m")) {
    c.ris_position = position_from_json(doc["ris_position_m"], "ris_position_m");
  }
  if (doc.contains("bs_position_m")) {
    c.bs_position = position_from_json(doc["bs_position_m"], "bs_position_m");
  }
  if (doc.contains("bs_ris_distance_2d_m")) {
    c.set_bs_ris_distance_2d(doc["bs_ris_distance_2d_m"].get<double>());
  }
  c.region_half_extent = doc.value("region_half_extent_m", c.region_half_extent);
  c.rng_seed = doc.value("seed", c.rng_seed);
  if (doc.contains("tdma_power")) {
    const auto mode = doc["tdma_power"].get<std::string>();
    if (mode == "full_per_slot") {
      c.tdma_power = TdmaPower::FullPerSlot;
    } else if (mode == "equal_share") {
      c.tdma_power = TdmaPower::EqualShare;
    } else {
      throw std::invalid_argument("tdma_power must be full_per_slot or equal_share");
    }
  }
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    check_keys(s,
               {"inner_tol", "max_inner_iters", "sca_tol", "max_sca_iters", "oned_tol",
                "initial_beta", "initial_rho"},
               "solver");
    auto& o = c.solver;
    o.inner_tol = s.value("inner_tol", o.inner_tol);
    o.max_inner_iters = s.value("max_inner_iters", o.max_inner_iters);
    o.sca_tol = s.value("sca_tol", o.sca_tol);
    o.max_sca_iters = s.value("max_sca_iters", o.max_sca_iters);
    o.oned_tol = s.value("oned_tol", o.oned_tol);
    o.initial_beta = s.value("initial_beta", o.initial_beta);
    o.initial_rho = s.value("initial_rho", o.initial_rho);
  }
  validate(c);
  return c;
}

nlohmann::json config_to_json(const SystemConfig& c) {
  nlohmann::json doc;
  doc["users_per_side"] = c.users_per_side;
  doc["elements_y"] = c.elements_y;
  doc["elements_z"] = c.elements_z;
  doc["element_spacing_y_m"] = c.spacing_y;
  doc["element_spacing_z_m"] = c.spacing_z;
  doc["carrier_frequency_hz"] = c.carrier_freq;
  doc["bs_power_dbm"] = watts_to_dbm(c.bs_power);
  doc["noise_density_dbm_per_hz"] = watts_to_dbm(c.noise_power / c.bandwidth);
  doc["bandwidth_hz"] = c.bandwidth;
  doc["reference_gain_db"] = 10.0 * std::log10(c.delta0);
  doc["path_loss_exponent_direct"] = c.alpha_direct;
  doc["path_loss_exponent_bs_ris"] = c.alpha_bs_ris;
  doc["path_loss_exponent_ris_user"] = c.alpha_ris_user;
  doc["bs_position_m"] = {c.bs_position.x(), c.bs_position.y(), c.bs_position.z()};
  doc["ris_position_m"] = {c.ris_position.x(), c.ris_position.y(), c.ris_position.z()};
  doc["region_half_extent_m"] = c.region_half_extent;
  doc["seed"] = c.rng_seed;
  doc["tdma_power"] = c.tdma_power == TdmaPower::FullPerSlot ? "full_per_slot" : "equal_share";
  doc["solver"] = {{"inner_tol", c.solver.inner_tol},
                   {"max_inner_iters", c.solver.max_inner_iters},
                   {"sca_tol", c.solver.sca_tol},
                   {"max_sca_iters", c.solver.max_sca_iters},
                   {"oned_tol", c.solver.oned_tol},
                   {"initial_beta", c.solver.initial_beta},
                   {"initial_rho", c.solver.initial_rho}};
  return doc;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
    return config_from_json(doc);
  } catch (const std::exception& e) {
    throw std::runtime_error("config file '" + path + "': " + e.what());
  }
}

}  // namespace starnoma
