// SPDX-License-Identifier: Apache-2.0
//
// Channel synthesis: Rayleigh direct link, LoS BS->RIS and RIS->user links
// with uniform-planar-array steering vectors.

#ifndef STARNOMA_CHANNEL_HPP
#define STARNOMA_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "starnoma/scenario.hpp"

namespace starnoma {

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
using CVectorXd = CVector<double>;

/// UPA steering vector in Kronecker order (y-vector (x) z-vector), element
/// m = my * Mz + mz. `uy`, `uz` are direction cosines of the line of sight
/// along the array axes; `path_distance` only sets the common leading phase.
template <typename Scalar>
CVector<Scalar> array_response(Scalar uy, Scalar uz, int my, int mz, Scalar dy, Scalar dz,
                               Scalar wavelength, Scalar path_distance) {
  if (uy * uy + uz * uz > Scalar(1) + Scalar(1e-12)) {
    throw std::invalid_argument("array_response: |u| > 1");
  }
  if (my < 1 || mz < 1) throw std::invalid_argument("array_response: element counts >= 1");
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  const std::complex<Scalar> lead = std::polar(Scalar(1), -two_pi * path_distance / wavelength);
  CVector<Scalar> out(static_cast<Eigen::Index>(my) * mz);
  for (int iy = 0; iy < my; ++iy) {
    for (int iz = 0; iz < mz; ++iz) {
      const Scalar phase = -two_pi * (iy * dy * uy + iz * dz * uz) / wavelength;
      out(iy * mz + iz) = lead * std::polar(Scalar(1), phase);
    }
  }
  return out;
}

/// sqrt(delta0 / d^alpha) * CN(0, 1). The complex normal is two independent
/// real normals scaled by 1/sqrt(2).
template <typename Scalar, typename Rng>
std::complex<Scalar> sample_direct(Scalar d, Scalar alpha, Scalar delta0, Rng& rng) {
  if (!(d > 0)) throw std::invalid_argument("sample_direct: distance must be > 0");
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  const Scalar re = normal(rng);
  const Scalar im = normal(rng);
  const Scalar scale = std::sqrt(delta0 / std::pow(d, alpha)) / std::sqrt(Scalar(2));
  return {scale * re, scale * im};
}

struct ChannelRealization {
  std::vector<std::complex<double>> h_direct;  // per user
  CVectorXd h_bs_ris;                          // M
  std::vector<CVectorXd> h_ris_user;           // per user, M each

  int users() const { return static_cast<int>(h_direct.size()); }
  int elements() const { return static_cast<int>(h_bs_ris.size()); }
};

/// LoS vector from `from` to `to` expressed as direction cosines along (y, z).
inline Eigen::Vector2d direction_cosines(const Position3D& from, const Position3D& to) {
  const Position3D delta = to - from;
  const double d = delta.norm();
  if (!(d > 0)) throw std::invalid_argument("direction_cosines: coincident points");
  return {delta.y() / d, delta.z() / d};
}

ChannelRealization build_channels(const SystemConfig& config, const UserSet& users,
                                  std::mt19937_64& rng);

/// Copy with every RIS->user vector zeroed (no cascaded path for anyone).
ChannelRealization without_cascade(const ChannelRealization& channels);

/// CSV dump: link,user,element,re,im (user = -1 for the BS->RIS link).
void write_channels_csv(const ChannelRealization& channels, const std::string& path);

}  // namespace starnoma

#endif  // STARNOMA_CHANNEL_HPP
