// SPDX-License-Identifier: Apache-2.0

#include "starnoma/channel.hpp"

#include <fstream>
#include <iomanip>

namespace starnoma {

ChannelRealization build_channels(const SystemConfig& config, const UserSet& users,
                                  std::mt19937_64& rng) {
  validate(config);
  const auto& qs = config.ris_position;
  const auto& qb = config.bs_position;
  const double lambda = config.wavelength();

  ChannelRealization ch;
  const double d_bs = distance(qb, qs);
  const Eigen::Vector2d u_bs = direction_cosines(qs, qb);
  // The leading phase uses d_{B,S}; it is common to all elements.
  ch.h_bs_ris = std::sqrt(config.delta0 / std::pow(d_bs, config.alpha_bs_ris)) *
                array_response(u_bs.x(), u_bs.y(), config.elements_y, config.elements_z,
                               config.spacing_y, config.spacing_z, lambda, d_bs);

  ch.h_direct.reserve(users.size());
  ch.h_ris_user.reserve(users.size());
  for (const auto& q : users.positions) {
    const double d_su = distance(qs, q);
    const Eigen::Vector2d u = direction_cosines(qs, q);
    ch.h_ris_user.push_back(std::sqrt(config.delta0 / std::pow(d_su, config.alpha_ris_user)) *
                            array_response(u.x(), u.y(), config.elements_y, config.elements_z,
                                           config.spacing_y, config.spacing_z, lambda, d_su));
  }
  for (const auto& q : users.positions) {
    ch.h_direct.push_back(
        sample_direct(distance(qb, q), config.alpha_direct, config.delta0, rng));
  }
  return ch;
}

ChannelRealization without_cascade(const ChannelRealization& channels) {
  ChannelRealization out = channels;
  for (auto& v : out.h_ris_user) v.setZero();
  return out;
}

void write_channels_csv(const ChannelRealization& channels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write channel dump '" + path + "'");
  out << "link,user,element,re,im\n" << std::setprecision(17);
  for (int u = 0; u < channels.users(); ++u) {
    out << "direct," << u << ",0," << channels.h_direct[u].real() << ','
        << channels.h_direct[u].imag() << '\n';
  }
  for (int m = 0; m < channels.elements(); ++m) {
    out << "bs_ris,-1," << m << ',' << channels.h_bs_ris(m).real() << ','
        << channels.h_bs_ris(m).imag() << '\n';
  }
  for (int u = 0; u < channels.users(); ++u) {
    for (int m = 0; m < channels.elements(); ++m) {
      out << "ris_user," << u << ',' << m << ',' << channels.h_ris_user[u](m).real() << ','
          << channels.h_ris_user[u](m).imag() << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed for channel dump '" + path + "'");
}

}  // namespace starnoma
