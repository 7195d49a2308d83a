// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "starnoma/channel.hpp"

using namespace starnoma;

namespace {

double mean_power(double d, double alpha, double delta0, int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double sum = 0;
  for (int i = 0; i < draws; ++i) sum += std::norm(sample_direct(d, alpha, delta0, rng));
  return sum / draws;
}

}  // namespace

TEST_CASE("sample_direct power") {
  // |h|^2 is exponential, so the estimator's standard error is mean / sqrt(n).
  const int n = 100000;
  CHECK(std::abs(mean_power(1.0, 3.0, 1.0, n, 1) - 1.0) < 0.02);
  const double expected = 1e-3 / 1e3;
  CHECK(std::abs(mean_power(10.0, 3.0, 1e-3, n, 2) - expected) < 3.0 * expected / std::sqrt(n));
}

TEST_CASE("sample_direct determinism and errors") {
  std::mt19937_64 a(9), b(9);
  CHECK(sample_direct(50.0, 3.0, 1e-3, a) == sample_direct(50.0, 3.0, 1e-3, b));
  CHECK_THROWS_AS(sample_direct(0.0, 3.0, 1e-3, a), std::invalid_argument);
  CHECK_THROWS_AS(sample_direct(-1.0, 3.0, 1e-3, a), std::invalid_argument);
}

TEST_CASE("array_response broadside and single element") {
  const double lambda = 0.4;
  const CVectorXd a = array_response(0.0, 0.0, 3, 4, 0.04, 0.04, lambda, 123.4);
  const auto lead = std::polar(1.0, -2.0 * std::numbers::pi * 123.4 / lambda);
  REQUIRE(a.size() == 12);
  for (Eigen::Index m = 0; m < a.size(); ++m) CHECK(std::abs(a(m) - lead) < 1e-12);

  const CVectorXd one = array_response(0.3, -0.2, 1, 1, 0.04, 0.04, lambda, 10.0);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one(0)) == doctest::Approx(1.0));
}

TEST_CASE("array_response Kronecker order") {
  const double lambda = 1.0;
  const CVectorXd a = array_response(1.0, 0.0, 2, 2, 0.5, 0.5, lambda, 0.0);
  // m = my * Mz + mz: phases {0, 0, pi, pi} relative to the leading factor.
  const double expect[4] = {0, 0, std::numbers::pi, std::numbers::pi};
  for (int m = 0; m < 4; ++m) {
    CHECK(std::abs(a(m) - std::polar(1.0, -expect[m])) < 1e-12);
    CHECK(std::abs(a(m)) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(array_response(0.9, 0.9, 2, 2, 0.5, 0.5, lambda, 0.0), std::invalid_argument);
}

TEST_CASE("array_response magnitude does not depend on path distance") {
  const CVectorXd a = array_response(0.4, 0.3, 4, 4, 0.04, 0.04, 0.4, 10.0);
  const CVectorXd b = array_response(0.4, 0.3, 4, 4, 0.04, 0.04, 0.4, 77.7);
  const std::complex<double> ratio = b(0) / a(0);
  CHECK(std::abs(ratio) == doctest::Approx(1.0));
  for (Eigen::Index m = 0; m < a.size(); ++m) CHECK(std::abs(b(m) - ratio * a(m)) < 1e-12);
}

TEST_CASE("build_channels link budgets") {
  SystemConfig c;
  c.users_per_side = 2;
  c.set_elements(4, 5);
  UserSet users;
  // Two users at the same RIS distance, one at twice that distance on the same bearing.
  const Position3D s = c.ris_position;
  const Position3D dir = Position3D(30.0, 40.0, -20.0).normalized();
  const Position3D mirrored(-dir.x(), dir.y(), dir.z());
  users.positions = {s + 50.0 * dir, s + 100.0 * dir, s + 50.0 * mirrored, s + 70.0 * mirrored};
  users.side = {Side::Transmitted, Side::Transmitted, Side::Reflected, Side::Reflected};
  std::mt19937_64 rng(3);
  const ChannelRealization ch = build_channels(c, users, rng);
  REQUIRE(ch.users() == 4);
  REQUIRE(ch.elements() == 20);

  const double d_bs = distance(c.bs_position, c.ris_position);
  CHECK(ch.h_bs_ris.squaredNorm() ==
        doctest::Approx(20 * c.delta0 / std::pow(d_bs, c.alpha_bs_ris)).epsilon(1e-12));
  // Entries of one LoS link share one magnitude.
  for (Eigen::Index m = 1; m < 20; ++m) {
    CHECK(std::abs(ch.h_ris_user[0](m)) == doctest::Approx(std::abs(ch.h_ris_user[0](0))));
  }
  CHECK(std::abs(ch.h_ris_user[0](0)) == doctest::Approx(std::abs(ch.h_ris_user[2](0))));
  CHECK(std::abs(ch.h_ris_user[1](0)) / std::abs(ch.h_ris_user[0](0)) ==
        doctest::Approx(std::pow(2.0, -1.15)).epsilon(1e-12));
}

TEST_CASE("without_cascade zeroes every RIS link") {
  SystemConfig c;
  c.users_per_side = 2;
  auto placement = make_stream(1, Stream::Placement);
  auto fading = make_stream(1, Stream::Fading);
  const ChannelRealization ch = build_channels(c, generate_users(c, placement), fading);
  const ChannelRealization z = without_cascade(ch);
  for (int u = 0; u < z.users(); ++u) {
    CHECK(z.h_ris_user[u].squaredNorm() == 0.0);
    CHECK(z.h_direct[u] == ch.h_direct[u]);
  }
  CHECK(z.h_bs_ris == ch.h_bs_ris);
}
