// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "starnoma/baselines.hpp"
#include "starnoma/star_noma.hpp"

using namespace starnoma;
using cd = std::complex<double>;

namespace {

CVectorXd random_vector(int m, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  CVectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = {n(rng), n(rng)};
  return v;
}

Eigen::VectorXd random_phases(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  Eigen::VectorXd t(m);
  for (int i = 0; i < m; ++i) t(i) = u(rng);
  return t;
}

}  // namespace

TEST_CASE("combined_gain basics") {
  std::mt19937_64 rng(1);
  const CVectorXd g = random_vector(6, rng);
  const CVectorXd h = random_vector(6, rng);
  const Eigen::VectorXd theta = random_phases(6, rng);
  const cd hd(0.3, -0.2);
  CHECK(combined_gain(hd, h, g, 0.0, theta) == hd);

  CVectorXd h1(1), g1(1);
  h1 << cd(0.5, 0.5);
  g1 << cd(-1.0, 2.0);
  const Eigen::VectorXd t1 = optimal_phase(cd(0.0), h1, g1);
  CHECK(std::abs(combined_gain(cd(0.0), h1, g1, 0.49, t1)) ==
        doctest::Approx(0.7 * std::abs(h1(0)) * std::abs(g1(0))));

  CHECK_THROWS_AS(combined_gain(hd, h, g, 1.2, theta), std::invalid_argument);
  CHECK_THROWS_AS(combined_gain(hd, h, g, 0.5, Eigen::VectorXd::Zero(5)), std::invalid_argument);
}

TEST_CASE("combined_gain matches the diagonal-matrix form") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 16;
    const CVectorXd g = random_vector(m, rng);
    const CVectorXd h = random_vector(m, rng);
    const Eigen::VectorXd theta = random_phases(m, rng);
    const double beta = u(rng);
    const cd hd(u(rng), u(rng));
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) v(i, i) = std::sqrt(beta) * std::polar(1.0, theta(i));
    const cd oracle = hd + (h.adjoint() * v * g)(0, 0);
    CHECK(std::abs(combined_gain(hd, h, g, beta, theta) - oracle) <= 1e-12 * (1 + std::abs(oracle)));
  }
}

TEST_CASE("optimal_phase examples") {
  CVectorXd ones = CVectorXd::Ones(4);
  const Eigen::VectorXd t0 = optimal_phase(cd(1.0, 0.0), ones, ones);
  CHECK(t0.isZero());

  // arg(h_d) = pi/2, arg(conj(h_ru)) = pi/4, arg(h_bs) = pi/4.
  CVectorXd hru(3), hbs(3);
  hru.setConstant(std::polar(2.0, -std::numbers::pi / 4));
  hbs.setConstant(std::polar(0.5, std::numbers::pi / 4));
  const Eigen::VectorXd t1 = optimal_phase(std::polar(3.0, std::numbers::pi / 2), hru, hbs);
  for (Eigen::Index m = 0; m < 3; ++m) {
    CHECK((t1(m) < 1e-12 || t1(m) > 2 * std::numbers::pi - 1e-12));
  }
}

TEST_CASE("optimal_phase beats random phases and meets the triangle bound") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial;
    const CVectorXd g = random_vector(m, rng);
    const CVectorXd h = random_vector(m, rng);
    const cd hd(u(rng) - 0.5, u(rng) - 0.5);
    const double beta = u(rng);
    const Eigen::VectorXd theta = optimal_phase(hd, h, g);
    CHECK((theta.array() >= 0).all());
    CHECK((theta.array() < 2 * std::numbers::pi).all());
    const double aligned = std::abs(combined_gain(hd, h, g, beta, theta));
    double bound = std::abs(hd);
    for (int i = 0; i < m; ++i) bound += std::sqrt(beta) * std::abs(h(i)) * std::abs(g(i));
    CHECK(std::abs(aligned - bound) <= 1e-9 * bound);
    // Its argument equals that of the direct link.
    const cd ris = combined_gain(hd, h, g, beta, theta) - hd;
    CHECK(std::abs(std::remainder(std::arg(ris) - std::arg(hd), 2 * std::numbers::pi)) < 1e-9);
    for (int d = 0; d < 1000; ++d) {
      const double r = std::abs(combined_gain(hd, h, g, beta, random_phases(m, rng)));
      CHECK(r <= bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("decoding_order") {
  CHECK(decoding_order(0.5, 1.0, Side::Transmitted) == std::pair{0, 1});
  CHECK(decoding_order(1.0, 0.5, Side::Transmitted) == std::pair{1, 0});
  CHECK(decoding_order(1.0, 1.0, Side::Transmitted) == std::pair{1, 0});
  CHECK(decoding_order(1.0, 1.0, Side::Reflected) == std::pair{0, 1});
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng), c = std::exp(40 * (u(rng) - 0.5));
    const auto o = decoding_order(a, b, Side::Transmitted);
    CHECK(o.first + o.second == 1);
    CHECK(decoding_order(c * a, c * b, Side::Transmitted) == o);
  }
}

TEST_CASE("sinr and rate") {
  CHECK(sinr(2.0, 0.3, 0.7, 1, 1.0, 0.1) == doctest::Approx(0.4));
  CHECK(sinr(2.0, 0.3, 0.7, 0, 1.0, 0.1) == doctest::Approx(6.0));
  CHECK(sinr(2.0, 0.0, 1.0, 1, 1.0, 0.1) == 0.0);
  CHECK_THROWS_AS(sinr(2.0, 0.3, 0.7, 1, 1.0, 0.0), std::invalid_argument);
  CHECK(rate(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(rate(0.5, 3.0) == doctest::Approx(1.0));
  CHECK(rate(0.0, 5.0) == 0.0);
}

namespace {

struct Fixture {
  Scenario scenario;
  Matching matching;
  AllocationState state;
  LinkBudget link;

  explicit Fixture(int k, std::uint64_t seed = 11) {
    SystemConfig c;
    c.users_per_side = k;
    c.set_elements(3, 3);
    scenario = make_scenario(c, seed);
    matching = Matching::identity(k);
    link = link_budget(c);
    const int n = 2 * k;
    state.star.beta = Eigen::VectorXd::Constant(n, 0.5);
    state.star.theta = Eigen::MatrixXd::Zero(9, n);
    state.rho = Eigen::VectorXd::Constant(n, 0.5);
    state.tau = Eigen::VectorXd::Constant(k, 1.0 / k);
    state.pi.resize(n);
    for (int t = 0; t < k; ++t) {
      const auto g = [&](int u) {
        return std::norm(combined_gain(scenario.channels.h_direct[u],
                                       scenario.channels.h_ris_user[u], scenario.channels.h_bs_ris,
                                       0.5, state.star.theta.col(u)));
      };
      const auto [a, b] = decoding_order(g(t), g(k + t), Side::Transmitted);
      state.pi(t) = a;
      state.pi(k + t) = b;
    }
  }
};

}  // namespace

TEST_CASE("evaluate invariants") {
  Fixture f(3);
  const RateReport r = evaluate(f.scenario.channels, f.matching, f.state, f.link);
  CHECK((r.rate.array() >= 0).all());
  CHECK(r.min_rate == r.rate.minCoeff());
  const RateReport again = evaluate(f.scenario.channels, f.matching, f.state, f.link);
  CHECK(again.rate == r.rate);
  CHECK(again.sinr == r.sinr);

  f.state.tau << 0.0, 0.5, 0.5;
  const RateReport zero = evaluate(f.scenario.channels, f.matching, f.state, f.link);
  CHECK(zero.rate(0) == 0.0);
  CHECK(zero.rate(3) == 0.0);
  CHECK(zero.min_rate == 0.0);
}

TEST_CASE("evaluate equal gains: the interference-free user is not worse") {
  ChannelRealization ch;
  ch.h_direct = {cd(1e-5, 0.0), cd(0.0, 1e-5)};
  ch.h_bs_ris = CVectorXd::Ones(1);
  ch.h_ris_user = {CVectorXd::Zero(1), CVectorXd::Zero(1)};
  AllocationState a;
  a.star.beta = Eigen::VectorXd::Constant(2, 0.5);
  a.star.theta = Eigen::MatrixXd::Zero(1, 2);
  a.rho = Eigen::VectorXd::Constant(2, 0.5);
  a.pi = Eigen::VectorXi(2);
  a.pi << 1, 0;
  a.tau = Eigen::VectorXd::Ones(1);
  const RateReport r = evaluate(ch, Matching::identity(1), a, {1.0, 1e-12});
  CHECK(r.rate(0) >= r.rate(1));
  CHECK(r.rate(0) == doctest::Approx(std::log2(1 + 0.5e2)));
  CHECK(r.rate(1) == doctest::Approx(std::log2(1 + 0.5e2 / (0.5e2 + 1))));
}

TEST_CASE("check_allocation names the violated constraint") {
  Fixture f(2);
  CHECK_NOTHROW(check_allocation(f.scenario.channels, f.matching, f.state));
  auto bad = f.state;
  bad.star.beta(0) = 0.7;
  CHECK_THROWS_WITH(evaluate(f.scenario.channels, f.matching, bad, f.link),
                    doctest::Contains("beta pair sum"));
  bad = f.state;
  bad.rho(1) = 0.9;
  CHECK_THROWS_WITH(check_allocation(f.scenario.channels, f.matching, bad),
                    doctest::Contains("rho pair sum"));
  bad = f.state;
  bad.tau << 0.7, 0.7;
  CHECK_THROWS_WITH(check_allocation(f.scenario.channels, f.matching, bad),
                    doctest::Contains("sum of tau"));
  bad = f.state;
  bad.pi(0) = 1 - bad.pi(0);
  CHECK_THROWS_WITH(check_allocation(f.scenario.channels, f.matching, bad),
                    doctest::Contains("one SIC user"));
  bad = f.state;
  bad.star.theta(0, 0) = -0.1;
  CHECK_THROWS_WITH(check_allocation(f.scenario.channels, f.matching, bad),
                    doctest::Contains("theta"));
}

TEST_CASE("sic_consistent") {
  Fixture f(2);
  CHECK(sic_consistent(f.scenario.channels, f.matching, f.state));
  auto flipped = f.state;
  flipped.pi(0) = 1 - flipped.pi(0);
  flipped.pi(2) = 1 - flipped.pi(2);
  CHECK_FALSE(sic_consistent(f.scenario.channels, f.matching, flipped));
}
