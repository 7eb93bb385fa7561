// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "leomarket/channel.hpp"
#include "leomarket/error.hpp"
#include "leomarket/units.hpp"

using namespace leomarket;
using namespace leomarket::channel;

namespace {

// Frozen from tests/oracles/channel_golden.py (mpmath, 50 digits).
constexpr double kGoldenDeviation = 0.10004068579464344317;
constexpr double kGoldenDoppler8000C3 = 0.27272727272727272727;
constexpr double kGoldenDopplerRatioC3 = 0.57894736842105263158;
constexpr double kGoldenDoppler8000 = 0.2725950172758683397;
constexpr double kGoldenNoise = 3.9810717055349725077e-21;
constexpr double kGoldenReceived = 7.7392958868897528233e-12;
constexpr double kGoldenInterference = 1.0672814652503524241e-12;
constexpr double kGoldenSinrFull = 7.2514103719344031303;
constexpr double kGoldenSinrNoiseOnly = 30698784406372503420.0;
constexpr double kGoldenCoverage = 1001569.6123057604772;

bool close_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::abs(want);
}

Geometry at_range(double d) {
  Geometry g;
  g.sat_center_distance = d;
  g.slant_range = d;
  return g;
}

UserLink reference_link() {
  UserLink l;
  l.tx_power = 0.1;
  l.user_gain = units::db_to_linear(3.0);
  l.sat_gain = units::db_to_linear(20.0);
  l.wavelength = kSpeedOfLight / 2e9;
  return l;
}

SatelliteKinematics moving(double v, double c = kSpeedOfLight) {
  SatelliteKinematics k;
  k.velocity = v;
  k.speed_of_light = c;
  return k;
}

}  // namespace

TEST_CASE("deviation angle is zero at the cell center") {
  Geometry g = at_range(1e4);
  CHECK(deviation_angle(g) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("deviation angle matches the high-precision reference") {
  Geometry g;
  g.sat_center_distance = 1e6;
  g.slant_range = 1e6;
  g.earth_radius = 6.371e6;
  g.surface_offset = 1e5;
  CHECK(close_rel(deviation_angle(g), kGoldenDeviation, 1e-12));
}

TEST_CASE("deviation angle rejects impossible triangles and zero distances") {
  Geometry g;
  g.sat_center_distance = 1.0;
  g.slant_range = 1.0;
  g.surface_offset = 1e6;  // chord far longer than both sides
  CHECK_THROWS_AS(deviation_angle(g), Error);
  try {
    deviation_angle(g);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_geometry);
  }
  Geometry z = at_range(0.0);
  try {
    deviation_angle(z);
    FAIL("expected ZeroDistance");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_distance);
  }
}

TEST_CASE("overhead geometry agrees with the deviation-angle triangle") {
  const auto g = Geometry::overhead(kEarthRadius, 1e4, 5e4, 3e4);
  CHECK(g.slant_range >= g.altitude);
  const double a = deviation_angle(g);
  CHECK(a > 0.0);
  CHECK(a < std::numbers::pi / 2);
  // Nearly flat footprint: the angle approaches atan(offset / altitude).
  CHECK(a == doctest::Approx(std::atan(3e4 / 1e4)).epsilon(1e-2));
}

TEST_CASE("doppler loss boundary cases") {
  CHECK(doppler_loss(moving(0.0)) == 1.0);
  SatelliteKinematics side = moving(12000.0);
  side.motion_angle = std::numbers::pi / 2;
  CHECK(doppler_loss(side) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(close_rel(doppler_loss(moving(8000.0, 3e8)), kGoldenDoppler8000C3, 1e-12));
  CHECK(close_rel(doppler_loss(moving(8000.0)), kGoldenDoppler8000, 1e-12));
}

TEST_CASE("doppler ratio between 16000 and 8000 m/s") {
  const double ratio = doppler_loss(moving(16000.0, 3e8)) / doppler_loss(moving(8000.0, 3e8));
  CHECK(std::abs(ratio - kGoldenDopplerRatioC3) < 1e-12);
  CHECK(std::abs(ratio - 3.6667 / 6.3333) < 1e-4);
}

TEST_CASE("doppler loss errors") {
  SatelliteKinematics k = moving(3e3);
  k.motion_angle = std::numbers::pi;  // receding the other way: 1 - 1 = 0 denominator
  k.speed_of_light = 3e8;
  k.fading_coefficient = 1e5;
  try {
    doppler_loss(k);
    FAIL("expected SingularDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_denominator);
  }
  CHECK_THROWS_AS(doppler_loss(moving(-1.0)), std::invalid_argument);
}

TEST_CASE("noise power from density") {
  CHECK(close_rel(NoiseModel::from_density(-174.0, 1e6).power, kGoldenNoise, 1e-12));
}

TEST_CASE("received power") {
  UserLink unit;
  unit.tx_power = 1.0;
  unit.user_gain = 1.0;
  unit.sat_gain = 1.0;
  unit.wavelength = 1.0;
  const Geometry g = at_range(1.0 / (4.0 * std::numbers::pi));
  CHECK(received_power(unit, g, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  const UserLink l = reference_link();
  const double f = doppler_loss(moving(8000.0));
  const double p = received_power(l, at_range(1e4), f);
  CHECK(close_rel(p, kGoldenReceived, 1e-12));
  UserLink doubled = l;
  doubled.tx_power *= 2.0;
  CHECK(received_power(doubled, at_range(1e4), f) == doctest::Approx(2.0 * p).epsilon(1e-14));
}

TEST_CASE("inter-cell interference") {
  const double f = doppler_loss(moving(8000.0));
  CHECK(intercell_interference({}, f) == 0.0);

  Interferer h;
  h.link = reference_link();
  h.link.tx_power = 0.5;
  h.link.user_gain = units::db_to_linear(2.0);
  h.link.active_factor = 0.5;
  h.link.polarization_isolation = 0.1;
  h.geometry = at_range(1.2e4);
  const std::vector<Interferer> one{h};
  const double single = intercell_interference(one, f);
  CHECK(close_rel(single, kGoldenInterference, 1e-12));

  const std::vector<Interferer> two{h, h};
  CHECK(intercell_interference(two, f) == doctest::Approx(2.0 * single).epsilon(1e-14));

  Interferer idle = h;
  idle.link.active_factor = 0.0;
  const std::vector<Interferer> silent{idle};
  CHECK(intercell_interference(silent, f) == 0.0);
}

TEST_CASE("uplink SINR reference values") {
  const UserLink l = reference_link();
  const auto k = moving(8000.0);
  const auto nz = NoiseModel::from_density(-174.0, 1e6);
  Interferer h;
  h.link = reference_link();
  h.link.tx_power = 0.5;
  h.link.user_gain = units::db_to_linear(2.0);
  h.link.active_factor = 0.5;
  h.link.polarization_isolation = 0.1;
  h.geometry = at_range(1.2e4);
  const std::vector<Interferer> one{h};
  const double interference = intercell_interference(one, doppler_loss(k));
  CHECK(close_rel(uplink_sinr(l, at_range(1e4), k, interference, nz), kGoldenSinrFull, 1e-10));
  CHECK(close_rel(uplink_sinr(l, at_range(1e4), k, 0.0, nz), kGoldenSinrNoiseOnly, 1e-10));
}

TEST_CASE("uplink SINR with a noise-only unit denominator") {
  UserLink l;
  l.tx_power = 1.0;
  l.user_gain = 1.0;
  l.sat_gain = 1.0;
  l.wavelength = 0.3;
  const auto k = moving(8000.0);
  const double sinr = uplink_sinr(l, at_range(1.0), k, 0.0, NoiseModel{1.0});
  CHECK(sinr == doctest::Approx(doppler_loss(k) * 0.09).epsilon(1e-14));
}

TEST_CASE("SINR falls as interference rises") {
  const UserLink l = reference_link();
  const auto k = moving(8000.0);
  const auto nz = NoiseModel::from_density(-174.0, 1e6);
  double prev = uplink_sinr(l, at_range(1e4), k, 0.0, nz);
  for (double i = 1e-15; i < 1e-9; i *= 10.0) {
    const double s = uplink_sinr(l, at_range(1e4), k, i, nz);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("SINR strictly decreases with velocity on random links") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    UserLink l;
    l.tx_power = 0.1 + 0.9 * u(rng);
    l.user_gain = units::db_to_linear(1.0 + 4.0 * u(rng));
    l.sat_gain = units::db_to_linear(10.0 + 20.0 * u(rng));
    l.fading = 1.0 + u(rng);
    const Geometry g = Geometry::overhead(kEarthRadius, 1e4 + 1e6 * u(rng), 5e4, 5e4 * u(rng));
    SatelliteKinematics k;
    k.motion_angle = 1.5 * u(rng);  // cos > 0
    k.fading_coefficient = std::pow(10.0, 2.0 + 4.0 * u(rng));
    const double interference = u(rng) < 0.5 ? 0.0 : 1e-14 * u(rng);
    const auto nz = NoiseModel::from_density(-174.0, 1e6);
    const double vmax = 1000.0 + 3e4 * u(rng);
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
      k.velocity = vmax * i / 99.0;
      const double s = uplink_sinr(l, g, k, interference, nz);
      if (!(s < prev)) ++violations;
      prev = s;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("velocity bounds") {
  Geometry g = Geometry::overhead(6.371e6, 1e4, 5e5, 0.0);
  const UserLink l = reference_link();
  const auto nz = NoiseModel::from_density(-174.0, 1e6);
  SatelliteKinematics k = moving(0.0);

  // A tiny budget never binds before coverage does.
  const auto loose = velocity_bounds(g, l, k, nz, 1.0, 1e-30, 1.0);
  CHECK(close_rel(loose.coverage, kGoldenCoverage, 1e-12));
  CHECK(max_feasible_velocity(g, l, k, nz, 1.0, 1e-30, 1.0) == loose.coverage);

  const double s0 = uplink_sinr(l, g, k, 0.0, nz);
  const auto edge = velocity_bounds(g, l, k, nz, 1.0, s0, 1.0);
  CHECK(edge.sinr == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(max_feasible_velocity(g, l, k, nz, 1.0, s0, 1.0) == doctest::Approx(0.0).epsilon(1e-6));

  // The SINR bound lands exactly where the budget is met.
  const double budget = s0 / 4.0;
  const auto mid = velocity_bounds(g, l, k, nz, 1.0, budget, 1.0);
  SatelliteKinematics at = k;
  at.velocity = mid.sinr;
  CHECK(uplink_sinr(l, g, at, 0.0, nz) == doctest::Approx(budget).epsilon(1e-10));

  try {
    velocity_bounds(g, l, k, nz, 1.0, 2.0 * s0, 1.0);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible);
  }

  SatelliteKinematics side = k;
  side.motion_angle = std::numbers::pi / 2 + 0.1;
  CHECK(std::isinf(velocity_bounds(g, l, side, nz, 1.0, budget, 1.0).sinr));
}

TEST_CASE("dB conversions") {
  CHECK(units::db_to_linear(20.0) == doctest::Approx(100.0));
  CHECK(units::linear_to_db(1000.0) == doctest::Approx(30.0));
  CHECK(units::dbm_to_watts(30.0) == doctest::Approx(1.0));
}
