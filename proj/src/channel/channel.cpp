// SPDX-License-Identifier: Apache-2.0
#include "leomarket/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "leomarket/error.hpp"
#include "leomarket/units.hpp"

namespace leomarket::channel {

namespace {

constexpr double kPi = std::numbers::pi;

double path_gain(const UserLink& link, double distance) {
  const double loss = 4.0 * kPi * distance / link.wavelength;
  return link.tx_power * link.user_gain * link.sat_gain / (loss * loss * link.fading);
}

}  // namespace

Geometry Geometry::overhead(double earth_radius, double altitude, double beam_radius,
                            double surface_offset) {
  const double orbit = earth_radius + altitude;
  const double half = std::sin(surface_offset / (2.0 * earth_radius));
  // Law of cosines about the Earth center, 1 - cos(phi) written as 2 sin^2(phi / 2).
  const double slant2 = altitude * altitude + 4.0 * earth_radius * orbit * half * half;
  Geometry g;
  g.sat_center_distance = altitude;
  g.slant_range = std::sqrt(slant2);
  g.earth_radius = earth_radius;
  g.surface_offset = surface_offset;
  g.altitude = altitude;
  g.beam_radius = beam_radius;
  return g;
}

NoiseModel NoiseModel::from_density(double density_dbm_per_mhz, double bandwidth_hz) {
  return NoiseModel{units::noise_power_watts(density_dbm_per_mhz, bandwidth_hz)};
}

double deviation_angle(const Geometry& g) {
  if (g.sat_center_distance <= 0.0 || g.slant_range <= 0.0) {
    throw Error(Errc::zero_distance, "satellite distances must be positive");
  }
  const double half = std::sin(g.surface_offset / (2.0 * g.earth_radius));
  const double chord2 = 4.0 * g.earth_radius * g.earth_radius * half * half;
  const double a = g.sat_center_distance;
  const double b = g.slant_range;
  double cosine = (a * a + b * b - chord2) / (2.0 * a * b);
  if (cosine > 1.0 + kCosineTolerance || cosine < -1.0 - kCosineTolerance ||
      !std::isfinite(cosine)) {
    throw Error(Errc::degenerate_geometry, "cosine argument outside [-1, 1]");
  }
  cosine = std::clamp(cosine, -1.0, 1.0);
  return std::acos(cosine);
}

double doppler_loss(const SatelliteKinematics& k) {
  if (k.velocity < 0.0) throw std::invalid_argument("velocity must be non-negative");
  const double denom =
      (k.velocity / k.speed_of_light) * std::cos(k.motion_angle) * k.fading_coefficient + 1.0;
  if (denom <= kMinDenominator) {
    throw Error(Errc::singular_denominator, "doppler denominator vanishes");
  }
  return 1.0 / denom;
}

double received_power(const UserLink& link, const Geometry& g, double doppler) {
  return doppler * path_gain(link, g.slant_range);
}

double intercell_interference(std::span<const Interferer> others, double doppler) {
  double total = 0.0;
  for (const auto& other : others) {
    total += doppler * path_gain(other.link, other.geometry.slant_range) *
             other.link.active_factor * other.link.polarization_isolation;
  }
  return total;
}

double uplink_sinr(const UserLink& link, const Geometry& g, const SatelliteKinematics& k,
                   double interference, const NoiseModel& noise) {
  const double d = g.slant_range;
  const double numerator = doppler_loss(k) * link.tx_power * link.user_gain * link.sat_gain *
                           link.wavelength * link.wavelength;
  const double denominator = 16.0 * kPi * kPi * d * d * link.fading * interference + noise.power;
  return numerator / denominator;
}

VelocityBound velocity_bounds(const Geometry& g, const UserLink& link,
                              const SatelliteKinematics& k, const NoiseModel& noise,
                              double min_slot_s, double min_budget, double zeta,
                              double interference) {
  if (min_slot_s <= 0.0 || min_budget <= 0.0 || zeta <= 0.0) {
    throw std::invalid_argument("slot, budget and zeta must be positive");
  }
  VelocityBound bound;
  bound.coverage =
      2.0 * g.beam_radius * (g.earth_radius + g.altitude) / (g.earth_radius * min_slot_s);

  SatelliteKinematics still = k;
  still.velocity = 0.0;
  const double best_budget = zeta * uplink_sinr(link, g, still, interference, noise);
  if (best_budget < min_budget * (1.0 - 1e-12)) {
    throw Error(Errc::infeasible, "static SINR already below the minimum budget");
  }
  const double slope = std::cos(k.motion_angle) * k.fading_coefficient;
  if (slope <= 0.0) {
    bound.sinr = std::numeric_limits<double>::infinity();
  } else {
    bound.sinr = std::max(0.0, (best_budget / min_budget - 1.0) * k.speed_of_light / slope);
  }
  return bound;
}

double max_feasible_velocity(const Geometry& g, const UserLink& link,
                             const SatelliteKinematics& k, const NoiseModel& noise,
                             double min_slot_s, double min_budget, double zeta,
                             double interference) {
  return velocity_bounds(g, link, k, noise, min_slot_s, min_budget, zeta, interference).value();
}

}  // namespace leomarket::channel
