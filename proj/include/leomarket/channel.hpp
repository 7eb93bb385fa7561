// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

namespace leomarket::channel {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s
inline constexpr double kEarthRadius = 6.371e6;   // m
inline constexpr double kCosineTolerance = 1e-9;
inline constexpr double kMinDenominator = 1e-12;

/// Distances describing one user relative to its serving satellite and cell center.
///
/// `slant_range` is the straight-line satellite-to-user distance; it serves as
/// both the side of the deviation-angle triangle and the free-space path length.
struct Geometry {
  double sat_center_distance = 0.0;  // satellite -> cell center (m)
  double slant_range = 0.0;          // satellite -> user (m)
  double earth_radius = kEarthRadius;
  double surface_offset = 0.0;       // great-circle distance cell center -> user (m)
  double altitude = 0.0;             // m
  double beam_radius = 0.0;          // footprint radius (m)

  /// Satellite directly above the cell center; user `surface_offset` metres away
  /// along the surface.
  static Geometry overhead(double earth_radius, double altitude, double beam_radius,
                           double surface_offset);
};

struct UserLink {
  double tx_power = 0.1;        // W
  double elevation = 0.0;       // rad, kept for angle-dependent gain models
  double user_gain = 1.0;       // linear
  double deviation = 0.0;       // rad from the cell central line
  double sat_gain = 100.0;      // linear
  double wavelength = kSpeedOfLight / 2e9;  // m
  double fading = 1.0;          // linear, >= 1
  double active_factor = 1.0;   // [0, 1]
  double polarization_isolation = 1.0;  // [0, 1]
};

struct SatelliteKinematics {
  double velocity = 0.0;            // m/s
  double motion_angle = 0.0;        // rad between motion and propagation
  double fading_coefficient = 1e5;  // dimensionless
  double speed_of_light = kSpeedOfLight;
};

struct NoiseModel {
  double power = 0.0;  // W

  static NoiseModel from_density(double density_dbm_per_mhz, double bandwidth_hz);
};

struct Interferer {
  UserLink link;
  Geometry geometry;  // slant_range is the interferer -> serving satellite distance
};

/// Angle at the satellite between the cell central line and the user direction.
/// Throws ZeroDistance or DegenerateGeometry.
double deviation_angle(const Geometry& g);

/// Doppler loss factor; (0, 1] whenever cos(motion_angle) >= 0.
/// Throws SingularDenominator when the denominator collapses.
double doppler_loss(const SatelliteKinematics& k);

double received_power(const UserLink& link, const Geometry& g, double doppler);

double intercell_interference(std::span<const Interferer> others, double doppler);

double uplink_sinr(const UserLink& link, const Geometry& g, const SatelliteKinematics& k,
                   double interference, const NoiseModel& noise);

struct VelocityBound {
  double coverage = 0.0;  // from the coverage-time constraint
  double sinr = 0.0;      // from the minimum-budget constraint (may be +inf)
  double value() const { return coverage < sinr ? coverage : sinr; }
};

/// Largest velocity satisfying both the coverage-time and minimum-budget
/// constraints. Throws Infeasible when even a static satellite misses the budget.
VelocityBound velocity_bounds(const Geometry& g, const UserLink& link,
                              const SatelliteKinematics& k, const NoiseModel& noise,
                              double min_slot_s, double min_budget, double zeta,
                              double interference = 0.0);

double max_feasible_velocity(const Geometry& g, const UserLink& link,
                             const SatelliteKinematics& k, const NoiseModel& noise,
                             double min_slot_s, double min_budget, double zeta,
                             double interference = 0.0);

}  // namespace leomarket::channel
