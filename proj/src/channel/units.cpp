// SPDX-License-Identifier: Apache-2.0
#include "leomarket/units.hpp"

#include <cmath>

namespace leomarket::units {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

double dbm_to_watts(double dbm) { return db_to_linear(dbm) * 1e-3; }

double noise_power_watts(double density_dbm_per_mhz, double bandwidth_hz) {
  return dbm_to_watts(density_dbm_per_mhz) * (bandwidth_hz / 1e6);
}

}  // namespace leomarket::units
