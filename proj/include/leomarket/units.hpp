// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace leomarket::units {

// Configs carry gains in dBi and noise densities in dBm/MHz; all math runs linear.
double db_to_linear(double db);
double linear_to_db(double ratio);
double dbm_to_watts(double dbm);

/// Noise power in W for a density given in dBm/MHz over `bandwidth_hz`.
double noise_power_watts(double density_dbm_per_mhz, double bandwidth_hz);

}  // namespace leomarket::units
