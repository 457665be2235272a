#pragma once

#include <array>
#include <cstddef>

namespace trilat {

/// Link-budget parameters for the 2.4 GHz band. Range follows from output
/// power via a log-distance path loss model with fade margin and receiver
/// sensitivity folded in.
struct RadioParams {
  double fade_margin_db = 8.0;
  double receiver_sensitivity_dbm = -98.0;
  double frequency_mhz = 2405.0;
  double path_loss_exponent = 2.5;
};

/// Maximum reliable communication range (meters) at transmit power
/// `power_dbm`.
double range_from_dbm(double power_dbm, const RadioParams& params = {});

/// Inverse of range_from_dbm: transmit power (dBm) needed to reach exactly
/// `range_m` meters.
double dbm_from_range(double range_m, const RadioParams& params = {});

/// dBm -> milliwatts.
double mw_from_dbm(double dbm);

/// Milliwatts consumed when transmitting far enough to cover `range_m`.
double mw_from_range(double range_m, const RadioParams& params = {});

/// The three discrete transmit settings offered by the radio.
enum class PowerLevel : std::size_t { Min = 0, Mid = 1, Max = 2 };

inline constexpr std::size_t kPowerLevelCount = 3;
inline constexpr std::array<double, kPowerLevelCount> kPowerLevelDbm = {-3.0, 1.0,
                                                                        5.0};

double level_dbm(PowerLevel level);
double level_range_m(PowerLevel level, const RadioParams& params = {});
double level_mw(PowerLevel level);

}  // namespace trilat
