#include "trilat/radio_model.hpp"

#include <cmath>

namespace trilat {

namespace {
constexpr double kFixedLoss = 32.44;  // free-space constant for MHz/km units
}

double range_from_dbm(double power_dbm, const RadioParams& params) {
  const double n = params.path_loss_exponent;
  const double x = (power_dbm - params.fade_margin_db -
                    params.receiver_sensitivity_dbm + 30.0 * n - kFixedLoss -
                    10.0 * n * std::log10(params.frequency_mhz)) /
                   (10.0 * n);
  return std::pow(10.0, x);
}

double dbm_from_range(double range_m, const RadioParams& params) {
  const double n = params.path_loss_exponent;
  return 10.0 * n * std::log10(range_m) +
         10.0 * n * std::log10(params.frequency_mhz) - 30.0 * n +
         params.fade_margin_db + params.receiver_sensitivity_dbm + kFixedLoss;
}

double mw_from_dbm(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_from_range(double range_m, const RadioParams& params) {
  return mw_from_dbm(dbm_from_range(range_m, params));
}

double level_dbm(PowerLevel level) {
  return kPowerLevelDbm[static_cast<std::size_t>(level)];
}

double level_range_m(PowerLevel level, const RadioParams& params) {
  return range_from_dbm(level_dbm(level), params);
}

double level_mw(PowerLevel level) { return mw_from_dbm(level_dbm(level)); }

}  // namespace trilat
