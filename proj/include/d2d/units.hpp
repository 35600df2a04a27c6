#pragma once

#include <cmath>

// Unit conversions used at the configuration boundary. All internal
// computation is in SI units (watts, meters, hertz, bits, joules); dBm, MHz,
// Mbytes and mAh are accepted only when reading configuration.

namespace d2d::units {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double mhz_to_hz(double mhz) { return mhz * 1e6; }

inline double hz_to_mhz(double hz) { return hz * 1e-6; }

// Decimal megabytes, 8e6 bits each.
inline double mbytes_to_bits(double mbytes) { return mbytes * 8e6; }

inline double bits_to_mbytes(double bits) { return bits / 8e6; }

inline double mw_to_watts(double mw) { return mw * 1e-3; }

inline double watts_to_mw(double watts) { return watts * 1e3; }

}  // namespace d2d::units
