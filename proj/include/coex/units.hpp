#pragma once

#include <cmath>

namespace coex::units {

inline constexpr double pi = 3.14159265358979323846;

// dBm <-> watt
inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }

// dB <-> linear power ratio
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline constexpr double per_km2_to_per_m2(double v) { return v * 1e-6; }
inline constexpr double per_m2_to_per_km2(double v) { return v * 1e6; }
inline constexpr double mhz_to_hz(double v) { return v * 1e6; }
inline constexpr double mbps_to_bps(double v) { return v * 1e6; }
inline constexpr double bps_to_mbps(double v) { return v * 1e-6; }
inline constexpr double km_to_m(double v) { return v * 1e3; }

// normalized sinc, sin(pi x)/(pi x)
inline double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = pi * x;
    return std::sin(px) / px;
}

}  // namespace coex::units
