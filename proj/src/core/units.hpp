#pragma once

#include <cmath>

namespace rispeb {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Power-like quantities: dB(x) = 10 log10(x). Used for dBi gains, dBm
// powers (relative to 1 mW) and suppression ratios alike.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

}  // namespace rispeb
