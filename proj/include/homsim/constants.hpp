#pragma once

namespace homsim {

// CODATA exact value, m/s.
inline constexpr double speed_of_light = 299792458.0;

inline constexpr double pi = 3.141592653589793238462643383279;

// Internally everything is SI (meters, seconds, rad/s). The CLI and file
// formats report delays in micrometers and femtoseconds.
inline constexpr double um_to_m(double x) { return x * 1e-6; }
inline constexpr double m_to_um(double x) { return x * 1e6; }
inline constexpr double m_to_fs(double x) { return x / speed_of_light * 1e15; }

}  // namespace homsim
