#pragma once

namespace pem {

inline constexpr double kC0 = 299792458.0;          // m/s
inline constexpr double kMu0 = 1.25663706212e-6;    // H/m
inline constexpr double kEps0 = 8.8541878128e-12;   // F/m
inline constexpr double kEta0 = 376.730313668;      // ohm
inline constexpr double kPi = 3.14159265358979323846;

// Conductivity model reference frequency (band centre); sigma = w*eps0*eps_r*tand.
inline constexpr double kLossRefFreqHz = 4.5e9;

}  // namespace pem
