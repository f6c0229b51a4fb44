#pragma once

namespace pit {

inline constexpr double c0   = 2.99792458e8;        // vacuum speed of light (m/s)
inline constexpr double eps0 = 8.8541878128e-12;    // vacuum permittivity (F/m)
inline constexpr double mu0  = 1.25663706212e-6;    // vacuum permeability (H/m)
inline constexpr double eta0 = 376.730313668;       // vacuum impedance (ohm)
inline constexpr double pi   = 3.14159265358979323846;

} // namespace pit
