#pragma once

namespace entcorr {

// CODATA-consistent conversion used throughout: lengths are stored in bohr.
inline constexpr double bohr_per_angstrom = 1.8897259886;

inline double angstrom_to_bohr(double r) { return r * bohr_per_angstrom; }
inline double bohr_to_angstrom(double r) { return r / bohr_per_angstrom; }

}  // namespace entcorr
