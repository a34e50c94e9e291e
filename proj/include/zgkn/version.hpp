#pragma once

namespace zgkn {

inline constexpr const char* tool_version = "1.0.0";
inline constexpr const char* schema_version = "1";

// Sommerfeld fine-structure constant used for the Z <-> gamma conversion and
// for the Gaussian natural-unit elementary charge e = sqrt(alpha).
inline constexpr double fine_structure = 1.0 / 137.036;

// Units contract stamped into every output: energies in units of m c^2,
// lengths in units of hbar/(m c), charges Gaussian with e = sqrt(alpha).
inline constexpr const char* units_note =
    "energy=mc^2 length=hbar/(mc) charge=gaussian(e=sqrt(alpha))";

} // namespace zgkn
