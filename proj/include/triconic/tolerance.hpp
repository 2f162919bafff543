#pragma once

namespace triconic {

// Process-wide default relative tolerance. Read-only during computations;
// set once at startup (CLI --tol or TRICONIC_TOL).
double default_tol();
void set_default_tol(double tol);
// Applies TRICONIC_TOL if present and parseable. Returns true if applied.
bool load_tol_from_env();

inline constexpr double kDegenerateDet = 1e-10;
inline constexpr double kParabolaDisc = 1e-10;
inline constexpr double kShapeTol = 1e-8;
inline constexpr double kRankTol = 1e-8;

}  // namespace triconic
