#pragma once

namespace linepin {

// Single floating-point tolerance for all R^d work, settable by the CLI
// (--tol). Planar pattern decisions never use it; they go through the
// exact predicates in exact.hpp.
inline double g_tol = 1e-9;

inline double tol() { return g_tol; }
inline void set_tol(double t) { g_tol = t; }

// A squared norm this close to 1 is treated as already unit; keeping the
// input bits makes scale-by-power-of-two round trips exact.
inline constexpr double kUnitSlack = 1e-12;

} // namespace linepin
