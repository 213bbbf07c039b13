#pragma once

#include <cmath>
#include <algorithm>
#include <stdexcept>

// Pointwise eigenvalue functions of the modular decomposition:
// sawtooth momentum p_mod, remainder position q_mod, and the lattice
// parts q_T and p_K. All pure and stateless.

namespace modvar {

/// Sawtooth reduction of k into (-K/2, K/2]. The branch boundaries
/// (j+1/2)K belong to the lower branch, so the boundary value is +K/2.
/// Arguments within 1e-9 (relative) of a boundary are snapped onto it,
/// which keeps grid samples that land on the discontinuity lattice on
/// the documented branch.
inline double p_mod(double k, double K) {
    const double h = k / K + 0.5;
    const double n = std::round(h);
    if (std::abs(h - n) <= 1e-9 * std::max(1.0, std::abs(h)))
        return K / 2.0;
    return k - std::floor(h) * K;
}

/// Nonnegative remainder of x mod T, in [0, T).
inline double q_mod(double x, double T) {
    double r = x - T * std::floor(x / T);
    if (r < 0.0) r += T;
    if (r >= T) r -= T;
    return r;
}

/// Lattice part of position: x - q_mod(x, T) = T*floor(x/T).
/// Computed as the difference so that q_mod + q_T == x exactly.
inline double q_T(double x, double T) { return x - q_mod(x, T); }

/// Lattice part of momentum: k - p_mod(k, K).
inline double p_K(double k, double K) { return k - p_mod(k, K); }

/// Node-adapted period K' = 4*pi/(m*T); equals K = 2*pi/T at m = 2.
inline double refined_period(int m, double T) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("refined_period: slit count must be even and >= 2");
    return 4.0 * M_PI / (m * T);
}

/// p_mod with the period adapted to the m-slit node lattice.
inline double p_mod_refined(double k, int m, double T) {
    return p_mod(k, refined_period(m, T));
}

}  // namespace modvar
