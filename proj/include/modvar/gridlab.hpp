#pragma once

#include <complex>
#include <vector>

#include "modvar/aperture.hpp"

// Discretized commutator experiments: the canonical relation
// [Q, P_mod] psi = i psi on admissible states, the Dirac-comb
// signature on inadmissible ones, and the commuting pair
// [Q_mod, P_mod] = 0 on a periodic grid.

namespace modvar {

struct GridState {
    double k_min;
    double k_max;
    int n_points;
    double dk;
    std::vector<std::complex<double>> samples;

    double k_at(int i) const { return k_min + i * dk; }
    double discrete_norm() const;  // sqrt(sum |psi|^2 dk)
};

/// Samples the analytic momentum wavefunction on a uniform grid.
/// Requires the range to cover at least 20 envelope lobes (2*pi/a each)
/// and dk <= K/64; throws std::invalid_argument otherwise.
GridState sample_momentum(const MomentumEvaluator& psi,
                          double k_min, double k_max, int n_points);

/// Q = i d/dk: fourth-order central differences, one-sided stencils at
/// the array edges. The 4-sample edge band is untrustworthy and is
/// excluded from every residual norm downstream.
GridState apply_q(const GridState& state);

struct ResidualReport {
    double l2_residual;                  // interior L2 of r, relative to |psi|
    std::vector<double> residual_profile;  // |r(k)| per sample
    std::vector<double> comb_locations;  // (j+1/2)K within range
    double comb_alignment_score;         // residual mass within +-2dk of the comb
};

/// Residual of [Q, P_mod] psi - i psi. P_mod psi is differentiated
/// branch by branch (stencils never straddle a sawtooth discontinuity)
/// and the distributional jump -K psi(k_node)/dk is added at the node
/// samples, so an admissible state leaves only stencil error while a
/// non-vanishing node value shows up as a comb line. Requires K/dk
/// integer and the node lattice on grid points; throws on an
/// incommensurate grid.
ResidualReport canonical_residual(const GridState& state, double K);

/// [Q_mod, P_mod] on a periodic position grid of length L = n_cells*T:
/// multiply-by-q_mod and transform/multiply-by-p_mod/inverse in both
/// orders, return the relative L2 difference. n_points must be a power
/// of two and a multiple of n_cells. use_full_q = true substitutes the
/// unbounded Q for Q_mod (contrast case; does not commute).
double commuting_residual(const SlitConfig& config, int n_cells, int n_points,
                          bool use_full_q = false);

}  // namespace modvar
