#pragma once

#include <span>
#include <vector>

#include "modvar/aperture.hpp"
#include "modvar/quadrature.hpp"

// Standard deviations of Q_T, P_mod and the setup-refined P_mod(m),
// uncertainty products, sweeps over the slit count and asymptotic fits.
// Every quantity is available through at least two independent routes.

namespace modvar {

enum class MomentMethod { ClosedForm, SingleFringeQuadrature, BruteForceQuadrature };

struct MomentReport {
    double value;
    MomentMethod method;
    double abs_error_estimate;  // 0 for closed forms
};

const char* to_string(MomentMethod m);

/// Delta(Q_T, psi_m) = (T/2) sqrt((m^2-1)/3).
MomentReport sdev_qt(const SlitConfig& config);

/// Delta(P_mod, psi_m) from the single-fringe integral
/// (16/(T^2 m pi)) * int_{-pi/2}^{pi/2} kappa^2 f_m(kappa)^2 dkappa.
/// Independent of the slit width by construction.
MomentReport sdev_pmod_single_fringe(const SlitConfig& config,
                                     double abs_tol = -1.0 /* default_tolerance() */);

/// Full-line oracle: integrates P_mod(k)^2 |psi_hat(k)|^2 period by
/// period out to a truncation point chosen from tail_tol (a bound on
/// the Delta^2 truncation error), then adds the analytic period-mean
/// tail of the sinc^2 envelope with a certified O(1/k0^2) remainder.
/// Errors out if the tail target needs more than 1e6 periods.
MomentReport sdev_pmod_bruteforce(const SlitConfig& config, double tail_tol = 1e-10,
                                  bool parallel = true);

/// Delta(P_mod(m), psi_m) = (2/(mT)) sqrt((pi^2-6)/3), closed form.
MomentReport sdev_pmod_refined(const SlitConfig& config);

/// Quadrature cross-check of the refined moment for general even m:
/// (16/(m pi T^2)) * int_{-pi/2}^{pi/2} p_mod(kappa, 2pi/m)^2 f_m^2 dkappa,
/// split at the sawtooth branch boundaries.
MomentReport sdev_pmod_refined_quadrature(const SlitConfig& config,
                                          double abs_tol = -1.0);

/// Momentum-space norm int |psi_hat|^2 dk by the same periodized
/// scheme as the brute-force moment (Parseval check).
QuadResult momentum_norm_squared(const SlitConfig& config, double tail_tol = 1e-10);

/// sdev_qt * sdev_pmod (quadrature) or sdev_qt * sdev_pmod_refined
/// (closed form) when refined.
double uncertainty_product(const SlitConfig& config, bool refined);

struct SweepRow {
    int m;
    double sdev_qt;
    double sdev_pmod;
    double sdev_pmod_refined;
    double product;
    double product_refined;
};

/// One row per m. Rows are independent; computed in parallel when
/// enabled, merged in m-order so the output is deterministic.
std::vector<SweepRow> sweep(double T, double a, const std::vector<int>& m_list,
                            bool parallel = true);

struct PowerLawFit {
    double prefactor;  // c in c * m^exponent
    double exponent;
};

/// Least-squares fit of log(y) vs log(x). Throws on fewer than 5
/// points or degenerate abscissae.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Fit of the sdev_pmod column of a sweep.
PowerLawFit fit_asymptote(const std::vector<SweepRow>& rows);

}  // namespace modvar
