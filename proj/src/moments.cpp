#include "modvar/moments.hpp"

#include <algorithm>
#include <cmath>

#include "modvar/modular.hpp"

namespace modvar {

const char* to_string(MomentMethod m) {
    switch (m) {
        case MomentMethod::ClosedForm: return "closed-form";
        case MomentMethod::SingleFringeQuadrature: return "single-fringe-quadrature";
        case MomentMethod::BruteForceQuadrature: return "brute-force-quadrature";
    }
    return "unknown";
}

MomentReport sdev_qt(const SlitConfig& config) {
    config.validate();
    const double m = config.slit_count_m;
    const double value = config.separation_T / 2.0 * std::sqrt((m * m - 1.0) / 3.0);
    return {value, MomentMethod::ClosedForm, 0.0};
}

MomentReport sdev_pmod_single_fringe(const SlitConfig& config, double abs_tol) {
    config.validate();
    if (abs_tol <= 0.0) abs_tol = default_tolerance();
    const int m = config.slit_count_m;
    const double T = config.separation_T;
    QuadResult fringe = integrate(
        [m](double kappa) {
            const double f = f_m_dirichlet(m, kappa);
            return kappa * kappa * f * f;
        },
        -M_PI / 2.0, M_PI / 2.0, abs_tol);
    const double prefactor = 16.0 / (T * T * m * M_PI);
    const double value = std::sqrt(prefactor * fringe.value);
    const double err = prefactor * fringe.abs_error_estimate / (2.0 * value);
    return {value, MomentMethod::SingleFringeQuadrature, err};
}

namespace {

// Integral of w(u) * |psi_hat|^2 over the full line, where w is either
// p_mod(k)^2 (per-period u^2) or 1. Direct period-by-period quadrature
// out to k0 = (J + 1/2)K, plus the analytic mean tail of the exact
// 1/k^2 envelope: for |k| > k0
//   |psi_hat(k)|^2 = (2a/(m pi)) * 4 sin^2(ak/2)/(a^2 k^2) * f_m(Tk/2)^2
// whose period-mean contributes gbar/k0 (per unit prefactor) with a
// remainder certified O(1/k0^2) via the bounded antiderivative of the
// mean-free part and the non-resonant cos(ak) oscillation.
struct PeriodizedIntegral {
    QuadResult result;
    long periods;
};

PeriodizedIntegral periodized_envelope_integral(const SlitConfig& config,
                                                bool weight_pmod_sq,
                                                double tail_tol, bool parallel) {
    config.validate();
    if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be positive");
    const int m = config.slit_count_m;
    const double a = config.slit_width_a;
    const double T = config.separation_T;
    const double K = config.fringe_period();

    const double wmax = weight_pmod_sq ? (K / 2.0) * (K / 2.0) : 1.0;
    const double gmax = wmax * (m / 2.0) * (m / 2.0);
    const double nu_min = std::min(a, T - a);
    // remainder(k0) <= bound / k0^2
    const double bound = (8.0 / (m * M_PI * a)) * (2.0 * K * gmax + 8.0 * gmax / nu_min);
    const double k0_needed = std::sqrt(bound / (tail_tol / 2.0));
    const long J = static_cast<long>(std::ceil(k0_needed / K - 0.5)) + 1;
    if (J > 1000000)
        throw quadrature_error("brute force: tail bound needs more than 1e6 periods", {});
    const double k0 = (J + 0.5) * K;

    const long n_periods = 2 * J + 1;
    const double per_period_tol =
        std::max((tail_tol / 2.0) / static_cast<double>(n_periods), 1e-18);

    auto period_integral = [&](long j) {
        const double kc = j * K;
        // T k / 2 = j pi + T u / 2 and f_m^2 is pi-periodic, so the
        // Dirichlet factor only ever sees the small local argument.
        // This keeps it fully accurate near its poles at large |k|.
        auto integrand = [&](double u) {
            const double k = kc + u;
            const double s = sinc(a * k / 2.0);
            const double f = f_m_dirichlet(m, T * u / 2.0);
            const double w = weight_pmod_sq ? u * u : 1.0;
            return w * (2.0 * a / (m * M_PI)) * s * s * f * f;
        };
        try {
            return integrate(integrand, -K / 2.0, K / 2.0, per_period_tol, 40);
        } catch (const quadrature_error& e) {
            return e.best_estimate;
        }
    };

    std::vector<QuadResult> pieces(n_periods);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
#endif
    for (long idx = 0; idx < n_periods; ++idx) pieces[idx] = period_integral(idx - J);

    QuadResult total;
    for (const auto& p : pieces) {
        total.value += p.value;
        total.abs_error_estimate += p.abs_error_estimate;
        total.evaluations += p.evaluations;
    }

    // Period mean of w(u) f_m(T(k)/2)^2, then the analytic 1/k^2 tail.
    // The mean only enters scaled by 1/k0, so a fixed tolerance is ample.
    QuadResult mean = [&] {
        auto integrand = [&](double u) {
            const double f = f_m_dirichlet(m, T * u / 2.0);
            const double w = weight_pmod_sq ? u * u : 1.0;
            return w * f * f;
        };
        try {
            return integrate(integrand, -K / 2.0, K / 2.0, 1e-13);
        } catch (const quadrature_error& e) {
            return e.best_estimate;
        }
    }();
    const double prefactor = 8.0 / (m * M_PI * a);
    total.value += prefactor * (mean.value / K) / k0;
    total.abs_error_estimate +=
        bound / (k0 * k0) + prefactor * (mean.abs_error_estimate / K) / k0;
    total.evaluations += mean.evaluations;

    if (total.abs_error_estimate > 10.0 * tail_tol)
        throw quadrature_error("brute force: accumulated error exceeds budget", total);
    return {total, n_periods};
}

}  // namespace

MomentReport sdev_pmod_bruteforce(const SlitConfig& config, double tail_tol,
                                  bool parallel) {
    PeriodizedIntegral pi = periodized_envelope_integral(config, true, tail_tol, parallel);
    const double value = std::sqrt(pi.result.value);
    return {value, MomentMethod::BruteForceQuadrature,
            pi.result.abs_error_estimate / (2.0 * value)};
}

QuadResult momentum_norm_squared(const SlitConfig& config, double tail_tol) {
    return periodized_envelope_integral(config, false, tail_tol, true).result;
}

MomentReport sdev_pmod_refined(const SlitConfig& config) {
    config.validate();
    const double value = 2.0 / (config.slit_count_m * config.separation_T) *
                         std::sqrt((M_PI * M_PI - 6.0) / 3.0);
    return {value, MomentMethod::ClosedForm, 0.0};
}

MomentReport sdev_pmod_refined_quadrature(const SlitConfig& config, double abs_tol) {
    config.validate();
    if (abs_tol <= 0.0) abs_tol = default_tolerance();
    const int m = config.slit_count_m;
    const double T = config.separation_T;
    const double period = 2.0 * M_PI / m;  // refined sawtooth period in kappa units

    // Split at the sawtooth branch boundaries (j+1/2)*period inside the fringe.
    std::vector<double> cuts{-M_PI / 2.0};
    long j = static_cast<long>(std::floor(-M_PI / 2.0 / period - 0.5));
    for (;; ++j) {
        const double c = (j + 0.5) * period;
        if (c >= M_PI / 2.0 - 1e-15) break;
        if (c > -M_PI / 2.0 + 1e-15) cuts.push_back(c);
    }
    cuts.push_back(M_PI / 2.0);

    QuadResult total;
    const double segment_tol = abs_tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadResult piece = integrate(
            [m, period](double kappa) {
                const double p = p_mod(kappa, period);
                const double f = f_m_dirichlet(m, kappa);
                return p * p * f * f;
            },
            cuts[i], cuts[i + 1], segment_tol);
        total.value += piece.value;
        total.abs_error_estimate += piece.abs_error_estimate;
        total.evaluations += piece.evaluations;
    }
    const double prefactor = 16.0 / (m * M_PI * T * T);
    const double value = std::sqrt(prefactor * total.value);
    return {value, MomentMethod::SingleFringeQuadrature,
            prefactor * total.abs_error_estimate / (2.0 * value)};
}

double uncertainty_product(const SlitConfig& config, bool refined) {
    const double qt = sdev_qt(config).value;
    const double pm = refined ? sdev_pmod_refined(config).value
                              : sdev_pmod_single_fringe(config).value;
    return qt * pm;
}

std::vector<SweepRow> sweep(double T, double a, const std::vector<int>& m_list,
                            bool parallel) {
    std::vector<SweepRow> rows(m_list.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        SlitConfig config{a, T, m_list[i]};
        SweepRow row;
        row.m = m_list[i];
        row.sdev_qt = sdev_qt(config).value;
        row.sdev_pmod = sdev_pmod_single_fringe(config).value;
        row.sdev_pmod_refined = sdev_pmod_refined(config).value;
        row.product = row.sdev_qt * row.sdev_pmod;
        row.product_refined = row.sdev_qt * row.sdev_pmod_refined;
        rows[i] = row;
    }
    return rows;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
    if (x.size() < 5) throw std::invalid_argument("fit: needs at least 5 points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit: points must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) <= 1e-12 * std::max(static_cast<double>(n) * sxx, 1.0))
        throw std::invalid_argument("fit: degenerate abscissae");
    const double exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - exponent * sx) / n;
    return {std::exp(intercept), exponent};
}

PowerLawFit fit_asymptote(const std::vector<SweepRow>& rows) {
    std::vector<double> x, y;
    x.reserve(rows.size());
    y.reserve(rows.size());
    for (const auto& r : rows) {
        x.push_back(static_cast<double>(r.m));
        y.push_back(r.sdev_pmod);
    }
    return fit_power_law(x, y);
}

}  // namespace modvar
