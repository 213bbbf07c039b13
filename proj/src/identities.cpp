#include "modvar/identities.hpp"

#include <algorithm>
#include <cmath>

#include "modvar/aperture.hpp"

namespace modvar {

IdentityReport check_product_sum(int d, int kappa_samples) {
    if (d < 1) throw std::invalid_argument("check_product_sum: d must be >= 1");
    if (kappa_samples < 2) throw std::invalid_argument("check_product_sum: too few samples");
    const int m = 1 << d;
    double max_dev = 0.0;
    for (int i = 0; i < kappa_samples; ++i) {
        const double kappa = -M_PI + 2.0 * M_PI * i / (kappa_samples - 1);
        double product = std::ldexp(1.0, d - 1);
        for (int j = 0; j < d; ++j) product *= std::cos(std::ldexp(kappa, j));
        max_dev = std::max(max_dev, std::abs(product - f_m(m, kappa)));
    }
    return {"product-sum d=" + std::to_string(d), max_dev, kappa_samples, max_dev <= 1e-12};
}

DirichletTriple dirichlet_square(int m, double kappa) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("dirichlet_square: m must be even");
    DirichletTriple t;
    const double f = f_m(m, kappa);
    t.lhs = f * f;
    const double s = std::sin(kappa);
    t.quotient_valid = std::abs(s) >= 1e-6;
    if (t.quotient_valid) {
        const double q = std::sin(m * kappa) / s;
        t.rhs_quotient = q * q / 4.0;
        t.rhs_cos = (1.0 - std::cos(2.0 * m * kappa)) / (4.0 * (1.0 - std::cos(2.0 * kappa)));
    } else {
        t.rhs_quotient = 0.0;
        t.rhs_cos = 0.0;
    }
    return t;
}

double sinc_comb_partial(double a, double T, double u, long J) {
    if (!(a > 0.0) || !(a < T)) throw std::invalid_argument("sinc_comb_partial: needs 0 < a < T");
    if (J < 1) throw std::invalid_argument("sinc_comb_partial: J must be >= 1");
    const double r = a / T;
    double sum = sinc(r * u) * sinc(r * u);
    for (long j = 1; j <= J; ++j) {
        const double sp = sinc(r * (u + j * M_PI));
        const double sm = sinc(r * (u - j * M_PI));
        sum += sp * sp + sm * sm;
    }
    return sum;
}

ConvolutionLevels convolution_construction(int d, double T, int k_samples) {
    if (d < 1) throw std::invalid_argument("convolution_construction: d must be >= 1");
    ConvolutionLevels out;
    for (int j = 0; j < d; ++j) out.offsets.push_back(std::ldexp(T / 2.0, j));

    // Convolving delta pairs adds every combination of +-offset.
    out.centers = {0.0};
    for (double offset : out.offsets) {
        std::vector<double> next;
        next.reserve(out.centers.size() * 2);
        for (double c : out.centers) {
            next.push_back(c - offset);
            next.push_back(c + offset);
        }
        out.centers = std::move(next);
    }
    std::sort(out.centers.begin(), out.centers.end());

    // The transform of the center train, normalized per pair, must equal
    // the cosine product on any k grid.
    const int m = 1 << d;
    double max_dev = 0.0;
    for (int i = 0; i < k_samples; ++i) {
        const double k = -4.0 * M_PI / T + 8.0 * M_PI / T * i / (k_samples - 1);
        double center_sum = 0.0;
        for (double c : out.centers) center_sum += std::cos(c * k);
        center_sum /= m;
        double product = 1.0;
        for (double offset : out.offsets) product *= std::cos(offset * k);
        max_dev = std::max(max_dev, std::abs(center_sum - product));
    }
    out.report = {"convolution d=" + std::to_string(d), max_dev, k_samples,
                  max_dev <= 1e-12};
    return out;
}

FringeIntegrals fringe_integral_exact(double abs_tol) {
    FringeIntegrals out;
    out.kappa_sq_over_one_minus_cos = integrate(
        [](double kappa) {
            if (std::abs(kappa) < 1e-3) {
                const double k2 = kappa * kappa;
                // kappa^2 / (1 - cos 2 kappa) = 1/2 + k2/6 + k2^2/60 + ...
                return 0.5 + k2 / 6.0 + k2 * k2 / 60.0;
            }
            return kappa * kappa / (1.0 - std::cos(2.0 * kappa));
        },
        -M_PI / 2.0, M_PI / 2.0, abs_tol);
    out.kappa_sq_cos_sq = integrate(
        [](double kappa) {
            const double c = std::cos(kappa);
            return kappa * kappa * c * c;
        },
        -M_PI / 2.0, M_PI / 2.0, abs_tol);
    return out;
}

double riemann_lebesgue_term(int m, double abs_tol) {
    return integrate(
               [m](double kappa) {
                   double base;
                   if (std::abs(kappa) < 1e-3) {
                       const double k2 = kappa * kappa;
                       base = 0.5 + k2 / 6.0 + k2 * k2 / 60.0;
                   } else {
                       base = kappa * kappa / (1.0 - std::cos(2.0 * kappa));
                   }
                   return base * std::cos(2.0 * m * kappa);
               },
               -M_PI / 2.0, M_PI / 2.0, abs_tol)
        .value;
}

double product_form_fourier_coefficient(int d, int j, double abs_tol) {
    if (d < 1 || j < 1) throw std::invalid_argument("fourier coefficient: d, j must be >= 1");
    return integrate(
               [d, j](double kappa) {
                   double product = std::ldexp(1.0, d - 1);
                   for (int i = 0; i < d; ++i) product *= std::cos(std::ldexp(kappa, i));
                   return product * std::cos((2 * j - 1) * kappa) / M_PI;
               },
               -M_PI, M_PI, abs_tol)
        .value;
}

}  // namespace modvar
