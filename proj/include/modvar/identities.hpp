#pragma once

#include <string>
#include <vector>

#include "modvar/quadrature.hpp"

// Standalone numerical verification of the trigonometric and Fourier
// identities behind the moment reductions.

namespace modvar {

struct IdentityReport {
    std::string name;
    double max_abs_deviation;
    long samples;
    bool passed;
};

/// 2^{d-1} prod_{j=0}^{d-1} cos(2^j kappa) == sum_{j=1}^{2^{d-1}} cos((2j-1) kappa)
/// on a uniform kappa grid over [-pi, pi]. Tolerance 1e-12.
IdentityReport check_product_sum(int d, int kappa_samples);

struct DirichletTriple {
    double lhs;           // (sum cos((2j-1)kappa))^2
    double rhs_quotient;  // (sin(m kappa)/sin(kappa))^2 / 4
    double rhs_cos;       // (1 - cos(2 m kappa)) / (4 (1 - cos(2 kappa)))
    bool quotient_valid;  // false near the poles (|sin kappa| < 1e-6)
};

DirichletTriple dirichlet_square(int m, double kappa);

/// Partial sum over |j| <= J of sinc^2((a/T)(u + j pi)); tends to T/a.
double sinc_comb_partial(double a, double T, double u, long J);

struct ConvolutionLevels {
    std::vector<double> offsets;  // pair offsets 2^j * T/2, j = 0..d-1
    std::vector<double> centers;  // resulting 2^d slit centers, sorted
    IdentityReport report;        // product vs normalized center-sum transform
};

/// Builds the aperture by iterated convolution of delta pairs and checks
/// both the resulting center set and the cosine-product transform.
ConvolutionLevels convolution_construction(int d, double T, int k_samples);

struct FringeIntegrals {
    QuadResult kappa_sq_over_one_minus_cos;  // target: pi ln 2
    QuadResult kappa_sq_cos_sq;              // target: (pi/24)(pi^2 - 6)
};

/// Both reference fringe integrals over [-pi/2, pi/2]. The removable
/// singularity of kappa^2/(1 - cos 2 kappa) at 0 is patched by series.
FringeIntegrals fringe_integral_exact(double abs_tol = 1e-12);

/// int_{-pi/2}^{pi/2} kappa^2/(1 - cos 2 kappa) * cos(2 m kappa) dkappa;
/// tends to 0 as m grows (Riemann-Lebesgue).
double riemann_lebesgue_term(int m, double abs_tol = 1e-10);

/// Fourier coefficient of the product form against cos((2j-1) kappa)
/// over [-pi, pi]; 1 for j <= 2^{d-1}, else 0.
double product_form_fourier_coefficient(int d, int j, double abs_tol = 1e-11);

}  // namespace modvar
