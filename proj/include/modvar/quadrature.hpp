#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace modvar {

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

/// Thrown when the adaptive subdivision cannot meet the requested
/// tolerance; carries the best estimate obtained so far.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& msg, QuadResult best)
        : std::runtime_error(msg), best_estimate(best) {}
    QuadResult best_estimate;
};

/// Default absolute tolerance for fringe integrals. Reads the
/// MODVAR_TOL environment variable once; falls back to 1e-12.
double default_tolerance();

/// Adaptive Gauss-Kronrod (G7/K15) bisection on [a, b].
/// f must be finite on [a, b]; removable singularities are the
/// caller's problem. The per-panel error estimate |K15 - G7| is
/// deliberately conservative.
QuadResult integrate(const std::function<double(double)>& f,
                     double a, double b,
                     double abs_tol = 1e-12, int max_depth = 48);

}  // namespace modvar
