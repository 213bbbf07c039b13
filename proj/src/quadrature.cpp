#include "modvar/quadrature.hpp"

#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace modvar {

double default_tolerance() {
    static const double tol = [] {
        if (const char* env = std::getenv("MODVAR_TOL")) {
            char* end = nullptr;
            double v = std::strtod(env, &end);
            if (end != env && v > 0.0) return v;
        }
        return 1e-12;
    }();
    return tol;
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kron_nodes[8] = {
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
constexpr double kron_weights[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
// Gauss weights attach to the even-indexed Kronrod nodes.
constexpr double gauss_weights[4] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct Panel {
    double a, b;
    double value;
    double error;
    double resabs;  // K15 applied to |f|, the roundoff scale of the panel
    int depth;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b,
                     int depth, long& evaluations) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kron_nodes[i];
        fv[7 - i] = f(c - dx);
        fv[7 + i] = f(c + dx);
    }
    evaluations += 15;
    double k15 = kron_weights[0] * fv[7];
    double g7 = gauss_weights[0] * fv[7];
    double resabs = kron_weights[0] * std::abs(fv[7]);
    for (int i = 1; i < 8; ++i) {
        k15 += kron_weights[i] * (fv[7 - i] + fv[7 + i]);
        resabs += kron_weights[i] * (std::abs(fv[7 - i]) + std::abs(fv[7 + i]));
        if (i % 2 == 0) g7 += gauss_weights[i / 2] * (fv[7 - i] + fv[7 + i]);
    }
    k15 *= h;
    g7 *= h;
    resabs *= h;
    return Panel{a, b, k15, std::abs(k15 - g7), resabs, depth};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth) {
    if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate: requires abs_tol > 0");

    QuadResult result;
    std::vector<Panel> work;
    work.push_back(evaluate_panel(f, a, b, 0, result.evaluations));

    const double length = b - a;
    bool depth_exhausted = false;

    while (!work.empty()) {
        Panel p = work.back();
        work.pop_back();
        const double local_tol = abs_tol * (p.b - p.a) / length;
        // Splitting below the roundoff floor of the panel cannot reduce
        // the error estimate, so give up on the panel there as well.
        const double floor = 100.0 * DBL_EPSILON * p.resabs;
        if (p.error <= local_tol || p.depth >= max_depth || p.error <= floor) {
            if (p.error > local_tol) depth_exhausted = true;
            result.value += p.value;
            result.abs_error_estimate += p.error;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        work.push_back(evaluate_panel(f, p.a, mid, p.depth + 1, result.evaluations));
        work.push_back(evaluate_panel(f, mid, p.b, p.depth + 1, result.evaluations));
    }

    if (depth_exhausted && result.abs_error_estimate > abs_tol)
        throw quadrature_error("integrate: tolerance not met at max depth", result);
    return result;
}

}  // namespace modvar
