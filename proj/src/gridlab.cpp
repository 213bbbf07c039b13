#include "modvar/gridlab.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "modvar/modular.hpp"

namespace modvar {

namespace {

using cd = std::complex<double>;

// Fourth-order first derivative of y over [first, last] (inclusive),
// central where possible, 5-point one-sided within two samples of the
// segment ends. Stencils never reach outside the segment.
void derivative_segment(const std::vector<cd>& y, std::vector<cd>& dy,
                        int first, int last, double dk) {
    const int n = last - first + 1;
    if (n < 5) throw std::invalid_argument("derivative: segment shorter than the stencil");
    for (int i = first; i <= last; ++i) {
        const int off = i - first;
        if (off >= 2 && off <= n - 3) {
            dy[i] = (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * dk);
        } else if (off < 2) {
            dy[i] = (-25.0 * y[i] + 48.0 * y[i + 1] - 36.0 * y[i + 2] + 16.0 * y[i + 3] -
                     3.0 * y[i + 4]) /
                    (12.0 * dk);
        } else {
            dy[i] = (25.0 * y[i] - 48.0 * y[i - 1] + 36.0 * y[i - 2] - 16.0 * y[i - 3] +
                     3.0 * y[i - 4]) /
                    (12.0 * dk);
        }
    }
}

// In-place iterative radix-2 FFT; sign = -1 forward, +1 inverse
// (inverse includes the 1/n factor).
void fft(std::vector<cd>& x, int sign) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cd w_len(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = x[i + k];
                const cd v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= w_len;
            }
        }
    }
    if (sign > 0)
        for (auto& v : x) v /= static_cast<double>(n);
}

}  // namespace

double GridState::discrete_norm() const {
    double sum = 0.0;
    for (const auto& v : samples) sum += std::norm(v);
    return std::sqrt(sum * dk);
}

GridState sample_momentum(const MomentumEvaluator& psi, double k_min, double k_max,
                          int n_points) {
    if (n_points < 5) throw std::invalid_argument("sample_momentum: too few points");
    if (!(k_min < k_max)) throw std::invalid_argument("sample_momentum: empty range");
    const double lobe = 2.0 * M_PI / psi.width();
    if (k_max - k_min < 20.0 * lobe)
        throw std::invalid_argument("sample_momentum: range must cover >= 20 envelope lobes");
    const double dk = (k_max - k_min) / (n_points - 1);
    if (dk > psi.fringe_period() / 64.0)
        throw std::invalid_argument("sample_momentum: grid spacing must be <= K/64");

    GridState state;
    state.k_min = k_min;
    state.k_max = k_max;
    state.n_points = n_points;
    state.dk = dk;
    state.samples.resize(n_points);
    for (int i = 0; i < n_points; ++i) state.samples[i] = psi(state.k_at(i));
    return state;
}

GridState apply_q(const GridState& state) {
    if (state.n_points < 5) throw std::invalid_argument("apply_q: needs at least 5 points");
    GridState out = state;
    std::vector<cd> dy(state.n_points);
    derivative_segment(state.samples, dy, 0, state.n_points - 1, state.dk);
    const cd imag_unit(0.0, 1.0);
    for (int i = 0; i < state.n_points; ++i) out.samples[i] = imag_unit * dy[i];
    return out;
}

ResidualReport canonical_residual(const GridState& state, double K) {
    const int n = state.n_points;
    const double dk = state.dk;
    const double ratio = K / dk;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw std::invalid_argument("canonical_residual: K/dk must be an integer");

    // Node lattice (j+1/2)K must sit on grid samples.
    std::vector<int> node_indices;
    std::vector<double> node_ks;
    const long j_lo = static_cast<long>(std::ceil(state.k_min / K - 0.5));
    const long j_hi = static_cast<long>(std::floor(state.k_max / K - 0.5));
    for (long j = j_lo; j <= j_hi; ++j) {
        const double kn = (j + 0.5) * K;
        const double pos = (kn - state.k_min) / dk;
        const double idx = std::round(pos);
        if (std::abs(pos - idx) > 1e-6)
            throw std::invalid_argument(
                "canonical_residual: node lattice not aligned with the grid");
        if (idx >= 0 && idx < n) {
            node_indices.push_back(static_cast<int>(idx));
            node_ks.push_back(kn);
        }
    }

    std::vector<cd> g(n), dg(n), dpsi(n);
    std::vector<double> pm(n);
    for (int i = 0; i < n; ++i) {
        pm[i] = p_mod(state.k_at(i), K);
        g[i] = pm[i] * state.samples[i];
    }

    // Differentiate g branch by branch; each node sample is the last
    // point of its branch (upper-edge convention). Branch stubs shorter
    // than the stencil can only occur inside the excluded edge band.
    auto diff_branch = [&](int lo, int hi) {
        if (hi - lo + 1 >= 5)
            derivative_segment(g, dg, lo, hi, dk);
        else
            for (int i = lo; i <= hi; ++i) dg[i] = 0.0;
    };
    int first = 0;
    for (int node : node_indices) {
        diff_branch(first, node);
        first = node + 1;
    }
    diff_branch(first, n - 1);
    derivative_segment(state.samples, dpsi, 0, n - 1, dk);

    const cd imag_unit(0.0, 1.0);
    std::vector<cd> r(n);
    for (int i = 0; i < n; ++i)
        r[i] = imag_unit * dg[i] - pm[i] * (imag_unit * dpsi[i]) - imag_unit * state.samples[i];
    // Distributional part of d/dk (P_mod psi): jump -K psi at each node.
    for (std::size_t t = 0; t < node_indices.size(); ++t)
        r[node_indices[t]] += imag_unit * (-K * state.samples[node_indices[t]]) / dk;

    ResidualReport report;
    report.comb_locations = node_ks;
    report.residual_profile.resize(n);
    for (int i = 0; i < n; ++i) report.residual_profile[i] = std::abs(r[i]);

    const int edge = 4;
    double r_sq = 0.0, psi_sq = 0.0;
    for (int i = edge; i < n - edge; ++i) {
        r_sq += std::norm(r[i]);
        psi_sq += std::norm(state.samples[i]);
    }
    report.l2_residual = std::sqrt(r_sq / psi_sq);

    double near_sq = 0.0;
    for (int node : node_indices) {
        const int lo = std::max(node - 2, edge);
        const int hi = std::min(node + 2, n - edge - 1);
        for (int i = lo; i <= hi; ++i) near_sq += std::norm(r[i]);
    }
    report.comb_alignment_score = r_sq > 0.0 ? near_sq / r_sq : 0.0;
    return report;
}

double commuting_residual(const SlitConfig& config, int n_cells, int n_points,
                          bool use_full_q) {
    config.validate();
    if (n_cells < 1) throw std::invalid_argument("commuting_residual: n_cells must be >= 1");
    if (n_points < 2 || (n_points & (n_points - 1)) != 0)
        throw std::invalid_argument("commuting_residual: n_points must be a power of two");
    if (n_points % n_cells != 0)
        throw std::invalid_argument("commuting_residual: n_points must be a multiple of n_cells");

    const double T = config.separation_T;
    const double L = n_cells * T;
    const double dx = L / n_points;
    const int m = config.slit_count_m;
    if (L < (m - 1) * T + config.slit_width_a + 2.0 * T)
        throw std::invalid_argument("commuting_residual: grid does not contain the aperture");

    // Sample psi_m from the rectangle representation.
    PositionState position = build_position_state(config);
    std::vector<cd> psi(n_points, 0.0);
    std::vector<double> x(n_points);
    for (int i = 0; i < n_points; ++i) {
        x[i] = (i - n_points / 2) * dx;
        for (const auto& rect : position.rectangles)
            if (x[i] >= rect.center - rect.width / 2.0 && x[i] <= rect.center + rect.width / 2.0)
                psi[i] = rect.amplitude;
    }
    double norm_sq = 0.0;
    for (const auto& v : psi) norm_sq += std::norm(v);
    const double psi_norm = std::sqrt(norm_sq);

    const double K = config.fringe_period();
    std::vector<double> pm(n_points);
    for (int i = 0; i < n_points; ++i) {
        const long f = i < n_points / 2 ? i : i - n_points;
        pm[i] = p_mod(2.0 * M_PI * f / L, K);
    }

    auto apply_pmod = [&](std::vector<cd> v) {
        fft(v, -1);
        for (int i = 0; i < n_points; ++i) v[i] *= pm[i];
        fft(v, +1);
        return v;
    };
    auto apply_position = [&](std::vector<cd> v) {
        for (int i = 0; i < n_points; ++i)
            v[i] *= use_full_q ? x[i] : q_mod(x[i], T);
        return v;
    };

    const std::vector<cd> order_a = apply_pmod(apply_position(psi));
    const std::vector<cd> order_b = apply_position(apply_pmod(psi));
    double diff_sq = 0.0;
    for (int i = 0; i < n_points; ++i) diff_sq += std::norm(order_a[i] - order_b[i]);
    return std::sqrt(diff_sq) / psi_norm;
}

}  // namespace modvar
