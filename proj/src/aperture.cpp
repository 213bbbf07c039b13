#include "modvar/aperture.hpp"

#include <cmath>

namespace modvar {

void SlitConfig::validate() const {
    if (slit_count_m < 2) throw std::invalid_argument("slit count must be >= 2");
    if (slit_count_m % 2 != 0) throw std::invalid_argument("slit count must be even");
    if (!(separation_T > 0.0)) throw std::invalid_argument("separation must be positive");
    if (!(slit_width_a > 0.0)) throw std::invalid_argument("slit width must be positive");
    if (!(slit_width_a < separation_T))
        throw std::invalid_argument("slit width must be smaller than the separation");
}

PositionState build_position_state(const SlitConfig& config) {
    config.validate();
    const int m = config.slit_count_m;
    const double T = config.separation_T;
    const double a = config.slit_width_a;
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(m) * a);

    PositionState state;
    state.rectangles.reserve(m);
    for (int j = m / 2; j >= 1; --j)
        state.rectangles.push_back({-(2 * j - 1) * T / 2.0, a, amplitude});
    for (int j = 1; j <= m / 2; ++j)
        state.rectangles.push_back({(2 * j - 1) * T / 2.0, a, amplitude});

    double norm_sq = 0.0;
    for (const auto& r : state.rectangles) norm_sq += r.amplitude * r.amplitude * r.width;
    state.norm = std::sqrt(norm_sq);
    return state;
}

double f_m(int m, double kappa) {
    double sum = 0.0;
    for (int j = 1; j <= m / 2; ++j) sum += std::cos((2 * j - 1) * kappa);
    return sum;
}

double f_m_dirichlet(int m, double kappa) {
    const double s = std::sin(kappa);
    if (std::abs(s) < 1e-6) return f_m(m, kappa);
    return std::sin(m * kappa) / (2.0 * s);
}

double eval_momentum_sum(const SlitConfig& config, double k) {
    config.validate();
    const double a = config.slit_width_a;
    const double T = config.separation_T;
    const int m = config.slit_count_m;
    return std::sqrt(2.0 * a / (m * M_PI)) * sinc(a * k / 2.0) * f_m(m, T * k / 2.0);
}

double eval_momentum_product(double a, double T, int d, double k) {
    if (d < 0) throw std::invalid_argument("product form: d must be >= 0");
    double product = 1.0;
    for (int j = 0; j < d; ++j) product *= std::cos(std::ldexp(T * k / 2.0, j));
    return std::sqrt(std::ldexp(a / M_PI, d - 1)) * sinc(a * k / 2.0) * product;
}

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

MomentumEvaluator MomentumEvaluator::sum_form(const SlitConfig& config) {
    config.validate();
    return MomentumEvaluator(config.slit_width_a, config.separation_T,
                             config.slit_count_m, MomentumForm::SumForm);
}

MomentumEvaluator MomentumEvaluator::product_form(const SlitConfig& config) {
    config.validate();
    if (!is_power_of_two(config.slit_count_m))
        throw std::invalid_argument("product form requires a power-of-two slit count");
    return MomentumEvaluator(config.slit_width_a, config.separation_T,
                             config.slit_count_m, MomentumForm::ProductForm);
}

MomentumEvaluator MomentumEvaluator::single_slit(double a, double T) {
    if (!(a > 0.0) || !(T > 0.0))
        throw std::invalid_argument("single slit: a and T must be positive");
    return MomentumEvaluator(a, T, 1, MomentumForm::ProductForm);
}

double MomentumEvaluator::operator()(double k) const {
    if (form_ == MomentumForm::SumForm)
        return std::sqrt(2.0 * a_ / (m_ * M_PI)) * sinc(a_ * k / 2.0) * f_m(m_, T_ * k / 2.0);
    int d = 0;
    while ((1 << d) < m_) ++d;
    return eval_momentum_product(a_, T_, d, k);
}

double MomentumEvaluator::peak() const {
    if (m_ == 1) return std::sqrt(a_ / (2.0 * M_PI));
    return std::sqrt(2.0 * a_ / (m_ * M_PI)) * (m_ / 2.0);
}

AdmissibilityReport is_admissible(const MomentumEvaluator& psi, int j_range) {
    const double K = psi.fringe_period();
    const double threshold = 1e-12 * psi.peak();
    AdmissibilityReport report;
    report.admissible = true;
    report.node_residuals.reserve(2 * j_range + 1);
    for (int j = -j_range; j <= j_range; ++j) {
        const double residual = std::abs(psi((j + 0.5) * K));
        report.node_residuals.push_back(residual);
        if (residual > threshold) report.admissible = false;
    }
    return report;
}

}  // namespace modvar
