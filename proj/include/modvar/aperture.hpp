#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

// m-slit aperture states: piecewise-constant position wavefunction and
// the closed-form momentum wavefunction in sum and product form.

namespace modvar {

/// Aperture geometry. Lengths in user units, hbar = 1.
struct SlitConfig {
    double slit_width_a;
    double separation_T;
    int slit_count_m;

    /// Throws std::invalid_argument unless m is even and >= 2,
    /// 0 < a < T. a == T is rejected so the rectangles stay disjoint.
    void validate() const;

    double fringe_period() const { return 2.0 * M_PI / separation_T; }        // K
    double refined_fringe_period() const {                                    // K'
        return 4.0 * M_PI / (slit_count_m * separation_T);
    }
};

struct Rectangle {
    double center;
    double width;
    double amplitude;
};

/// psi_m as a list of disjoint rectangles; norm is the exact L2 norm
/// computed from the rectangle representation.
struct PositionState {
    std::vector<Rectangle> rectangles;
    double norm;
};

PositionState build_position_state(const SlitConfig& config);

/// sin(x)/x with sinc(0) = 1; series below |x| < 1e-8.
inline double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

/// f_m(kappa) = sum_{j=1}^{m/2} cos((2j-1) kappa), direct summation.
double f_m(int m, double kappa);

/// Same function through the Dirichlet quotient sin(m kappa)/(2 sin kappa),
/// with a fallback to the direct sum near the poles of the quotient.
double f_m_dirichlet(int m, double kappa);

double eval_momentum_sum(const SlitConfig& config, double k);

/// Product form, m = 2^d only. d = 0 gives the single-slit transform.
double eval_momentum_product(double a, double T, int d, double k);

enum class MomentumForm { SumForm, ProductForm };

/// Closed-form evaluator for psi_hat. Also represents the single-slit
/// state (slit_count 1), which is constructible for evaluation but
/// rejected by every moment routine.
class MomentumEvaluator {
public:
    static MomentumEvaluator sum_form(const SlitConfig& config);
    static MomentumEvaluator product_form(const SlitConfig& config);  // m must be 2^d
    static MomentumEvaluator single_slit(double a, double T);

    double operator()(double k) const;

    int slit_count() const { return m_; }
    double width() const { return a_; }
    double separation() const { return T_; }
    double fringe_period() const { return 2.0 * M_PI / T_; }
    MomentumForm form() const { return form_; }
    bool is_single_slit() const { return m_ == 1; }

    /// Peak amplitude |psi_hat(0)|.
    double peak() const;

private:
    MomentumEvaluator(double a, double T, int m, MomentumForm form)
        : a_(a), T_(T), m_(m), form_(form) {}
    double a_;
    double T_;
    int m_;
    MomentumForm form_;
};

/// True iff m = 2^d for some d >= 0.
bool is_power_of_two(int m);

struct AdmissibilityReport {
    bool admissible;
    std::vector<double> node_residuals;  // |psi_hat((j+1/2)K)|, j = -j_range..j_range
};

/// Checks the node condition psi_hat((j+1/2)K) = 0 against
/// 1e-12 * peak amplitude.
AdmissibilityReport is_admissible(const MomentumEvaluator& psi, int j_range);

}  // namespace modvar
