// Command-line frontend: moments, sweeps, verification suites and
// plot-data export for the modular-variable uncertainty toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modvar/aperture.hpp"
#include "modvar/gridlab.hpp"
#include "modvar/identities.hpp"
#include "modvar/modular.hpp"
#include "modvar/moments.hpp"
#include "modvar/quadrature.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

json units_block() {
    return json{{"hbar", 1},
                {"length", "user units"},
                {"wavenumber", "inverse user units"}};
}

json config_block(const modvar::SlitConfig& config) {
    return json{{"slits", config.slit_count_m},
                {"separation", config.separation_T},
                {"width", config.slit_width_a}};
}

int cmd_moments(const modvar::SlitConfig& config, bool refined, const std::string& out_path) {
    config.validate();
    const auto qt = modvar::sdev_qt(config);
    const auto pm = modvar::sdev_pmod_single_fringe(config);
    const auto pm_refined = modvar::sdev_pmod_refined(config);

    json doc;
    doc["command"] = "moments";
    doc["units"] = units_block();
    doc["config"] = config_block(config);
    doc["config"]["refined"] = refined;
    doc["sdev_qt"] = qt.value;
    doc["sdev_pmod"] = pm.value;
    doc["sdev_pmod_refined"] = pm_refined.value;
    doc["product"] = qt.value * pm.value;
    doc["product_refined"] = qt.value * pm_refined.value;
    doc["methods"] = {{"sdev_qt", modvar::to_string(qt.method)},
                      {"sdev_pmod", modvar::to_string(pm.method)},
                      {"sdev_pmod_refined", modvar::to_string(pm_refined.method)}};
    doc["error_estimates"] = {{"sdev_qt", qt.abs_error_estimate},
                              {"sdev_pmod", pm.abs_error_estimate},
                              {"sdev_pmod_refined", pm_refined.abs_error_estimate}};
    write_text(out_path, doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_sweep(double T, double a, int m_start, int m_end, int step,
              const std::string& out_path) {
    if (m_start % 2 != 0 || m_end % 2 != 0 || step % 2 != 0 || step <= 0)
        throw std::invalid_argument("sweep bounds and step must be even and positive");
    std::vector<int> m_list;
    for (int m = m_start; m <= m_end; m += step) m_list.push_back(m);
    const auto rows = modvar::sweep(T, a, m_list);

    std::string csv = "m,sdev_qt,sdev_pmod,sdev_pmod_refined,product,product_refined\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.m) + "," + fmt17(r.sdev_qt) + "," + fmt17(r.sdev_pmod) +
               "," + fmt17(r.sdev_pmod_refined) + "," + fmt17(r.product) + "," +
               fmt17(r.product_refined) + "\n";
    }
    write_text(out_path, csv);
    return kExitOk;
}

int cmd_fringe_data(const modvar::SlitConfig& config, double k_range, int points,
                    const std::string& out_path) {
    config.validate();
    if (!(k_range > 0.0) || points < 2)
        throw std::invalid_argument("fringe-data: needs positive --k-range and --points >= 2");
    if (!modvar::is_power_of_two(config.slit_count_m))
        throw std::invalid_argument(
            "fringe-data: slit count must be a power of two for the envelope overlay");
    const auto psi = modvar::MomentumEvaluator::sum_form(config);
    const int m = config.slit_count_m;
    const double a = config.slit_width_a;
    const double T = config.separation_T;

    auto envelope = [&](double k) {
        if (m == 2) {
            const double s = modvar::sinc(a * k / 2.0);
            return a / M_PI * s * s;
        }
        modvar::SlitConfig half{a, T, m / 2};
        const double v = modvar::eval_momentum_sum(half, k);
        return v * v;
    };

    std::string csv = "k,intensity,envelope_intensity\n";
    for (int i = 0; i < points; ++i) {
        const double k = -k_range + 2.0 * k_range * i / (points - 1);
        const double v = psi(k);
        csv += fmt17(k) + "," + fmt17(v * v) + "," + fmt17(envelope(k)) + "\n";
    }
    write_text(out_path, csv);
    return kExitOk;
}

int cmd_commutator(const std::string& state_name, const modvar::SlitConfig& config,
                   int resolution, bool refined, const std::string& profile_path,
                   const std::string& out_path) {
    modvar::MomentumEvaluator psi = [&] {
        if (state_name == "single-slit")
            return modvar::MomentumEvaluator::single_slit(config.slit_width_a,
                                                          config.separation_T);
        if (state_name == "psi-m") return modvar::MomentumEvaluator::sum_form(config);
        throw std::invalid_argument("commutator: --state must be psi-m or single-slit");
    }();

    const double K = refined ? config.refined_fringe_period() : psi.fringe_period();
    const double dk = K / resolution;
    const double half_range =
        std::ceil(std::max(20.0 * 2.0 * M_PI / psi.width(), 40.0 * M_PI) / K) * K;
    const int half_n = static_cast<int>(std::round(half_range / dk));
    const auto state =
        modvar::sample_momentum(psi, -half_n * dk, half_n * dk, 2 * half_n + 1);
    const auto report = modvar::canonical_residual(state, K);

    if (!profile_path.empty()) {
        std::string csv = "k,abs_residual\n";
        for (int i = 0; i < state.n_points; ++i)
            csv += fmt17(state.k_at(i)) + "," + fmt17(report.residual_profile[i]) + "\n";
        write_text(profile_path, csv);
    }

    json doc;
    doc["command"] = "commutator";
    doc["units"] = units_block();
    doc["config"] = config_block(config);
    doc["config"]["state"] = state_name;
    doc["config"]["resolution"] = resolution;
    doc["config"]["refined"] = refined;
    doc["grid"] = {{"k_min", state.k_min}, {"k_max", state.k_max},
                   {"n_points", state.n_points}, {"dk", state.dk}};
    doc["l2_residual"] = report.l2_residual;
    doc["comb_alignment_score"] = report.comb_alignment_score;
    doc["comb_locations"] = report.comb_locations;
    write_text(out_path, doc.dump(2) + "\n");
    return kExitOk;
}

struct Check {
    std::string suite;
    std::string name;
    double deviation;
    double tolerance;
    bool passed;
};

int cmd_verify(const std::string& suite_filter, const std::string& out_path) {
    std::vector<Check> checks;
    auto add = [&](const std::string& suite, const std::string& name, double deviation,
                   double tolerance) {
        checks.push_back({suite, name, deviation, tolerance, deviation <= tolerance});
    };
    auto enabled = [&](const std::string& suite) {
        return suite_filter.empty() || suite_filter == suite;
    };

    try {
        if (enabled("product-sum")) {
            for (int d = 1; d <= 6; ++d) {
                const auto rep = modvar::check_product_sum(d, 10000);
                add("product-sum", rep.name, rep.max_abs_deviation, 1e-12);
            }
        }
        if (enabled("dirichlet")) {
            for (int m : {2, 4, 8, 16, 40}) {
                double max_dev = 0.0;
                for (int i = 0; i < 2000; ++i) {
                    const double kappa = -3.0 + 6.0 * i / 1999.0;
                    // skip pole neighborhoods where both quotient forms
                    // lose digits to cancellation
                    if (std::abs(std::sin(kappa)) < 0.05) continue;
                    const auto t = modvar::dirichlet_square(m, kappa);
                    if (!t.quotient_valid) continue;
                    max_dev = std::max({max_dev, std::abs(t.lhs - t.rhs_quotient),
                                        std::abs(t.lhs - t.rhs_cos)});
                }
                add("dirichlet", "dirichlet m=" + std::to_string(m), max_dev, 1e-10);
            }
        }
        if (enabled("sinc-comb")) {
            for (double u : {0.0, 0.3, 1.2}) {
                const double partial = modvar::sinc_comb_partial(1.0, 5.0, u, 100000);
                add("sinc-comb", "sinc-comb a=1 T=5 u=" + std::to_string(u),
                    std::abs(partial - 5.0), 1e-3);
            }
            add("sinc-comb", "sinc-comb a=T/2",
                std::abs(modvar::sinc_comb_partial(2.5, 5.0, 0.0, 100000) - 2.0), 1e-3);
        }
        if (enabled("convolution")) {
            for (int d = 1; d <= 4; ++d) {
                const auto conv = modvar::convolution_construction(d, 5.0, 2001);
                add("convolution", conv.report.name, conv.report.max_abs_deviation, 1e-12);
            }
        }
        if (enabled("integrals")) {
            const auto fi = modvar::fringe_integral_exact(modvar::default_tolerance());
            add("integrals", "pi ln 2",
                std::abs(fi.kappa_sq_over_one_minus_cos.value - M_PI * std::log(2.0)), 1e-10);
            add("integrals", "(pi/24)(pi^2-6)",
                std::abs(fi.kappa_sq_cos_sq.value - M_PI / 24.0 * (M_PI * M_PI - 6.0)),
                1e-10);
            add("integrals", "riemann-lebesgue m=200",
                std::abs(modvar::riemann_lebesgue_term(200)), 0.01);
        }
        if (enabled("moments")) {
            const modvar::SlitConfig ds{1.0, 5.0, 2};
            const double closed = std::sqrt((M_PI * M_PI - 6.0) / 3.0) / 5.0;
            add("moments", "double-slit single-fringe vs closed form",
                std::abs(modvar::sdev_pmod_single_fringe(ds).value - closed), 1e-8);
            add("moments", "double-slit brute force vs closed form",
                std::abs(modvar::sdev_pmod_bruteforce(ds).value - closed), 1e-6);
            for (double a : {0.5, 2.5, 4.5}) {
                const modvar::SlitConfig c{a, 5.0, 2};
                add("moments", "slit-width independence a=" + std::to_string(a),
                    std::abs(modvar::sdev_pmod_bruteforce(c).value - closed) / closed, 1e-6);
            }
            for (int m : {2, 6, 8, 16}) {
                const modvar::SlitConfig c{1.0, 5.0, m};
                add("moments", "refined closed vs quadrature m=" + std::to_string(m),
                    std::abs(modvar::sdev_pmod_refined(c).value -
                             modvar::sdev_pmod_refined_quadrature(c).value),
                    1e-8);
            }
            std::vector<int> ms;
            for (int m = 2; m <= 40; m += 2) ms.push_back(m);
            double worst = 1e9;
            for (const auto& row : modvar::sweep(5.0, 1.0, ms)) {
                worst = std::min({worst, row.product, row.product_refined});
            }
            add("moments", "robertson bound over sweep", 0.5 - worst, 1e-9);
        }
        if (enabled("commutator")) {
            const modvar::SlitConfig ds{1.0, 5.0, 2};
            const auto psi2 = modvar::MomentumEvaluator::sum_form(ds);
            const double K = psi2.fringe_period();
            const double dk = K / 256.0;
            const int half_n = static_cast<int>(std::round(std::ceil(40.0 * M_PI / K) * K / dk));
            const auto adm = modvar::sample_momentum(psi2, -half_n * dk, half_n * dk,
                                                     2 * half_n + 1);
            add("commutator", "psi-2 canonical residual",
                modvar::canonical_residual(adm, K).l2_residual, 1e-3);
            const auto single = modvar::MomentumEvaluator::single_slit(1.0, 5.0);
            const auto bad = modvar::sample_momentum(single, -half_n * dk, half_n * dk,
                                                     2 * half_n + 1);
            const auto rep = modvar::canonical_residual(bad, K);
            add("commutator", "single-slit residual is large", 0.1 - rep.l2_residual, 0.0);
            add("commutator", "single-slit comb alignment", 0.9 - rep.comb_alignment_score,
                0.0);
            add("commutator", "commuting pair residual",
                modvar::commuting_residual(ds, 16, 1 << 14), 1e-2);
        }
    } catch (const modvar::quadrature_error& e) {
        checks.push_back({"(aborted)", std::string("numerical failure: ") + e.what(), 1.0,
                          0.0, false});
    }

    bool all_passed = !checks.empty();
    json report = json::array();
    for (const auto& c : checks) {
        all_passed = all_passed && c.passed;
        std::cout << (c.passed ? "PASS " : "FAIL ") << "[" << c.suite << "] " << c.name
                  << " (deviation " << c.deviation << ", tolerance " << c.tolerance << ")\n";
        report.push_back({{"suite", c.suite},
                          {"name", c.name},
                          {"max_abs_deviation", c.deviation},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed}});
    }
    if (!out_path.empty()) write_text(out_path, report.dump(2) + "\n");
    std::cout << (all_passed ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modvar: modular-variable uncertainty toolkit for multislit interferometry"};
    app.require_subcommand(1);

    modvar::SlitConfig config{1.0, 5.0, 2};
    bool refined = false;
    std::string out_path;

    auto add_slit_options = [&](CLI::App* cmd) {
        cmd->add_option("--slits", config.slit_count_m, "number of illuminated slits (even)");
        cmd->add_option("--separation", config.separation_T, "slit separation T");
        cmd->add_option("--width", config.slit_width_a, "slit width a");
        cmd->add_option("-o,--output", out_path, "output file (default: stdout)");
    };

    auto* moments = app.add_subcommand("moments", "standard deviations and products");
    add_slit_options(moments);
    moments->add_flag("--refined", refined, "use the node-adapted modular momentum");

    auto* sweep = app.add_subcommand("sweep", "CSV sweep over the slit count");
    int m_start = 2, m_end = 8, step = 2;
    sweep->add_option("--m-start", m_start, "first slit count (even)");
    sweep->add_option("--m-end", m_end, "last slit count (even)");
    sweep->add_option("--step", step, "slit count step (even)");
    add_slit_options(sweep);

    auto* verify = app.add_subcommand("verify", "run the identity and invariant suites");
    std::string suite;
    verify->add_option("--suite", suite,
                       "restrict to one suite (product-sum, dirichlet, sinc-comb, "
                       "convolution, integrals, moments, commutator)");
    verify->add_option("-o,--output", out_path, "JSON report file");

    auto* fringe = app.add_subcommand("fringe-data", "CSV intensity and envelope samples");
    double k_range = 4.0 * M_PI;
    int points = 2001;
    fringe->add_option("--k-range", k_range, "half-width of the symmetric k interval");
    fringe->add_option("--points", points, "number of samples");
    add_slit_options(fringe);

    auto* commutator = app.add_subcommand("commutator", "grid commutator residual");
    std::string state_name = "psi-m";
    int resolution = 256;
    std::string profile_path;
    commutator->add_option("--state", state_name, "psi-m or single-slit");
    commutator->add_option("--resolution", resolution, "grid points per fringe period");
    commutator->add_flag("--refined", refined, "use the node-adapted period K'");
    commutator->add_option("--profile", profile_path, "write (k, |r(k)|) CSV here");
    add_slit_options(commutator);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (moments->parsed()) return cmd_moments(config, refined, out_path);
        if (sweep->parsed())
            return cmd_sweep(config.separation_T, config.slit_width_a, m_start, m_end, step,
                             out_path);
        if (verify->parsed()) return cmd_verify(suite, out_path);
        if (fringe->parsed()) return cmd_fringe_data(config, k_range, points, out_path);
        if (commutator->parsed())
            return cmd_commutator(state_name, config, resolution, refined, profile_path,
                                  out_path);
    } catch (const modvar::quadrature_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
