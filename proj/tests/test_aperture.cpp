#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "modvar/aperture.hpp"
#include "modvar/moments.hpp"

using namespace modvar;

TEST_CASE("config validation") {
    CHECK_NOTHROW(SlitConfig{1.0, 5.0, 2}.validate());
    CHECK_NOTHROW(SlitConfig{4.9, 5.0, 64}.validate());
    CHECK_THROWS_AS((SlitConfig{1.0, 5.0, 3}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SlitConfig{1.0, 5.0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SlitConfig{1.0, 5.0, -2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SlitConfig{5.0, 5.0, 2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SlitConfig{6.0, 5.0, 2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SlitConfig{0.0, 5.0, 2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SlitConfig{-1.0, 5.0, 2}.validate()), std::invalid_argument);
}

TEST_CASE("position state geometry") {
    const PositionState two = build_position_state({1.0, 5.0, 2});
    REQUIRE(two.rectangles.size() == 2);
    std::vector<double> centers;
    for (const auto& r : two.rectangles) {
        centers.push_back(r.center);
        CHECK(r.width == doctest::Approx(1.0));
        CHECK(r.amplitude == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    std::sort(centers.begin(), centers.end());
    CHECK(centers[0] == doctest::Approx(-2.5));
    CHECK(centers[1] == doctest::Approx(2.5));
    CHECK(two.norm == doctest::Approx(1.0).epsilon(1e-14));

    const PositionState four = build_position_state({0.5, 5.0, 4});
    REQUIRE(four.rectangles.size() == 4);
    centers.clear();
    for (const auto& r : four.rectangles) {
        centers.push_back(r.center);
        CHECK(r.amplitude == doctest::Approx(1.0 / std::sqrt(4.0 * 0.5)));
    }
    std::sort(centers.begin(), centers.end());
    CHECK(centers[0] == doctest::Approx(-7.5));
    CHECK(centers[1] == doctest::Approx(-2.5));
    CHECK(centers[2] == doctest::Approx(2.5));
    CHECK(centers[3] == doctest::Approx(7.5));
    CHECK(four.norm == doctest::Approx(1.0).epsilon(1e-14));

    // rectangles stay disjoint for a < T
    for (std::size_t i = 0; i + 1 < four.rectangles.size(); ++i) {
        double lo = centers[i] + 0.25, hi = centers[i + 1] - 0.25;
        CHECK(lo < hi);
    }
}

TEST_CASE("f_m values and Dirichlet form") {
    CHECK(f_m(2, 0.7) == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
    CHECK(f_m(4, 0.7) == doctest::Approx(std::cos(0.7) + std::cos(3 * 0.7)).epsilon(1e-15));
    for (int m : {2, 4, 6, 10, 40}) CHECK(f_m(m, 0.0) == doctest::Approx(m / 2.0));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> kappa(-M_PI, M_PI);
    for (int m : {2, 4, 6, 8, 20, 64}) {
        for (int i = 0; i < 2000; ++i) {
            const double x = kappa(rng);
            CHECK(std::abs(f_m(m, x) - f_m_dirichlet(m, x)) < 1e-10 * m);
        }
        // poles of the quotient fall back to the sum
        for (double x : {0.0, M_PI, -M_PI, 1e-9})
            CHECK(std::abs(f_m(m, x) - f_m_dirichlet(m, x)) < 1e-10 * m);
    }
}

TEST_CASE("sum and product forms agree for m = 2^d") {
    const double T = 5.0;
    const double a = 1.0;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ks(-40.0, 40.0);
    for (int d = 0; d <= 6; ++d) {
        const int m = 1 << d;
        if (m < 2) continue;
        const SlitConfig config{a, T, m};
        const double peak = MomentumEvaluator::sum_form(config).peak();
        for (int i = 0; i < 1000; ++i) {
            const double k = ks(rng);
            const double s = eval_momentum_sum(config, k);
            const double p = eval_momentum_product(a, T, d, k);
            CHECK(std::abs(s - p) < 1e-12 * peak);
        }
    }
}

TEST_CASE("evaluator factories and peak") {
    const SlitConfig config{1.0, 5.0, 8};
    const auto sum = MomentumEvaluator::sum_form(config);
    const auto prod = MomentumEvaluator::product_form(config);
    CHECK(sum.peak() == doctest::Approx(std::sqrt(8 * 1.0 / (2.0 * M_PI))).epsilon(1e-14));
    CHECK(sum(0.0) == doctest::Approx(sum.peak()));
    CHECK(prod(0.3) == doctest::Approx(sum(0.3)).epsilon(1e-13));
    CHECK_FALSE(sum.is_single_slit());
    CHECK_THROWS_AS((MomentumEvaluator::product_form(SlitConfig{1.0, 5.0, 6})), std::invalid_argument);

    const auto single = MomentumEvaluator::single_slit(1.0, 5.0);
    CHECK(single.is_single_slit());
    CHECK(single(0.0) == doctest::Approx(std::sqrt(1.0 / (2.0 * M_PI))));
    // matches the d = 0 product form
    CHECK(single(0.7) == doctest::Approx(eval_momentum_product(1.0, 5.0, 0, 0.7)));
}

TEST_CASE("doubling recursion psi_{2m}(k) = sqrt(2) cos(m T k / 2) psi_m(k)") {
    const double T = 5.0;
    const double a = 1.0;
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> ks(-20.0, 20.0);
    for (int d = 0; d <= 4; ++d) {
        for (int i = 0; i < 300; ++i) {
            const double k = ks(rng);
            const double lower = eval_momentum_product(a, T, d, k);
            const double upper = eval_momentum_product(a, T, d + 1, k);
            const double factor = std::sqrt(2.0) * std::cos(std::ldexp(T * k / 2.0, d));
            CHECK(upper == doctest::Approx(factor * lower).epsilon(1e-12));
        }
    }
}

TEST_CASE("is_power_of_two") {
    for (int m : {1, 2, 4, 8, 1024}) CHECK(is_power_of_two(m));
    for (int m : {0, -2, 3, 6, 12, 1023}) CHECK_FALSE(is_power_of_two(m));
}

TEST_CASE("node lattice |j| <= 50") {
    for (int m : {2, 4, 6, 16}) {
        const SlitConfig config{1.0, 5.0, m};
        const auto psi = MomentumEvaluator::sum_form(config);
        const double K = config.fringe_period();
        const double peak = psi.peak();
        for (int j = -50; j <= 50; ++j)
            CHECK(std::abs(psi((j + 0.5) * K)) <= 1e-12 * peak);
    }
}

TEST_CASE("admissibility report") {
    const SlitConfig config{1.0, 5.0, 4};
    const auto good = is_admissible(MomentumEvaluator::sum_form(config), 40);
    CHECK(good.admissible);
    CHECK(good.node_residuals.size() == 81);

    const auto bad = is_admissible(MomentumEvaluator::single_slit(1.0, 5.0), 40);
    CHECK_FALSE(bad.admissible);
    // single slit: sinc envelope alone, clearly nonzero at the first node
    const double K = 2.0 * M_PI / 5.0;
    const auto single = MomentumEvaluator::single_slit(1.0, 5.0);
    CHECK(std::abs(single(0.5 * K)) > 0.1 * single.peak());
}

TEST_CASE("momentum norm matches the position norm (Parseval)") {
    for (int m : {2, 4, 6}) {
        const SlitConfig config{1.0, 5.0, m};
        const auto norm_sq = momentum_norm_squared(config, 1e-9);
        CHECK(std::abs(norm_sq.value - 1.0) < 1e-8);
    }
    // width dependence: narrow and wide slits both normalized (the
    // narrow slit spreads far in k, so relax the tail budget)
    for (double a : {0.2, 4.5}) {
        const auto norm_sq = momentum_norm_squared(SlitConfig{a, 5.0, 2}, 1e-9);
        CHECK(std::abs(norm_sq.value - 1.0) < 1e-7);
    }
}
