#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "silab/errors.hpp"
#include "silab/numeric.hpp"
#include "silab/rng.hpp"
#include "silab/stats.hpp"
#include "silab/weight_law.hpp"

using namespace silab;

TEST_CASE("fit_exponent recovers exact power data") {
    std::vector<double> ks, ys;
    for (double k : {8.0, 16.0, 32.0, 64.0, 128.0, 256.0}) {
        ks.push_back(k);
        ys.push_back(3.0 * std::pow(k, 1.25));
    }
    const SlopeFit fit = fit_exponent(ks, ys);
    CHECK(std::abs(fit.slope - 1.25) < 1e-9);
    CHECK(fit.ci_lo <= 1.25);
    CHECK(fit.ci_hi >= 1.25);
    CHECK_THROWS_AS(fit_exponent(std::vector<double>{1, 2, 3},
                                 std::vector<double>{1, 2, 3}),
                    ParameterError);
    std::vector<double> bad = {1, 2, 3, 4, std::numeric_limits<double>::infinity(), 6};
    CHECK_THROWS_AS(fit_exponent(ks, bad), DataError);
}

TEST_CASE("hill estimator on known laws") {
    const WeightLaw law = WeightLaw::power(0.8);
    RngStream rng(100, 0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = law.sample(rng);
    const HillEstimate est = hill_tail_index(xs, 0.01);
    CHECK(est.alpha_hat > 0.65);
    CHECK(est.alpha_hat < 0.95);
    CHECK(est.k_used == 1000);

    // light-tailed input drifts above 2
    std::vector<double> es(100000);
    for (auto& x : es) x = -std::log(rng.u01());
    const HillEstimate light = hill_tail_index(es, 0.01);
    CHECK(light.alpha_hat > 2.0);

    CHECK_THROWS_AS(hill_tail_index(std::vector<double>(10, 1.0), 0.01), ParameterError);
    std::vector<double> with_zero(2000, 1.0);
    with_zero[5] = 0.0;
    CHECK_THROWS_AS(hill_tail_index(with_zero, 0.05), DataError);
}

TEST_CASE("chi-square p-values behave") {
    std::vector<double> a(10, 100.0), e(10, 100.0);
    CHECK(chi_square_pvalue(a, e) == doctest::Approx(1.0));
    a[0] = 200;
    a[1] = 0;
    CHECK(chi_square_pvalue(a, e) < 1e-3);
    CHECK(chi_square_two_sample_pvalue(std::vector<double>{50, 50, 50},
                                       std::vector<double>{55, 45, 50}) > 0.1);
}

TEST_CASE("ks distances") {
    RngStream rng(101, 0);
    std::vector<double> u(20000);
    for (auto& x : u) x = rng.u01();
    CHECK(ks_distance(u, [](double t) { return std::clamp(t, 0.0, 1.0); }) < 0.02);
    std::vector<double> v(20000);
    for (auto& x : v) x = rng.u01() * rng.u01(); // clearly not uniform
    CHECK(ks_distance(v, [](double t) { return std::clamp(t, 0.0, 1.0); }) > 0.1);
    CHECK(ks_two_sample(u, v) > 0.1);
}

TEST_CASE("dkw and tv and quantile") {
    CHECK(dkw_epsilon(1000000, 1e-3) == doctest::Approx(std::sqrt(std::log(2000.0) / 2e6)));
    CHECK(tv_distance(std::vector<double>{1, 1}, std::vector<double>{1, 1}) == 0.0);
    CHECK(tv_distance(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 1.0);
    CHECK(quantile(std::vector<double>{3, 1, 2}, 0.5) == 2.0);
    CHECK(quantile(std::vector<double>{1, 2, 3, 4}, 0.95) == doctest::Approx(3.85));
}

TEST_CASE("adaptive simpson") {
    const double v = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
    const double w = adaptive_simpson([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(w == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-9));
}

TEST_CASE("linear_fit on noisy line") {
    RngStream rng(102, 0);
    std::vector<double> x(5000), y(5000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.u01() * 10;
        y[i] = 2.5 * x[i] + 1.0 + (rng.u01() - 0.5);
    }
    const LinearFit f = linear_fit(x, y);
    CHECK(std::abs(f.slope - 2.5) < 0.02);
    CHECK(std::abs(f.intercept - 1.0) < 0.1);
}
