#include "doctest.h"

#include <cmath>

#include "bergman/quadrature.hpp"
#include "oracles.hpp"

using namespace bergman;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
    const auto& rule = gauss_legendre(10);
    REQUIRE(rule.nodes.size() == 10);
    for (int k = 0; k < 20; ++k) {
        double sum = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) sum += rule.weights[j] * std::pow(rule.nodes[j], k);
        CHECK(sum == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
    CHECK(&gauss_legendre(10) == &rule);
}

TEST_CASE("integrate_halfline examples") {
    const QuadratureSpec spec;
    const auto beta12 = integrate_halfline([](double r) { return std::pow(1.0 + r, -3); }, spec);
    CHECK(beta12.value.real() == doctest::Approx(0.5).epsilon(1e-13));
    const auto beta22 = integrate_halfline([](double r) { return r * std::pow(1.0 + r, -4); }, spec);
    CHECK(beta22.value.real() == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    const auto expo = integrate_halfline([](double r) { return std::exp(-r); }, spec);
    CHECK(std::abs(expo.value.real() - 1.0) <= 1e-10);
    CHECK(expo.evaluations == 64 + 128);
    CHECK(expo.error_estimate >= 0.0);
}

TEST_CASE("Beta identity battery on the half-line") {
    const QuadratureSpec spec;
    for (int n = 1; n <= 4; ++n)
        for (int m = 0; m <= 6; ++m)
            for (int k = 0; k <= m; ++k) {
                const auto r = integrate_halfline(
                    [&](double x) { return std::pow(x, n + k - 1) * std::pow(1.0 + x, -(n + m + 1)); }, spec);
                const double exact =
                    oracle::factorial(n + k - 1) * oracle::factorial(m - k) / oracle::factorial(n + m);
                CHECK(std::abs(r.value.real() - exact) <= 1e-10 * exact);
            }
}

TEST_CASE("split points restore accuracy for jumps") {
    // 2 int_0^1 (1+r)^-3 dr = 3/4
    auto f = [](double r) { return r <= 1.0 ? 2.0 * std::pow(1.0 + r, -3) : 0.0; };
    QuadratureSpec split;
    split.split_points = {1.0};
    const auto good = integrate_halfline(f, split);
    CHECK(std::abs(good.value.real() - 0.75) <= 1e-13);
    CHECK(good.error_estimate <= 1e-13);
    const auto bad = integrate_halfline(f, QuadratureSpec{});
    CHECK(bad.error_estimate > 1e-6);
}

TEST_CASE("non-convergence is reported") {
    QuadratureSpec strict;
    strict.order = 4;
    strict.tolerance = 1e-14;
    CHECK_THROWS_AS(integrate_halfline([](double r) { return std::exp(-r * r) * std::cos(5 * r); }, strict),
                    ConvergenceError);
}

TEST_CASE("QuadratureSpec validation") {
    CHECK_THROWS_AS(QuadratureSpec{1}.validate(), std::invalid_argument);
    CHECK_THROWS_AS((QuadratureSpec{8, {2.0, 1.0}}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((QuadratureSpec{8, {-1.0}}).validate(), std::invalid_argument);
    CHECK_NOTHROW((QuadratureSpec{8, {1.0, 2.0}}).validate());
}

TEST_CASE("integrate_orthant examples") {
    const QuadratureSpec spec;
    const auto a = integrate_orthant([](std::span<const double> t) { return std::pow(1.0 + t[0] + t[1], -4); }, 2, spec);
    CHECK(a.value.real() == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    const auto b = integrate_orthant(
        [](std::span<const double> t) { return t[0] * std::pow(1.0 + t[0] + t[1], -5); }, 2, spec);
    // Gamma(2) Gamma(1) Gamma(2) / Gamma(5) = 1/24
    CHECK(b.value.real() == doctest::Approx(1.0 / 24.0).epsilon(1e-13));
    CHECK(b.value.real() == doctest::Approx(oracle::dirichlet({2.0, 1.0}, 5.0)).epsilon(1e-13));

    auto g = [](double r) { return std::exp(-r) * std::pow(1.0 + r, -2); };
    const auto one = integrate_orthant([&](std::span<const double> t) { return g(t[0]); }, 1, spec);
    const auto line = integrate_halfline(g, spec);
    CHECK(std::abs(one.value.real() - line.value.real()) <= 1e-13);

    CHECK_THROWS_AS(integrate_orthant([](std::span<const double>) { return 1.0; }, orthant_dimension_cap + 1, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(OrthantRule(0, 4), std::invalid_argument);
}

TEST_CASE("Dirichlet identity battery for s <= 3") {
    QuadratureSpec spec;
    spec.order = 48;
    for (int s = 1; s <= 3; ++s) {
        std::vector<int> alpha(static_cast<std::size_t>(s), 1);
        // odometer over exponent vectors with sum(alpha) + 1 <= 12
        while (true) {
            int sum = 0;
            for (int a : alpha) sum += a;
            if (sum + 1 <= 12) {
                for (int extra = 1; extra <= 3; ++extra) {
                    const int beta = sum + extra;
                    const auto r = integrate_orthant(
                        [&](std::span<const double> t) {
                            double v = 1.0, total = 1.0;
                            for (int b = 0; b < s; ++b) {
                                v *= std::pow(t[static_cast<std::size_t>(b)], alpha[static_cast<std::size_t>(b)] - 1);
                                total += t[static_cast<std::size_t>(b)];
                            }
                            return v * std::pow(total, -beta);
                        },
                        s, spec);
                    std::vector<double> ad(alpha.begin(), alpha.end());
                    const double exact = oracle::dirichlet(ad, beta);
                    CHECK(std::abs(r.value.real() - exact) <= 1e-8 * exact);
                }
            }
            std::size_t i = 0;
            while (i < alpha.size() && ++alpha[i] > 11) alpha[i++] = 1;
            if (i == alpha.size()) break;
        }
    }
}

TEST_CASE("orthant refinement respects the node budget") {
    CHECK(orthant_refinement(2, 64) == std::pair{128, 64});
    CHECK(orthant_refinement(4, 64) == std::pair{64, 32});
    CHECK(orthant_refinement(1, 96) == std::pair{192, 96});
}

TEST_CASE("mc_expectation examples") {
    const auto one = mc_expectation({2, 2}, [](const Point&) { return Complex(1.0, 0.0); }, 1000, 1);
    CHECK(one.value == Complex(1.0, 0.0));
    CHECK(one.error_estimate == 0.0);

    const auto r2 = mc_expectation({1, 2}, [](const Point& z) { return Complex(z.squaredNorm(), 0.0); }, 1'000'000, 3);
    CHECK(std::abs(r2.value.real() - 0.5) <= 4.0 * r2.error_estimate);

    const auto order = enumerate_multi_indices(2, 3);
    const SpaceParams params(2, 3);
    const BasisEvaluator basis(order);
    const auto cross = mc_expectation(
        params,
        [&](const Point& z) {
            Eigen::VectorXcd e(static_cast<Eigen::Index>(order.size()));
            basis.evaluate(z, e);
            return e(3) * std::conj(e(5));
        },
        1'000'000, 5);
    CHECK(std::abs(cross.value) <= 4.0 * cross.error_estimate * std::sqrt(2.0));

    const auto again = mc_expectation({1, 2}, [](const Point& z) { return Complex(z.squaredNorm(), 0.0); }, 1'000'000, 3);
    CHECK(again.value == r2.value);
}

TEST_CASE("mc_expectation agrees with exact moments across seeds") {
    const SpaceParams params(2, 4);
    const double exact = 1.0 * 2.0 / 24.0;
    int pass = 0;
    const int trials = 100;
    for (int seed = 0; seed < trials; ++seed) {
        const auto r = mc_expectation(
            params, [](const Point& z) { return Complex(std::norm(z(0)) * std::norm(z(1)), 0.0); }, 20000,
            static_cast<std::uint64_t>(seed));
        pass += std::abs(r.value.real() - exact) <= 4.0 * r.error_estimate;
    }
    CHECK(pass >= 99);
}
