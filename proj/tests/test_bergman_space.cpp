#include "doctest.h"

#include <cmath>
#include <random>

#include "bergman/bergman_space.hpp"
#include "bergman/quadrature.hpp"
#include "oracles.hpp"

using namespace bergman;
using namespace std::complex_literals;

namespace {

Point random_point(int n, std::mt19937_64& rng, double scale = 1.5) {
    std::normal_distribution<double> g(0.0, scale);
    Point z(n);
    for (int i = 0; i < n; ++i) z(i) = Complex(g(rng), g(rng));
    return z;
}

double moment_mean(const Eigen::MatrixXcd& z, const MultiIndex& p, double* se) {
    const auto count = static_cast<double>(z.cols());
    double sum = 0.0, sum2 = 0.0;
    for (Eigen::Index k = 0; k < z.cols(); ++k) {
        double v = 1.0;
        for (int i = 0; i < p.size(); ++i) v *= std::pow(std::norm(z(i, k)), p[i]);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / count;
    *se = std::sqrt((sum2 / count - mean * mean) / (count - 1.0));
    return mean;
}

} // namespace

TEST_CASE("monomial_inner_product examples") {
    // int_C |z|^2 dnu_2 = 3 int_0^inf r/(1+r)^4 dr by polar coordinates
    const double oracle_value = 3.0 * oracle::halfline_simpson([](double r) { return r / std::pow(1.0 + r, 4); });
    CHECK(monomial_inner_product({1, 2}, MultiIndex{1}, MultiIndex{1}) == doctest::Approx(oracle_value).epsilon(1e-9));
    CHECK(monomial_inner_product({1, 2}, MultiIndex{1}, MultiIndex{1}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(monomial_inner_product({2, 3}, MultiIndex{1, 0}, MultiIndex{0, 1}) == 0.0);
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m <= 4; ++m) {
            const MultiIndex zero(std::vector<int>(static_cast<std::size_t>(n), 0));
            CHECK(monomial_inner_product({n, m}, zero, zero) == 1.0);
        }
    CHECK_THROWS_AS(monomial_inner_product({1, 2}, MultiIndex{3}, MultiIndex{3}), std::invalid_argument);
}

TEST_CASE("orthonormal_coefficient examples") {
    CHECK(orthonormal_coefficient({1, 2}, MultiIndex{1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(orthonormal_coefficient({3, 4}, MultiIndex{0, 0, 0}) == 1.0);
    CHECK(orthonormal_coefficient({2, 2}, MultiIndex{1, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(orthonormal_coefficient({2, 2}, MultiIndex{2, 1}), std::invalid_argument);
    const auto order = enumerate_multi_indices(3, 4);
    for (const auto& p : order.indices()) {
        const double c = orthonormal_coefficient({3, 4}, p);
        CHECK(c * c * monomial_inner_product({3, 4}, p, p) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("kernel examples") {
    Point z(2), zero = Point::Zero(2);
    z << 0.3 - 1.0i, 2.0 + 0.5i;
    for (int m = 0; m <= 5; ++m) CHECK(kernel({2, m}, z, zero) == Complex(1.0, 0.0));
    Point one(1);
    one << 1.0;
    CHECK(kernel({1, 1}, one, one) == Complex(2.0, 0.0));
    Point iz(2);
    iz << 1.0i, 0.0;
    CHECK(std::abs(kernel({2, 3}, iz, iz) - 8.0) < 1e-14);
    Point bad(2);
    bad << std::numeric_limits<double>::infinity(), 0.0;
    CHECK_THROWS(kernel({2, 1}, bad, z));
}

TEST_CASE("kernel is Hermitian and reproduces the basis expansion") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m <= 5; ++m) {
            const SpaceParams params(n, m);
            const auto order = enumerate_multi_indices(n, m);
            for (int trial = 0; trial < 100; ++trial) {
                const Point z = random_point(n, rng), w = random_point(n, rng);
                const Complex kzz = kernel(params, z, z);
                CHECK(std::abs(kzz.imag()) == 0.0);
                CHECK(kzz.real() >= 1.0);
                CHECK(std::abs(kernel(params, z, w) - std::conj(kernel(params, w, z))) <=
                      1e-12 * std::abs(kernel(params, z, w)) + 1e-300);
                const double expansion = evaluate_basis(params, order, z).squaredNorm();
                CHECK(std::abs(expansion - kzz.real()) <= 1e-12 * kzz.real());
                CHECK(std::abs(kzz.real() - std::pow(1.0 + z.squaredNorm(), m)) <= 1e-12 * kzz.real());
            }
        }
}

TEST_CASE("evaluate_basis examples") {
    const SpaceParams params(2, 3);
    const auto order = enumerate_multi_indices(2, 3);
    const Eigen::VectorXcd at_zero = evaluate_basis(params, order, Point::Zero(2));
    CHECK(at_zero(0) == Complex(1.0, 0.0));
    CHECK(at_zero.tail(at_zero.size() - 1).norm() == 0.0);

    Point two(1);
    two << 2.0;
    const Eigen::VectorXcd e = evaluate_basis({1, 1}, enumerate_multi_indices(1, 1), two);
    CHECK(e(0) == Complex(1.0, 0.0));
    CHECK(e(1) == Complex(2.0, 0.0));

    Point z(2);
    z << 0.4 + 0.2i, -1.1 + 0.7i;
    const Eigen::VectorXcd v = evaluate_basis(params, order, z);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto& p = order[pos];
        const Complex expected = orthonormal_coefficient(params, p) * std::pow(z(0), p[0]) * std::pow(z(1), p[1]);
        CHECK(std::abs(v(static_cast<Eigen::Index>(pos)) - expected) <= 1e-13 * std::abs(expected));
    }
}

TEST_CASE("sample_measure is deterministic and finite, including m = 0") {
    const auto a = sample_measure({2, 3}, 11, 50000);
    const auto b = sample_measure({2, 3}, 11, 50000);
    CHECK(a == b);
    const auto c = sample_measure({2, 3}, 12, 50000);
    CHECK(a != c);
    // a prefix of a longer stream is the shorter stream
    const auto longer = sample_measure({2, 3}, 11, 70000);
    CHECK(longer.leftCols(50000) == a);
    const auto m0 = sample_measure({3, 0}, 5, 20000);
    CHECK(m0.allFinite());
    CHECK_THROWS(sample_measure({1, 1}, 1, 0));
}

TEST_CASE("sample_measure moments") {
    SUBCASE("n=1, m=2: E|z|^2 = 1/2") {
        const auto z = sample_measure({1, 2}, 2024, 1'000'000);
        double se = 0.0;
        const double mean = moment_mean(z, MultiIndex{1}, &se);
        CHECK(std::abs(mean - 0.5) <= 3.0 * se);
    }
    SUBCASE("n=2, m=3: E|z1|^2|z2|^2 = 1/6") {
        const auto z = sample_measure({2, 3}, 99, 1'000'000);
        double se = 0.0;
        const double mean = moment_mean(z, MultiIndex{1, 1}, &se);
        CHECK(std::abs(mean - 1.0 / 6.0) <= 3.0 * se);
    }
    SUBCASE("all moments for n <= 3, m <= 4 within 4 standard errors") {
        for (int n = 1; n <= 3; ++n)
            for (int m = 1; m <= 4; ++m) {
                const SpaceParams params(n, m);
                const auto z = sample_measure(params, 1000 + static_cast<std::uint64_t>(10 * n + m), 1'000'000);
                const auto order = enumerate_multi_indices(n, m);
                for (const auto& p : order.indices()) {
                    // second moment of |z^p|^2 needs |2p| <= m for a finite variance; skip heavy tails
                    if (2 * p.degree() > m) continue;
                    double se = 0.0;
                    const double mean = moment_mean(z, p, &se);
                    CHECK(std::abs(mean - monomial_inner_product(params, p, p)) <= 4.0 * se);
                }
            }
    }
}

TEST_CASE("squared moduli follow the inverted Dirichlet marginal") {
    // for n=1 the law of s = |z|^2 has CDF 1 - (1+s)^-(m+1)
    const int m = 3;
    const auto z = sample_measure({1, m}, 4, 200000);
    for (double s : {0.1, 0.5, 1.0, 3.0}) {
        double hits = 0;
        for (Eigen::Index k = 0; k < z.cols(); ++k) hits += std::norm(z(0, k)) <= s ? 1.0 : 0.0;
        const double p = 1.0 - std::pow(1.0 + s, -(m + 1));
        const double freq = hits / static_cast<double>(z.cols());
        CHECK(std::abs(freq - p) <= 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(z.cols())));
    }
}
