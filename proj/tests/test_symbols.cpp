#include "doctest.h"

#include <cmath>
#include <random>

#include "bergman/representation.hpp"
#include "bergman/symbols.hpp"

using namespace bergman;
using namespace std::complex_literals;

namespace {

Point random_point(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Point z(n);
    for (int i = 0; i < n; ++i) z(i) = Complex(g(rng), g(rng));
    return z;
}

std::vector<Symbol> catalogue_for(const BlockPartition& kappa) {
    return {make_symbol("constant", {{"c", 2.5}}),
            make_symbol("coordinate_weight", {{"i", 1}}),
            make_symbol("coordinate_weight", {{"i", kappa.n()}}),
            make_symbol("block_weight", {{"b", 1}}, kappa),
            make_symbol("total_weight", {}),
            make_symbol("ball_indicator", {{"R", 1.0}}),
            make_symbol("gaussian", {{"alpha", 0.7}})};
}

} // namespace

TEST_CASE("make_symbol examples") {
    Point z(3);
    z << 0.2, -1.0i, 3.0;
    CHECK(evaluate(make_symbol("constant", {{"c", 1}}), z) == Complex(1.0, 0.0));
    Point e1(3);
    e1 << 1.0, 0.0, 0.0;
    CHECK(evaluate(make_symbol("coordinate_weight", {{"i", 1}}), e1) == Complex(0.5, 0.0));
    Point two(2);
    two << 2.0, 0.0;
    CHECK(evaluate(make_symbol("ball_indicator", {{"R", 1}}), two) == Complex(0.0, 0.0));
    Point one(2);
    one << 0.6, 0.8i;
    CHECK(evaluate(make_symbol("ball_indicator", {{"R", 1}}), one * 0.999) == Complex(1.0, 0.0));
}

TEST_CASE("evaluate examples") {
    Point z(2);
    z << 1.0 + 1.0i, 1.0;
    CHECK(evaluate(make_symbol("constant", {{"c", -3}, {"c_im", 2}}), z) == Complex(-3.0, 2.0));
    CHECK(evaluate(make_symbol("total_weight", {}), z) == Complex(0.75, 0.0));
    CHECK(evaluate(make_symbol("gaussian", {{"alpha", 1}}), Point::Zero(4)) == Complex(1.0, 0.0));
    Point bad(1);
    bad << std::nan("");
    CHECK_THROWS(evaluate(make_symbol("total_weight", {}), bad));
}

TEST_CASE("make_symbol assigns the documented invariance classes") {
    const BlockPartition k21({2, 1});
    CHECK(make_symbol("constant", {{"c", 1}}).invariance().kind == InvarianceKind::unitary);
    CHECK(make_symbol("total_weight", {}).invariance().kind == InvarianceKind::unitary);
    CHECK(make_symbol("ball_indicator", {{"R", 2}}).invariance().kind == InvarianceKind::unitary);
    CHECK(make_symbol("gaussian", {{"alpha", 1}}).invariance().kind == InvarianceKind::unitary);
    CHECK(make_symbol("coordinate_weight", {{"i", 2}}).invariance().kind == InvarianceKind::torus);
    CHECK(make_symbol("block_weight", {{"b", 1}}, k21).invariance().kind == InvarianceKind::block);
    CHECK(make_symbol("phase", {{"i", 1}}).invariance().kind == InvarianceKind::general);
    CHECK(make_symbol("ball_indicator", {{"R", 2}}).radial_jumps() == std::vector<double>{4.0});
}

TEST_CASE("make_symbol rejects bad input") {
    CHECK_THROWS_AS(make_symbol("coordinate_weight", {{"i", 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_symbol("coordinate_weight", {{"i", 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_symbol("ball_indicator", {{"R", -1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_symbol("gaussian", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_symbol("block_weight", {{"b", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_symbol("block_weight", {{"b", 3}}, BlockPartition({2, 1})), std::invalid_argument);
    try {
        make_symbol("sinc", {});
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        for (const auto& name : symbol_catalogue()) CHECK(what.find(name) != std::string::npos);
    }
}

TEST_CASE("invariance containment follows partition refinement") {
    const BlockPartition t3 = BlockPartition::torus(3), k21({2, 1}), k12({1, 2}), full = BlockPartition::full(3);
    CHECK(Invariance::unitary().contains(k21));
    CHECK(Invariance::torus().contains(t3));
    CHECK_FALSE(Invariance::torus().contains(k21));
    CHECK(Invariance::block(k21).contains(t3));
    CHECK(Invariance::block(k21).contains(k21));
    CHECK_FALSE(Invariance::block(k21).contains(k12));
    CHECK_FALSE(Invariance::block(k21).contains(full));
    CHECK_FALSE(Invariance::general().contains(t3));
    CHECK(invariance_meet(Invariance::block(k21), Invariance::block(k12), 3).kind == InvarianceKind::torus);
    CHECK(invariance_meet(Invariance::unitary(), Invariance::block(k21), 3).kind == InvarianceKind::block);
}

TEST_CASE("catalogue symbols honor their declared invariance") {
    std::mt19937_64 rng(31);
    for (const auto& kappa : all_block_partitions(3)) {
        for (const auto& a : catalogue_for(kappa)) {
            const auto group = a.invariance().group(3);
            REQUIRE(group);
            for (int trial = 0; trial < 100; ++trial) {
                const auto k = haar_sample(*group, 77, static_cast<std::uint64_t>(trial));
                const Point z = random_point(3, rng);
                const Point kz = k.matrix * z;
                // ball_indicator may flip right at the boundary; random points avoid it almost surely
                CHECK(std::abs(a(kz) - a(z)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("radialize_torus examples") {
    std::mt19937_64 rng(5);
    const auto c = radialize_torus(make_symbol("constant", {{"c", 1.25}}), 6);
    const auto phase_avg = radialize_torus(make_symbol("phase", {{"i", 1}}), 8);
    const auto general = affine_combination(1.0, make_symbol("phase", {{"i", 2}}), 0.5,
                                            make_symbol("coordinate_weight", {{"i", 1}}), 2);
    const auto once = radialize_torus(general, 8);
    const auto twice = radialize_torus(once, 8);
    CHECK(c.invariance().kind == InvarianceKind::torus);
    for (int trial = 0; trial < 100; ++trial) {
        const Point z = random_point(2, rng);
        CHECK(std::abs(c(z) - 1.25) <= 1e-15);
        CHECK(std::abs(phase_avg(z)) <= 1e-15);
        CHECK(std::abs(twice(z) - once(z)) <= 1e-12);
        // the torus average of phase(2) vanishes, leaving the torus invariant part
        CHECK(std::abs(once(z) - 0.5 * make_symbol("coordinate_weight", {{"i", 1}})(z)) <= 1e-12);
    }
    CHECK_THROWS(radialize_torus(c, 0));
}

TEST_CASE("radialize_block examples") {
    std::mt19937_64 rng(8);
    SUBCASE("invariant input is returned up to Monte Carlo error") {
        const BlockPartition k21({2, 1});
        const auto a = make_symbol("block_weight", {{"b", 1}}, k21);
        const auto avg = radialize_block(a, k21, 64, 3);
        CHECK(avg.invariance().kind == InvarianceKind::block);
        for (int trial = 0; trial < 20; ++trial) {
            const Point z = random_point(3, rng);
            CHECK(std::abs(avg(z) - a(z)) <= 1e-12);
        }
    }
    SUBCASE("full group: coordinate_weight(1) averages to total_weight/n") {
        const auto a = make_symbol("coordinate_weight", {{"i", 1}});
        const auto total = make_symbol("total_weight", {});
        std::vector<Eigen::MatrixXcd> rotations;
        for (int s = 0; s < 4000; ++s) rotations.push_back(haar_sample(BlockPartition::full(3), 17, static_cast<std::uint64_t>(s)).matrix);
        for (int trial = 0; trial < 20; ++trial) {
            const Point z = random_point(3, rng);
            const auto r = haar_average(a, rotations, z);
            CHECK(std::abs(r.value - total(z) / 3.0) <= 3.0 * r.error_estimate + 1e-15);
        }
        CHECK(radialize_block(a, BlockPartition::full(3), 4, 1).invariance().kind == InvarianceKind::unitary);
    }
    SUBCASE("torus partition agrees with radialize_torus") {
        const auto a = affine_combination(1.0, make_symbol("phase", {{"i", 1}}), 1.0, make_symbol("gaussian", {{"alpha", 0.3}}), 2);
        const auto exact = radialize_torus(a, 16);
        std::vector<Eigen::MatrixXcd> rotations;
        for (int s = 0; s < 2000; ++s) rotations.push_back(haar_sample(BlockPartition::torus(2), 23, static_cast<std::uint64_t>(s)).matrix);
        int within = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const Point z = random_point(2, rng);
            const auto r = haar_average(a, rotations, z);
            within += std::abs(r.value - exact(z)) <= 4.0 * r.error_estimate + 1e-12;
        }
        CHECK(within >= 99);
    }
}

TEST_CASE("averaging is linear and positivity preserving") {
    std::mt19937_64 rng(12);
    const auto a = make_symbol("phase", {{"i", 1}});
    const auto b = make_symbol("coordinate_weight", {{"i", 2}});
    const auto lhs = radialize_torus(affine_combination(2.0, a, -3.0, b, 2), 8);
    const auto ra = radialize_torus(a, 8), rb = radialize_torus(b, 8);
    const auto pos = radialize_block(make_symbol("phase", {{"i", 1}}), BlockPartition::full(2), 32, 4);
    const auto nonneg = radialize_block(affine_combination(1.0, make_symbol("constant", {{"c", 1}}), 1.0, a, 2),
                                        BlockPartition::full(2), 32, 4);
    for (int trial = 0; trial < 100; ++trial) {
        const Point z = random_point(2, rng);
        CHECK(std::abs(lhs(z) - (2.0 * ra(z) - 3.0 * rb(z))) <= 1e-12);
        CHECK(nonneg(z).real() >= 0.0);
        CHECK(std::abs(pos(z).real()) <= 1.0);
    }
}
