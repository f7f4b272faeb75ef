#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bergman/combinatorics.hpp"

namespace bergman {

using Complex = std::complex<double>;
/// A point of C^n in inhomogeneous coordinates.
using Point = Eigen::VectorXcd;

/// <z^p, z^q>_m = delta_pq * p!(m-|p|)!/m!
double monomial_inner_product(const SpaceParams& params, const MultiIndex& p, const MultiIndex& q);

/// Coefficient c_p with e_p = c_p z^p orthonormal: c_p = sqrt(m!/(p!(m-|p|)!)).
double orthonormal_coefficient(const SpaceParams& params, const MultiIndex& p);

/// All coefficients c_p laid out in basis order.
Eigen::VectorXd orthonormal_coefficients(const BasisOrder& order);

/// Reproducing kernel K_m(z, w) = (1 + <z, w>)^m.
Complex kernel(const SpaceParams& params, const Point& z, const Point& w);

/// Values (e_p(z))_p in basis order.
Eigen::VectorXcd evaluate_basis(const SpaceParams& params, const BasisOrder& order, const Point& z);

/// Reusable evaluator of the orthonormal basis; keeps the coefficient table.
class BasisEvaluator {
public:
    explicit BasisEvaluator(const BasisOrder& order);

    const BasisOrder& order() const { return *order_; }

    /// Writes e_p(z) for every p into out (length = order.size()).
    template <typename Vec, typename Out>
    void evaluate(const Vec& z, Out&& out) const {
        const auto dim = static_cast<Eigen::Index>(order_->size());
        out(0) = Complex(1.0, 0.0);
        // raw monomials first: z^p = z^(p - e_i) * z_i
        for (Eigen::Index pos = 1; pos < dim; ++pos) {
            auto [par, i] = order_->parent(static_cast<std::size_t>(pos));
            out(pos) = out(static_cast<Eigen::Index>(par)) * z(i);
        }
        for (Eigen::Index pos = 0; pos < dim; ++pos) out(pos) *= coefficients_(pos);
    }

    const Eigen::VectorXd& coefficients() const { return coefficients_; }

private:
    const BasisOrder* order_;
    Eigen::VectorXd coefficients_;
};

/// Independent samples from nu_m, generated in fixed-size chunks so that every
/// chunk has its own engine derived from (seed, n, m, chunk index).
class MeasureSampler {
public:
    static constexpr std::size_t chunk_size = 1u << 14;

    MeasureSampler(SpaceParams params, std::uint64_t seed);

    const SpaceParams& params() const { return params_; }

    /// Fills the columns of out (n x count) with samples [chunk*chunk_size, chunk*chunk_size + count).
    void fill_chunk(std::size_t chunk, Eigen::Ref<Eigen::MatrixXcd> out) const;

private:
    SpaceParams params_;
    std::uint64_t seed_;
};

/// count samples of nu_m as the columns of an n x count matrix; deterministic in seed.
Eigen::MatrixXcd sample_measure(const SpaceParams& params, std::uint64_t seed, std::size_t count);

} // namespace bergman
