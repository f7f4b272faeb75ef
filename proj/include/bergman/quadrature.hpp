#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman/bergman_space.hpp"

namespace bergman {

/// Discretization settings for the half-line and orthant rules.
///
/// Both rules map (0, inf) to (0, 1) by t = u/(1-u) and apply Gauss-Legendre
/// there. split_points are locations on (0, inf) where the integrand jumps;
/// for the orthant rule they refer to the radial sum t_1 + ... + t_s.
struct QuadratureSpec {
    int order = 64;
    std::vector<double> split_points;
    /// Largest accepted |fine - coarse|; infinity disables the convergence check.
    double tolerance = std::numeric_limits<double>::infinity();

    void validate() const;
};

struct IntegralResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Thrown when successive refinements disagree by more than the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "%.3g" rendering for diagnostics.
std::string short_number(double x);

/// Gauss-Legendre nodes and weights on (0, 1).
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached per order; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int order);

/// Largest s accepted by the orthant rule, and the node budget order^s.
inline constexpr int orthant_dimension_cap = 4;
inline constexpr std::size_t orthant_node_budget = 96ull * 96 * 96 * 96;

/// Product rule on (0, inf)^s.
///
/// The orthant is written as t = T w with T = t_1 + ... + t_s on (0, inf) and w on
/// the unit simplex. T goes through the t/(1-t) transform (split at the
/// transformed split points) and the simplex through stick-breaking, each axis
/// carrying an order-point Gauss-Legendre rule. Integrands of Dirichlet type
/// prod t_b^(a_b - 1) (1 + sum t)^(-beta) with integer exponents become
/// polynomials under this map, so the rule is exact for them once order is
/// large enough.
class OrthantRule {
public:
    OrthantRule(int s, int order, std::vector<double> split_points = {});

    int dimension() const { return s_; }
    std::size_t size() const;

    /// Calls visit(t, weight) for every node; t has length s.
    template <typename Visitor>
    void for_each(Visitor&& visit) const;

    /// Same, restricted to radial nodes [begin, end) so callers can split work.
    template <typename Visitor>
    void for_each_radial(std::size_t begin, std::size_t end, Visitor&& visit) const;

    std::size_t radial_size() const { return radial_nodes_.size(); }

private:
    int s_;
    int order_;
    std::vector<double> radial_nodes_;   // T values
    std::vector<double> radial_weights_; // including the T^(s-1)/(1-u)^2 Jacobian
    std::vector<double> simplex_nodes_; // w, s entries per node, flattened
    std::vector<double> simplex_weights_;
};

/// (fine, coarse) orders for the error estimate: (2*order, order), or
/// (order, order/2) when the doubled rule would exceed the node budget.
std::pair<int, int> orthant_refinement(int s, int order);

IntegralResult integrate_halfline(const std::function<double(double)>& f, const QuadratureSpec& spec);

IntegralResult integrate_orthant(const std::function<double(std::span<const double>)>& f, int s,
                                 const QuadratureSpec& spec);

/// Monte Carlo estimate of the integral of g against nu_m with its standard error.
IntegralResult mc_expectation(const SpaceParams& params, const std::function<Complex(const Point&)>& g,
                              std::size_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------

template <typename Visitor>
void OrthantRule::for_each(Visitor&& visit) const {
    for_each_radial(0, radial_nodes_.size(), visit);
}

template <typename Visitor>
void OrthantRule::for_each_radial(std::size_t begin, std::size_t end, Visitor&& visit) const {
    std::vector<double> t(static_cast<std::size_t>(s_));
    for (std::size_t r = begin; r < end; ++r) {
        const double T = radial_nodes_[r];
        for (std::size_t k = 0; k < simplex_weights_.size(); ++k) {
            const double* w = simplex_nodes_.data() + k * static_cast<std::size_t>(s_);
            for (int b = 0; b < s_; ++b) t[static_cast<std::size_t>(b)] = T * w[b];
            visit(std::span<const double>(t), radial_weights_[r] * simplex_weights_[k]);
        }
    }
}

} // namespace bergman
