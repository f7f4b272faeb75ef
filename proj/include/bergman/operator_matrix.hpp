#pragma once

#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "bergman/combinatorics.hpp"

namespace bergman {

enum class Provenance { closed_form, quadrature, monte_carlo, averaged };

std::string to_string(Provenance p);

/// Dense operator on P_m(C^n) in the orthonormal basis (e_p), rows and columns in basis order.
/// Entry (q, p) is <T e_p, e_q>.
struct OperatorMatrix {
    std::shared_ptr<const BasisOrder> order;
    Eigen::MatrixXcd entries;
    double error_estimate = 0.0;
    Provenance provenance = Provenance::closed_form;
    /// Entrywise standard errors, present for Monte Carlo estimates.
    std::optional<Eigen::MatrixXd> standard_errors;

    const SpaceParams& params() const { return order->params(); }
    Eigen::Index dimension() const { return entries.rows(); }
};

} // namespace bergman
