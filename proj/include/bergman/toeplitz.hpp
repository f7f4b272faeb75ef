#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bergman/operator_matrix.hpp"
#include "bergman/partition.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/representation.hpp"
#include "bergman/symbols.hpp"

namespace bergman {

struct MonteCarloMethod {
    std::size_t count = 1'000'000;
    std::uint64_t seed = 0;
};

using MatrixMethod = std::variant<QuadratureSpec, MonteCarloMethod>;

/// Matrix of T_a on P_m(C^n): entry (q, p) = integral of a e_p conj(e_q) against nu_m.
///
/// Quadrature needs a symbol that is at least torus invariant. The phase
/// integrals then vanish off the diagonal, and each diagonal entry
///   (n+m)!/(p!(m-|p|)!) * int a(sqrt t) prod t_i^p_i (1 + sum t)^-(n+m+1) dt
/// is an n-dimensional orthant integral. When the symbol is invariant under a
/// coarser block group, or n is above the orthant cap, the integral is reduced
/// to the blocks of the symbol's own partition.
///
/// Monte Carlo estimates every entry from one stream of samples of nu_0,
/// reweighted to nu_m, and records entrywise standard errors.
OperatorMatrix toeplitz_matrix(const SpaceParams& params, const Symbol& a, const MatrixMethod& method);

struct SpectrumEntry {
    std::vector<int> degrees;
    Complex eigenvalue;
    std::size_t dimension = 0;
    double error_estimate = 0.0;
};

struct SpectrumTable {
    SpaceParams params;
    BlockPartition partition;
    std::vector<SpectrumEntry> entries;
    /// Eigenvalue of the component of each basis position, in basis order.
    std::vector<Complex> per_index;
    std::string method;
    double error_estimate = 0.0;

    const SpectrumEntry& entry(const std::vector<int>& degrees) const;
};

/// Eigenvalues of T_a on the isotypic components of U(k_1) x ... x U(k_s):
///   C(d) * int_{(0,inf)^s} a(sqrt t) prod_b t_b^(k_b+d_b-1) (1 + sum t)^-(n+m+1) dt,
///   C(d) = (n+m)! / (prod_b (k_b+d_b-1)! (m-|d|)!)
/// where a(sqrt t) is the symbol at block norms sqrt(t_b).
SpectrumTable block_radial_spectrum(const SpaceParams& params, const BlockPartition& kappa, const Symbol& a,
                                    const QuadratureSpec& spec);

/// Monomial coefficients of prod_b f_{d_b}(z^(b)), f_k(z) = sum_{|q|=k} sqrt(C(k,q)) z^q.
Eigen::VectorXd representative_vector(const SpaceParams& params, const BlockPartition& kappa,
                                      const std::vector<int>& degrees);

/// ||f||_m^2 of a polynomial given by monomial coefficients.
double polynomial_norm_squared(const SpaceParams& params, const Eigen::VectorXd& monomial_coefficients);

/// <T f, f> / <f, f> for f given by monomial coefficients.
Complex rayleigh_quotient(const OperatorMatrix& t, const Eigen::VectorXd& monomial_coefficients);

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<Check> checks;
    bool all_passed() const;
};

/// Compares the closed-form spectrum with a Monte Carlo matrix of the same symbol:
/// off-diagonal mass, component eigenvalues, and the commutator with a second
/// K-invariant symbol (block_weight(1) on kappa when none is given). Statistical
/// tolerances are `sigmas` standard errors.
VerificationReport spectrum_vs_matrix(const SpaceParams& params, const BlockPartition& kappa, const Symbol& a,
                                      const QuadratureSpec& spec, const MonteCarloMethod& mc,
                                      const std::optional<Symbol>& second = std::nullopt, double sigmas = 4.0);

double commutator_norm(const OperatorMatrix& t1, const OperatorMatrix& t2);

} // namespace bergman
