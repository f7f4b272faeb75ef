#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bergman/combinatorics.hpp"
#include "bergman/operator_matrix.hpp"
#include "bergman/partition.hpp"

namespace bergman {

/// Unitary n x n matrix, optionally known to be block diagonal for a partition.
struct GroupElement {
    Eigen::MatrixXcd matrix;
    std::optional<BlockPartition> block_structure;
};

inline constexpr double unitarity_tolerance = 1e-12;

/// Validates unitarity (defect <= 1e-12) and, when given, the block structure.
GroupElement make_group_element(Eigen::MatrixXcd matrix, std::optional<BlockPartition> blocks = std::nullopt);

/// Haar-distributed d x d unitary: QR of a complex Gaussian matrix with the
/// phases of diag(R) moved into Q.
Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& engine);

/// Block-diagonal Haar sample of U(k_1) x ... x U(k_s); deterministic in (seed, index).
GroupElement haar_sample(const BlockPartition& kappa, std::uint64_t seed, std::uint64_t index = 0);

/// Matrix of pi_m(k): (pi_m(k) f)(z) = f(k^-1 z), on the orthonormal basis.
OperatorMatrix rep_matrix(const std::shared_ptr<const BasisOrder>& order, const GroupElement& k);
OperatorMatrix rep_matrix(const SpaceParams& params, const GroupElement& k);

/// (d_1, ..., d_s): total degree of p inside each block.
std::vector<int> block_degrees(const MultiIndex& p, const BlockPartition& kappa);

struct IsotypicComponent {
    std::vector<int> degrees;
    std::size_t dimension = 0;
    std::vector<std::size_t> basis_positions;
};

/// Splitting of P_m(C^n) under U(k_1) x ... x U(k_s) into the spans of the
/// monomials with a fixed block-degree vector. Components are listed with their
/// degree vectors in graded lexicographic order.
struct IsotypicDecomposition {
    SpaceParams params;
    BlockPartition partition;
    std::vector<IsotypicComponent> components;
    /// Component index of each basis position.
    std::vector<std::size_t> component_of;

    std::size_t component_count() const { return components.size(); }
    const IsotypicComponent& component(const std::vector<int>& degrees) const;
};

IsotypicDecomposition isotypic_decomposition(const SpaceParams& params, const BlockPartition& kappa);

/// Haar average of k -> pi(k) T pi(k)^-1 over K_kappa.
///
/// The torus part is exact (diagonal extraction). For a larger group the
/// diagonal of T is pushed through `samples` Haar conjugations and diagonalized
/// again, which is an unbiased estimator since the torus is inside K.
OperatorMatrix average_operator(const SpaceParams& params, const BlockPartition& kappa, const OperatorMatrix& t,
                                int samples, std::uint64_t seed);

struct CommutantDimension {
    int dimension = 0;
    /// Separation of the rank decision from the threshold (>= 1 means a clean cut).
    double margin = 0.0;
    bool margin_warning = false;
    /// Spectrum of the commutator Gram operator on the torus commutant, ascending.
    std::vector<double> spectrum;
    /// Rank of the span of the projected random probes.
    int probe_rank = 0;
};

inline constexpr double commutant_rank_tolerance = 1e-6;

/// Dimension of the commutant of pi_m(K_kappa), i.e. sum of squared multiplicities.
CommutantDimension commutant_dimension(const SpaceParams& params, const BlockPartition& kappa, int probes,
                                       int samples, std::uint64_t seed);

} // namespace bergman
