#include "bergman/representation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "bergman/bergman_space.hpp"
#include "bergman/linalg.hpp"
#include "bergman/parallel.hpp"
#include "bergman/random.hpp"

namespace bergman {

GroupElement make_group_element(Eigen::MatrixXcd matrix, std::optional<BlockPartition> blocks) {
    if (matrix.rows() != matrix.cols()) throw std::invalid_argument("GroupElement: matrix is not square");
    const double defect = unitarity_defect(matrix);
    if (!(defect <= unitarity_tolerance))
        throw std::invalid_argument("GroupElement: unitarity defect " + std::to_string(defect) + " exceeds 1e-12");
    if (blocks) {
        if (blocks->n() != matrix.rows()) throw std::invalid_argument("GroupElement: partition does not match size");
        for (Eigen::Index j = 0; j < matrix.cols(); ++j)
            for (Eigen::Index i = 0; i < matrix.rows(); ++i)
                if (blocks->block_of(static_cast<int>(i)) != blocks->block_of(static_cast<int>(j)) &&
                    matrix(i, j) != Complex(0.0, 0.0))
                    throw std::invalid_argument("GroupElement: nonzero entry outside the diagonal blocks");
    }
    return GroupElement{std::move(matrix), std::move(blocks)};
}

Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& engine) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = Complex(normal(engine), normal(engine));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        q.col(j) *= rjj / std::abs(rjj);
    }
    return q;
}

GroupElement haar_sample(const BlockPartition& kappa, std::uint64_t seed, std::uint64_t index) {
    auto engine = derived_engine(seed, {tag_haar, static_cast<std::uint64_t>(kappa.n()), index});
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(kappa.n(), kappa.n());
    for (int b = 0; b < kappa.block_count(); ++b) {
        const int start = kappa.block_begin(b), size = kappa.block_size(b);
        k.block(start, start, size, size) = haar_unitary(size, engine);
    }
    return GroupElement{std::move(k), kappa};
}

OperatorMatrix rep_matrix(const std::shared_ptr<const BasisOrder>& order, const GroupElement& k) {
    const SpaceParams& params = order->params();
    if (k.matrix.rows() != params.n || k.matrix.cols() != params.n)
        throw std::invalid_argument("rep_matrix: group element is not n x n");
    const double defect = unitarity_defect(k.matrix);
    if (!(defect <= 1e-10)) throw std::invalid_argument("rep_matrix: group element is not unitary");

    // (k^-1 z)_i = sum_j inv(i, j) z_j
    const Eigen::MatrixXcd inv = k.matrix.adjoint();
    const auto dim = static_cast<Eigen::Index>(order->size());
    const Eigen::VectorXd coeff = orthonormal_coefficients(*order);

    // column p of raw holds the monomial coefficients of prod_i (k^-1 z)_i^(p_i)
    Eigen::MatrixXcd raw = Eigen::MatrixXcd::Zero(dim, dim);
    raw(0, 0) = 1.0;
    for (Eigen::Index pos = 1; pos < dim; ++pos) {
        auto [par, i] = order->parent(static_cast<std::size_t>(pos));
        const int deg = (*order)[static_cast<std::size_t>(par)].degree();
        for (auto q = static_cast<Eigen::Index>(order->level_begin(deg));
             q < static_cast<Eigen::Index>(order->level_begin(deg + 1)); ++q) {
            const Complex c = raw(q, static_cast<Eigen::Index>(par));
            if (c == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < params.n; ++j)
                raw(order->raise(static_cast<std::size_t>(q), j), pos) += c * inv(i, j);
        }
    }

    OperatorMatrix out;
    out.order = order;
    out.provenance = Provenance::closed_form;
    out.entries = coeff.cwiseInverse().asDiagonal() * raw * coeff.asDiagonal();
    return out;
}

OperatorMatrix rep_matrix(const SpaceParams& params, const GroupElement& k) {
    return rep_matrix(std::make_shared<const BasisOrder>(params), k);
}

std::vector<int> block_degrees(const MultiIndex& p, const BlockPartition& kappa) {
    if (p.size() != kappa.n()) throw std::invalid_argument("block_degrees: multi-index length does not match partition");
    std::vector<int> d(static_cast<std::size_t>(kappa.block_count()), 0);
    for (int i = 0; i < p.size(); ++i) d[static_cast<std::size_t>(kappa.block_of(i))] += p[i];
    return d;
}

const IsotypicComponent& IsotypicDecomposition::component(const std::vector<int>& degrees) const {
    for (const auto& c : components)
        if (c.degrees == degrees) return c;
    throw std::out_of_range("IsotypicDecomposition: no component with the requested degree vector");
}

IsotypicDecomposition isotypic_decomposition(const SpaceParams& params, const BlockPartition& kappa) {
    if (kappa.n() != params.n)
        throw std::invalid_argument("isotypic_decomposition: partition sums to " + std::to_string(kappa.n()) +
                                    " but n = " + std::to_string(params.n));
    const BasisOrder order(params);
    const BasisOrder degree_vectors(SpaceParams(kappa.block_count(), params.m));

    IsotypicDecomposition out{params, kappa, {}, std::vector<std::size_t>(order.size())};
    out.components.resize(degree_vectors.size());
    for (std::size_t c = 0; c < degree_vectors.size(); ++c) {
        const MultiIndex& d = degree_vectors[c];
        auto& comp = out.components[c];
        comp.degrees.assign(d.entries().begin(), d.entries().end());
        comp.dimension = 1;
        for (int b = 0; b < kappa.block_count(); ++b) comp.dimension *= homogeneous_dimension(kappa.block_size(b), d[b]);
    }
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const std::size_t c = degree_vectors.position(MultiIndex(block_degrees(order[pos], kappa)));
        out.components[c].basis_positions.push_back(pos);
        out.component_of[pos] = c;
    }
    for (const auto& comp : out.components)
        if (comp.basis_positions.size() != comp.dimension)
            throw std::logic_error("isotypic_decomposition: bucket size disagrees with the dimension formula");
    return out;
}

OperatorMatrix average_operator(const SpaceParams& params, const BlockPartition& kappa, const OperatorMatrix& t,
                                int samples, std::uint64_t seed) {
    const auto dim = static_cast<Eigen::Index>(params.space_dimension());
    if (t.entries.rows() != dim || t.entries.cols() != dim)
        throw std::invalid_argument("average_operator: matrix is not of the space dimension");
    if (kappa.n() != params.n) throw std::invalid_argument("average_operator: partition does not match n");
    if (samples < 1) throw std::invalid_argument("average_operator: samples must be >= 1");

    OperatorMatrix out;
    out.order = t.order ? t.order : std::make_shared<const BasisOrder>(params);
    out.provenance = Provenance::averaged;
    const Eigen::VectorXcd diag = t.entries.diagonal();

    if (kappa.is_torus()) {
        // the torus characters t^-p are distinct, so only the diagonal survives
        out.entries = diag.asDiagonal();
        out.error_estimate = 0.0;
        return out;
    }

    // diag(pi(k) D pi(k)^*) = |pi(k)|^2 d; accumulate first and second moments per sample block
    constexpr int block = 64;
    const int blocks = (samples + block - 1) / block;
    std::vector<Eigen::VectorXcd> sums(static_cast<std::size_t>(blocks));
    std::vector<Eigen::VectorXd> squares(static_cast<std::size_t>(blocks));
    parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
        Eigen::VectorXcd s = Eigen::VectorXcd::Zero(dim);
        Eigen::VectorXd sq = Eigen::VectorXd::Zero(dim);
        const int first = static_cast<int>(b) * block, last = std::min(samples, first + block);
        for (int k = first; k < last; ++k) {
            const OperatorMatrix pk = rep_matrix(out.order, haar_sample(kappa, seed, static_cast<std::uint64_t>(k)));
            const Eigen::VectorXcd v = pk.entries.cwiseAbs2() * diag;
            s += v;
            sq += v.cwiseAbs2();
        }
        sums[b] = s;
        squares[b] = sq;
    });
    Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXd second = Eigen::VectorXd::Zero(dim);
    for (int b = 0; b < blocks; ++b) {
        mean += sums[static_cast<std::size_t>(b)];
        second += squares[static_cast<std::size_t>(b)];
    }
    mean /= static_cast<double>(samples);
    second /= static_cast<double>(samples);
    Eigen::MatrixXd se = Eigen::MatrixXd::Zero(dim, dim);
    if (samples > 1) {
        const Eigen::VectorXd var = (second - mean.cwiseAbs2()).cwiseMax(0.0) * (samples / (samples - 1.0));
        se.diagonal() = (var / samples).cwiseSqrt();
    }
    out.entries = mean.asDiagonal();
    out.error_estimate = se.norm();
    out.standard_errors = std::move(se);
    return out;
}

CommutantDimension commutant_dimension(const SpaceParams& params, const BlockPartition& kappa, int probes,
                                       int samples, std::uint64_t seed) {
    if (kappa.n() != params.n) throw std::invalid_argument("commutant_dimension: partition does not match n");
    if (probes < 1 || samples < 1) throw std::invalid_argument("commutant_dimension: probes and samples must be >= 1");
    auto order = std::make_shared<const BasisOrder>(params);
    const auto dim = static_cast<Eigen::Index>(order->size());

    // The commutant lies in the torus commutant, i.e. in the diagonal matrices.
    // On a diagonal D, ||[pi(k), D]||_F^2 = sum_pq |pi(k)_pq|^2 |d_p - d_q|^2 = d^* L_k d
    // with L_k the Laplacian of the weights |pi(k)_pq|^2 + |pi(k)_qp|^2.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < samples; ++s) {
        const OperatorMatrix pk = rep_matrix(order, haar_sample(kappa, seed, static_cast<std::uint64_t>(s)));
        Eigen::MatrixXd w = pk.entries.cwiseAbs2();
        w = w + w.transpose().eval();
        w.diagonal().setZero();
        gram += Eigen::MatrixXd(w.rowwise().sum().asDiagonal()) - w;
    }
    gram /= static_cast<double>(samples);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    // singular values of the stacked commutator map
    const Eigen::VectorXd sv = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const double largest = sv.size() ? sv.maxCoeff() : 0.0;
    const double threshold = commutant_rank_tolerance * largest;

    CommutantDimension out;
    out.spectrum.assign(sv.data(), sv.data() + sv.size());
    double largest_zero = 0.0, smallest_kept = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= threshold || largest == 0.0) {
            ++out.dimension;
            largest_zero = std::max(largest_zero, sv(i));
        } else {
            smallest_kept = std::min(smallest_kept, sv(i));
        }
    }
    const double below = largest_zero > 0.0 ? threshold / largest_zero : std::numeric_limits<double>::infinity();
    const double above = std::isfinite(smallest_kept) ? smallest_kept / threshold : std::numeric_limits<double>::infinity();
    out.margin = largest == 0.0 ? std::numeric_limits<double>::infinity() : std::min(below, above);
    out.margin_warning = out.margin < 10.0;

    // Random probes, torus-averaged (diagonal) and then projected onto the null space.
    const Eigen::MatrixXd null_basis = eig.eigenvectors().leftCols(out.dimension);
    auto engine = derived_engine(seed, {tag_probe, static_cast<std::uint64_t>(params.n), static_cast<std::uint64_t>(params.m)});
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd projected(dim, probes);
    for (int j = 0; j < probes; ++j) {
        Eigen::VectorXcd d(dim);
        for (Eigen::Index i = 0; i < dim; ++i) d(i) = Complex(normal(engine), normal(engine));
        projected.col(j) = null_basis * (null_basis.transpose() * d);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(projected);
    const Eigen::VectorXd ps = svd.singularValues();
    const double pmax = ps.size() ? ps.maxCoeff() : 0.0;
    for (Eigen::Index i = 0; i < ps.size(); ++i)
        if (pmax > 0.0 && ps(i) > commutant_rank_tolerance * pmax) ++out.probe_rank;
    return out;
}

} // namespace bergman
