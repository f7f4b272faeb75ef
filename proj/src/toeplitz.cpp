#include "bergman/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bergman/bergman_space.hpp"
#include "bergman/linalg.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

namespace {

std::vector<double> merged_splits(const QuadratureSpec& spec, const Symbol& a) {
    std::vector<double> splits = spec.split_points;
    splits.insert(splits.end(), a.radial_jumps().begin(), a.radial_jumps().end());
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    return splits;
}

// Integrals  sum_nodes w * base(t) * t^d  for every d in `moments` (J_s(m) in basis order).
template <typename Base>
Eigen::VectorXcd orthant_moments(const OrthantRule& rule, const BasisOrder& moments, const Base& base) {
    const auto size = static_cast<Eigen::Index>(moments.size());
    const std::size_t radial = rule.radial_size();
    const std::size_t chunks = std::min<std::size_t>(radial, 64);
    std::vector<Eigen::VectorXd> partial_re(chunks, Eigen::VectorXd::Zero(size));
    std::vector<Eigen::VectorXd> partial_im(chunks, Eigen::VectorXd::Zero(size));
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t begin = c * radial / chunks, end = (c + 1) * radial / chunks;
        Eigen::VectorXd mono(size);
        Eigen::VectorXd& acc_re = partial_re[c];
        Eigen::VectorXd& acc_im = partial_im[c];
        rule.for_each_radial(begin, end, [&](std::span<const double> t, double w) {
            const Complex b = w * base(t);
            if (b == Complex(0.0, 0.0)) return;
            mono(0) = 1.0;
            for (Eigen::Index pos = 1; pos < size; ++pos) {
                auto [par, i] = moments.parent(static_cast<std::size_t>(pos));
                mono(pos) = mono(static_cast<Eigen::Index>(par)) * t[static_cast<std::size_t>(i)];
            }
            acc_re += b.real() * mono;
            if (b.imag() != 0.0) acc_im += b.imag() * mono;
        });
    });
    Eigen::VectorXcd total = Eigen::VectorXcd::Zero(size);
    for (std::size_t c = 0; c < chunks; ++c) {
        total.real() += partial_re[c];
        total.imag() += partial_im[c];
    }
    return total;
}

// Integrals at the fine and coarse order; returns fine values and |fine - coarse| entrywise.
template <typename Base>
std::pair<Eigen::VectorXcd, Eigen::VectorXd> refined_moments(int s, const QuadratureSpec& spec,
                                                              const std::vector<double>& splits,
                                                              const BasisOrder& moments, const Base& base) {
    auto [fine_order, coarse_order] = orthant_refinement(s, spec.order);
    const Eigen::VectorXcd coarse = orthant_moments(OrthantRule(s, coarse_order, splits), moments, base);
    const Eigen::VectorXcd fine = orthant_moments(OrthantRule(s, fine_order, splits), moments, base);
    return {fine, (fine - coarse).cwiseAbs()};
}

// (1 + sum t)^-(n+m+1)
double dirichlet_tail(std::span<const double> t, int exponent) {
    double sum = 1.0;
    for (double x : t) sum += x;
    return std::pow(sum, -exponent);
}

void check_converged(const Eigen::VectorXcd& values, double error, const QuadratureSpec& spec, const char* what) {
    if (!values.allFinite()) throw ConvergenceError(std::string(what) + ": non-finite integral");
    if (error > spec.tolerance)
        throw ConvergenceError(std::string(what) + ": refinements disagree by " + short_number(error) +
                               " > tolerance " + short_number(spec.tolerance));
}

OperatorMatrix toeplitz_by_quadrature(const SpaceParams& params, const Symbol& a, const QuadratureSpec& spec) {
    spec.validate();
    const auto group = a.invariance().group(params.n);
    if (!group)
        throw std::invalid_argument("toeplitz_matrix: quadrature requires a torus, block or unitary invariant symbol");
    auto order = std::make_shared<const BasisOrder>(params);
    const auto dim = static_cast<Eigen::Index>(order->size());
    const int tail = params.n + params.m + 1;
    const auto splits = merged_splits(spec, a);

    OperatorMatrix out;
    out.order = order;
    out.provenance = Provenance::quadrature;
    out.entries = Eigen::MatrixXcd::Zero(dim, dim);

    if (params.n <= orthant_dimension_cap && group->is_torus()) {
        // coordinate-wise: z_i = sqrt(t_i)
        auto base = [&](std::span<const double> t) {
            Point z(params.n);
            for (int i = 0; i < params.n; ++i) z(i) = std::sqrt(t[static_cast<std::size_t>(i)]);
            return a(z) * dirichlet_tail(t, tail);
        };
        auto [values, errors] = refined_moments(params.n, spec, splits, *order, base);
        for (Eigen::Index pos = 0; pos < dim; ++pos) {
            const MultiIndex& p = (*order)[static_cast<std::size_t>(pos)];
            std::vector<int> den(p.entries().begin(), p.entries().end());
            den.push_back(params.m - p.degree());
            const int num[] = {params.n + params.m};
            const double c = factorial_ratio(num, den);
            values(pos) *= c;
            errors(pos) *= c;
        }
        out.entries.diagonal() = values;
        out.error_estimate = errors.norm();
        check_converged(values, errors.maxCoeff(), spec, "toeplitz_matrix");
    } else {
        const SpectrumTable table = block_radial_spectrum(params, *group, a, spec);
        for (Eigen::Index pos = 0; pos < dim; ++pos) out.entries(pos, pos) = table.per_index[static_cast<std::size_t>(pos)];
        double err2 = 0.0;
        for (const auto& e : table.entries) err2 += static_cast<double>(e.dimension) * e.error_estimate * e.error_estimate;
        out.error_estimate = std::sqrt(err2);
    }
    return out;
}

OperatorMatrix toeplitz_by_monte_carlo(const SpaceParams& params, const Symbol& a, const MonteCarloMethod& mc) {
    if (mc.count < 2) throw std::invalid_argument("toeplitz_matrix: Monte Carlo count must be >= 2");
    auto order = std::make_shared<const BasisOrder>(params);
    const auto dim = static_cast<Eigen::Index>(order->size());
    // Samples come from nu_0 and carry the weight dnu_m/dnu_0 = C(n+m, n) (1+|z|^2)^-m.
    // Sampling nu_m directly gives the top-degree entries infinite variance, since
    // |e_p|^4 is not nu_m-integrable for |p| = m >= 1; with the weight every
    // integrand a e_p conj(e_q) w is bounded.
    const MeasureSampler sampler(SpaceParams(params.n, 0), mc.seed);
    const double normalizer = binomial(params.n + params.m, params.n).convert_to<double>();
    const BasisEvaluator basis(*order);
    const std::size_t chunks = (mc.count + MeasureSampler::chunk_size - 1) / MeasureSampler::chunk_size;

    std::vector<Eigen::MatrixXcd> first(chunks);
    std::vector<Eigen::MatrixXd> second(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t start = c * MeasureSampler::chunk_size;
        const auto len = static_cast<Eigen::Index>(std::min(MeasureSampler::chunk_size, mc.count - start));
        Eigen::MatrixXcd z(params.n, len);
        sampler.fill_chunk(c, z);
        // rows: samples, columns: basis functions
        Eigen::MatrixXcd e(len, dim);
        Eigen::VectorXcd av(len);
        Eigen::VectorXcd row(dim);
        Point col(params.n);
        for (Eigen::Index k = 0; k < len; ++k) {
            col = z.col(k);
            basis.evaluate(col, row);
            e.row(k) = row.transpose();
            av(k) = a(col) * (normalizer * std::pow(1.0 + col.squaredNorm(), -params.m));
        }
        // sum_k conj(e_q) a e_p  and  sum_k |e_q|^2 |a|^2 |e_p|^2
        first[c].noalias() = e.adjoint() * (av.asDiagonal() * e);
        const Eigen::MatrixXd e2 = e.cwiseAbs2();
        second[c].noalias() = e2.transpose() * (av.cwiseAbs2().asDiagonal() * e2);
    });

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXd sum2 = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t c = 0; c < chunks; ++c) {
        sum += first[c];
        sum2 += second[c];
    }
    const double n = static_cast<double>(mc.count);
    const Eigen::MatrixXcd mean = sum / n;
    const Eigen::MatrixXd var = ((sum2 / n - mean.cwiseAbs2()).cwiseMax(0.0)) * (n / (n - 1.0));

    OperatorMatrix out;
    out.order = order;
    out.provenance = Provenance::monte_carlo;
    out.standard_errors = (var / n).cwiseSqrt();
    out.error_estimate = out.standard_errors->norm();
    if (a.real_valued()) {
        const double asym = hermitian_defect(mean);
        out.entries = 0.5 * (mean + mean.adjoint());
        out.error_estimate += 0.5 * asym;
    } else {
        out.entries = mean;
    }
    return out;
}

} // namespace

OperatorMatrix toeplitz_matrix(const SpaceParams& params, const Symbol& a, const MatrixMethod& method) {
    if (const auto* q = std::get_if<QuadratureSpec>(&method)) return toeplitz_by_quadrature(params, a, *q);
    return toeplitz_by_monte_carlo(params, a, std::get<MonteCarloMethod>(method));
}

const SpectrumEntry& SpectrumTable::entry(const std::vector<int>& degrees) const {
    for (const auto& e : entries)
        if (e.degrees == degrees) return e;
    throw std::out_of_range("SpectrumTable: no entry for the requested degree vector");
}

SpectrumTable block_radial_spectrum(const SpaceParams& params, const BlockPartition& kappa, const Symbol& a,
                                    const QuadratureSpec& spec) {
    spec.validate();
    if (kappa.n() != params.n)
        throw std::invalid_argument("block_radial_spectrum: partition sums to " + std::to_string(kappa.n()) +
                                    " but n = " + std::to_string(params.n));
    if (!a.invariance().contains(kappa))
        throw std::invalid_argument("block_radial_spectrum: symbol invariance " + a.invariance().name() +
                                    " does not contain the group of partition " + kappa.to_string());
    const int s = kappa.block_count();
    const int tail = params.n + params.m + 1;
    const BasisOrder degrees(SpaceParams(s, params.m));
    const auto splits = merged_splits(spec, a);

    // symbol at block norms sqrt(t_b) (first coordinate of each block), times prod t_b^(k_b - 1)
    auto base = [&](std::span<const double> t) {
        Point z = Point::Zero(params.n);
        double weight = dirichlet_tail(t, tail);
        for (int b = 0; b < s; ++b) {
            const double tb = t[static_cast<std::size_t>(b)];
            z(kappa.block_begin(b)) = std::sqrt(tb);
            weight *= std::pow(tb, kappa.block_size(b) - 1);
        }
        return a(z) * weight;
    };
    auto [values, errors] = refined_moments(s, spec, splits, degrees, base);

    SpectrumTable table{params, kappa, {}, {}, "quadrature(order=" + std::to_string(spec.order) + ")", 0.0};
    for (std::size_t pos = 0; pos < degrees.size(); ++pos) {
        const MultiIndex& d = degrees[pos];
        std::vector<int> den;
        std::size_t dimension = 1;
        for (int b = 0; b < s; ++b) {
            den.push_back(kappa.block_size(b) + d[b] - 1);
            dimension *= homogeneous_dimension(kappa.block_size(b), d[b]);
        }
        den.push_back(params.m - d.degree());
        const int num[] = {params.n + params.m};
        const double c = factorial_ratio(num, den);
        const auto i = static_cast<Eigen::Index>(pos);
        table.entries.push_back({std::vector<int>(d.entries().begin(), d.entries().end()), c * values(i), dimension,
                                 c * errors(i)});
        table.error_estimate = std::max(table.error_estimate, c * errors(i));
    }
    Eigen::VectorXcd scaled(static_cast<Eigen::Index>(table.entries.size()));
    for (std::size_t k = 0; k < table.entries.size(); ++k) scaled(static_cast<Eigen::Index>(k)) = table.entries[k].eigenvalue;
    check_converged(scaled, table.error_estimate, spec, "block_radial_spectrum");

    const BasisOrder order(params);
    table.per_index.reserve(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        table.per_index.push_back(table.entries[degrees.position(MultiIndex(block_degrees(order[pos], kappa)))].eigenvalue);
    return table;
}

Eigen::VectorXd representative_vector(const SpaceParams& params, const BlockPartition& kappa,
                                      const std::vector<int>& degrees) {
    if (kappa.n() != params.n) throw std::invalid_argument("representative_vector: partition does not match n");
    if (static_cast<int>(degrees.size()) != kappa.block_count())
        throw std::invalid_argument("representative_vector: degree vector length does not match block count");
    int total = 0;
    for (int d : degrees) {
        if (d < 0) throw std::invalid_argument("representative_vector: negative degree");
        total += d;
    }
    if (total > params.m) throw std::invalid_argument("representative_vector: |d| exceeds m");

    const BasisOrder order(params);
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(order.size()));
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const MultiIndex& p = order[pos];
        if (block_degrees(p, kappa) != degrees) continue;
        double c = 1.0;
        for (int b = 0; b < kappa.block_count(); ++b) {
            const auto first = p.entries().begin() + kappa.block_begin(b);
            const MultiIndex sub(std::vector<int>(first, first + kappa.block_size(b)));
            c *= std::sqrt(multinomial(sub.degree(), sub).convert_to<double>());
        }
        coeff(static_cast<Eigen::Index>(pos)) = c;
    }
    return coeff;
}

double polynomial_norm_squared(const SpaceParams& params, const Eigen::VectorXd& coefficients) {
    const BasisOrder order(params);
    if (coefficients.size() != static_cast<Eigen::Index>(order.size()))
        throw std::invalid_argument("polynomial_norm_squared: coefficient vector has the wrong length");
    double sum = 0.0;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const double c = coefficients(static_cast<Eigen::Index>(pos));
        if (c != 0.0) sum += c * c * monomial_inner_product(params, order[pos], order[pos]);
    }
    return sum;
}

Complex rayleigh_quotient(const OperatorMatrix& t, const Eigen::VectorXd& coefficients) {
    // orthonormal-basis coordinates: z^p = e_p / c_p
    const Eigen::VectorXd c = orthonormal_coefficients(*t.order);
    const Eigen::VectorXcd v = coefficients.cwiseQuotient(c).cast<Complex>();
    return v.dot(t.entries * v) / v.squaredNorm();
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

VerificationReport spectrum_vs_matrix(const SpaceParams& params, const BlockPartition& kappa, const Symbol& a,
                                      const QuadratureSpec& spec, const MonteCarloMethod& mc,
                                      const std::optional<Symbol>& second, double sigmas) {
    const SpectrumTable table = block_radial_spectrum(params, kappa, a, spec);
    const OperatorMatrix t = toeplitz_matrix(params, a, mc);
    const Eigen::MatrixXd& se = *t.standard_errors;
    const IsotypicDecomposition decomposition = isotypic_decomposition(params, kappa);
    VerificationReport report;

    {
        Check c{"off_diagonal", 0.0, 0.0, true};
        for (Eigen::Index j = 0; j < t.dimension(); ++j)
            for (Eigen::Index i = 0; i < t.dimension(); ++i) {
                if (i == j) continue;
                const double mag = std::abs(t.entries(i, j));
                c.value = std::max(c.value, mag);
                c.tolerance = std::max(c.tolerance, sigmas * se(i, j));
                if (mag > sigmas * se(i, j)) c.passed = false;
            }
        report.checks.push_back(c);
    }
    {
        Check c{"component_eigenvalues", 0.0, 0.0, true};
        double worst_ratio = -1.0;
        for (std::size_t k = 0; k < decomposition.components.size(); ++k) {
            const auto& comp = decomposition.components[k];
            Complex mean(0.0, 0.0);
            double se_mean = 0.0;
            for (std::size_t pos : comp.basis_positions) {
                const auto p = static_cast<Eigen::Index>(pos);
                mean += t.entries(p, p);
                se_mean += se(p, p);
            }
            mean /= static_cast<double>(comp.basis_positions.size());
            se_mean /= static_cast<double>(comp.basis_positions.size());
            const double diff = std::abs(mean - table.entries[k].eigenvalue);
            const double tol = sigmas * se_mean + table.entries[k].error_estimate + 1e-12;
            if (diff > tol) c.passed = false;
            if (diff / tol > worst_ratio) {
                worst_ratio = diff / tol;
                c.value = diff;
                c.tolerance = tol;
            }
        }
        report.checks.push_back(c);
    }
    {
        const Symbol b = second ? *second : make_symbol("block_weight", {{"b", 1.0}}, kappa);
        const OperatorMatrix tb = toeplitz_matrix(params, b, mc);
        const double norm_a = t.entries.norm(), norm_b = tb.entries.norm();
        Check c{"commutator", commutator_norm(t, tb), 0.0, true};
        c.tolerance = 2.0 * sigmas * (t.error_estimate * norm_b + norm_a * tb.error_estimate) + 1e-12;
        c.passed = c.value <= c.tolerance;
        report.checks.push_back(c);
    }
    return report;
}

double commutator_norm(const OperatorMatrix& t1, const OperatorMatrix& t2) {
    return commutator_norm(t1.entries, t2.entries);
}

} // namespace bergman
