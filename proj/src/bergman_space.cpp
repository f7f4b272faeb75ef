#include "bergman/bergman_space.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bergman/random.hpp"

namespace bergman {

namespace {

void check_index(const SpaceParams& params, const MultiIndex& p, const char* what) {
    if (p.size() != params.n)
        throw std::invalid_argument(std::string(what) + ": multi-index length " + std::to_string(p.size()) +
                                    " does not match n = " + std::to_string(params.n));
    if (p.degree() > params.m)
        throw std::invalid_argument(std::string(what) + ": |p| = " + std::to_string(p.degree()) +
                                    " exceeds m = " + std::to_string(params.m));
}

// p!(m-|p|)!/m!
double monomial_norm_squared(const SpaceParams& params, const MultiIndex& p) {
    std::vector<int> num(p.entries().begin(), p.entries().end());
    num.push_back(params.m - p.degree());
    const int den[] = {params.m};
    return factorial_ratio(num, den);
}

} // namespace

double monomial_inner_product(const SpaceParams& params, const MultiIndex& p, const MultiIndex& q) {
    check_index(params, p, "monomial_inner_product");
    check_index(params, q, "monomial_inner_product");
    if (p != q) return 0.0;
    return monomial_norm_squared(params, p);
}

double orthonormal_coefficient(const SpaceParams& params, const MultiIndex& p) {
    check_index(params, p, "orthonormal_coefficient");
    return std::sqrt(1.0 / monomial_norm_squared(params, p));
}

Eigen::VectorXd orthonormal_coefficients(const BasisOrder& order) {
    Eigen::VectorXd c(static_cast<Eigen::Index>(order.size()));
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        c(static_cast<Eigen::Index>(pos)) = orthonormal_coefficient(order.params(), order[pos]);
    return c;
}

Complex kernel(const SpaceParams& params, const Point& z, const Point& w) {
    if (z.size() != params.n || w.size() != params.n)
        throw std::invalid_argument("kernel: point dimension does not match n");
    if (!z.allFinite() || !w.allFinite()) throw std::invalid_argument("kernel: non-finite point");
    // w.dot(z) = sum conj(w_i) z_i
    const Complex base = 1.0 + w.dot(z);
    Complex r(1.0, 0.0);
    for (int i = 0; i < params.m; ++i) r *= base;
    return r;
}

BasisEvaluator::BasisEvaluator(const BasisOrder& order)
    : order_(&order), coefficients_(orthonormal_coefficients(order)) {}

Eigen::VectorXcd evaluate_basis(const SpaceParams& params, const BasisOrder& order, const Point& z) {
    if (!(order.params() == params)) throw std::invalid_argument("evaluate_basis: basis order built for other parameters");
    if (z.size() != params.n) throw std::invalid_argument("evaluate_basis: point dimension does not match n");
    if (!z.allFinite()) throw std::invalid_argument("evaluate_basis: non-finite point");
    Eigen::VectorXcd out(static_cast<Eigen::Index>(order.size()));
    BasisEvaluator(order).evaluate(z, out);
    return out;
}

MeasureSampler::MeasureSampler(SpaceParams params, std::uint64_t seed) : params_(params), seed_(seed) {}

void MeasureSampler::fill_chunk(std::size_t chunk, Eigen::Ref<Eigen::MatrixXcd> out) const {
    if (out.rows() != params_.n) throw std::invalid_argument("MeasureSampler: output rows must equal n");
    if (static_cast<std::size_t>(out.cols()) > chunk_size) throw std::invalid_argument("MeasureSampler: chunk too large");
    auto eng = derived_engine(seed_, {tag_measure, static_cast<std::uint64_t>(params_.n),
                                      static_cast<std::uint64_t>(params_.m), chunk});
    // s_i = E_i / G with E_i ~ Exp(1), G ~ Gamma(m+1): inverted Dirichlet with density ~ (1 + sum s)^-(n+m+1)
    std::gamma_distribution<double> gamma(static_cast<double>(params_.m) + 1.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
        const double g0 = gamma(eng);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            const double s = expo(eng) / g0;
            out(i, c) = std::polar(std::sqrt(s), phase(eng));
        }
    }
}

Eigen::MatrixXcd sample_measure(const SpaceParams& params, std::uint64_t seed, std::size_t count) {
    if (count < 1) throw std::invalid_argument("sample_measure: count must be >= 1");
    MeasureSampler sampler(params, seed);
    Eigen::MatrixXcd out(params.n, static_cast<Eigen::Index>(count));
    for (std::size_t start = 0, chunk = 0; start < count; start += MeasureSampler::chunk_size, ++chunk) {
        const std::size_t len = std::min(MeasureSampler::chunk_size, count - start);
        sampler.fill_chunk(chunk, out.middleCols(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(len)));
    }
    return out;
}

} // namespace bergman
