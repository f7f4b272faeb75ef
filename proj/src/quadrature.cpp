#include "bergman/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "bergman/parallel.hpp"

namespace bergman {

void QuadratureSpec::validate() const {
    if (order < 2) throw std::invalid_argument("QuadratureSpec: order must be >= 2, got " + std::to_string(order));
    double prev = 0.0;
    for (double x : split_points) {
        if (!(x > prev) || !std::isfinite(x))
            throw std::invalid_argument("QuadratureSpec: split points must be finite, positive and increasing");
        prev = x;
    }
    if (!(tolerance > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerance must be positive");
}

namespace {

GaussLegendreRule build_gauss_legendre(int order) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton on P_order starting from the Chebyshev-like guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1]
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(order - 1 - i);
        rule.nodes[lo] = 0.5 * (1.0 - x);
        rule.nodes[hi] = 0.5 * (1.0 + x);
        rule.weights[lo] = 0.5 * w;
        rule.weights[hi] = 0.5 * w;
    }
    return rule;
}

// Gauss-Legendre on each piece of (0,1) cut at the transformed split points.
void piecewise_unit_rule(int order, const std::vector<double>& split_points, std::vector<double>& u,
                         std::vector<double>& w) {
    const auto& gl = gauss_legendre(order);
    std::vector<double> cuts{0.0};
    for (double x : split_points) cuts.push_back(x / (1.0 + x));
    cuts.push_back(1.0);
    u.clear();
    w.clear();
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
        const double a = cuts[piece], len = cuts[piece + 1] - cuts[piece];
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            u.push_back(a + len * gl.nodes[k]);
            w.push_back(len * gl.weights[k]);
        }
    }
}

} // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const GaussLegendreRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<const GaussLegendreRule>(build_gauss_legendre(order));
    return *slot;
}

OrthantRule::OrthantRule(int s, int order, std::vector<double> split_points) : s_(s), order_(order) {
    if (s < 1) throw std::invalid_argument("OrthantRule: dimension must be >= 1");
    if (s > orthant_dimension_cap)
        throw std::invalid_argument("OrthantRule: dimension " + std::to_string(s) + " exceeds cap " +
                                    std::to_string(orthant_dimension_cap));
    QuadratureSpec{order, split_points}.validate();

    std::vector<double> u, w;
    piecewise_unit_rule(order, split_points, u, w);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double T = u[k] / (1.0 - u[k]);
        radial_nodes_.push_back(T);
        radial_weights_.push_back(w[k] / ((1.0 - u[k]) * (1.0 - u[k])) * std::pow(T, s - 1));
    }

    // stick-breaking: w_j = rem * v_j, rem *= (1 - v_j), last w = rem; Jacobian = product of rem
    const auto& gl = gauss_legendre(order);
    const int free_axes = s - 1;
    std::size_t combos = 1;
    for (int j = 0; j < free_axes; ++j) combos *= static_cast<std::size_t>(order);
    if (combos * radial_nodes_.size() > orthant_node_budget * (split_points.size() + 1))
        throw std::invalid_argument("OrthantRule: order " + std::to_string(order) + " too large for dimension " +
                                    std::to_string(s));
    simplex_nodes_.reserve(combos * static_cast<std::size_t>(s));
    simplex_weights_.reserve(combos);
    std::vector<std::size_t> idx(static_cast<std::size_t>(free_axes), 0);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rest = c;
        for (int j = free_axes - 1; j >= 0; --j) {
            idx[static_cast<std::size_t>(j)] = rest % static_cast<std::size_t>(order);
            rest /= static_cast<std::size_t>(order);
        }
        simplex_nodes_.resize(simplex_nodes_.size() + static_cast<std::size_t>(s));
        double* node = simplex_nodes_.data() + simplex_nodes_.size() - static_cast<std::size_t>(s);
        double rem = 1.0, jac = 1.0;
        for (int j = 0; j < free_axes; ++j) {
            const double v = gl.nodes[idx[static_cast<std::size_t>(j)]];
            node[j] = rem * v;
            jac *= rem * gl.weights[idx[static_cast<std::size_t>(j)]];
            rem *= 1.0 - v;
        }
        node[s - 1] = rem;
        simplex_weights_.push_back(jac);
    }
}

std::size_t OrthantRule::size() const { return radial_nodes_.size() * simplex_weights_.size(); }

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

namespace {

void check_convergence(const IntegralResult& r, const QuadratureSpec& spec, const char* what) {
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
        throw ConvergenceError(std::string(what) + ": non-finite integral");
    if (r.error_estimate > spec.tolerance)
        throw ConvergenceError(std::string(what) + ": refinements disagree by " + short_number(r.error_estimate) +
                               " > tolerance " + short_number(spec.tolerance));
}

} // namespace

std::pair<int, int> orthant_refinement(int s, int order) {
    std::size_t fine_nodes = 1;
    for (int j = 0; j < s; ++j) fine_nodes *= static_cast<std::size_t>(2 * order);
    if (s == 1 || fine_nodes <= orthant_node_budget) return {2 * order, order};
    return {order, std::max(2, order / 2)};
}

IntegralResult integrate_halfline(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    spec.validate();
    auto at = [&](int order, std::size_t& evals) {
        std::vector<double> u, w;
        piecewise_unit_rule(order, spec.split_points, u, w);
        double sum = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double om = 1.0 - u[k];
            sum += w[k] / (om * om) * f(u[k] / om);
        }
        evals += u.size();
        return sum;
    };
    IntegralResult r;
    const double coarse = at(spec.order, r.evaluations);
    const double fine = at(2 * spec.order, r.evaluations);
    r.value = fine;
    r.error_estimate = std::abs(fine - coarse);
    check_convergence(r, spec, "integrate_halfline");
    return r;
}

IntegralResult integrate_orthant(const std::function<double(std::span<const double>)>& f, int s,
                                 const QuadratureSpec& spec) {
    spec.validate();
    auto [fine_order, coarse_order] = orthant_refinement(s, spec.order);
    auto at = [&](int order, std::size_t& evals) {
        OrthantRule rule(s, order, spec.split_points);
        double sum = 0.0;
        rule.for_each([&](std::span<const double> t, double w) { sum += w * f(t); });
        evals += rule.size();
        return sum;
    };
    IntegralResult r;
    const double coarse = at(coarse_order, r.evaluations);
    const double fine = at(fine_order, r.evaluations);
    r.value = fine;
    r.error_estimate = std::abs(fine - coarse);
    check_convergence(r, spec, "integrate_orthant");
    return r;
}

IntegralResult mc_expectation(const SpaceParams& params, const std::function<Complex(const Point&)>& g,
                              std::size_t count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("mc_expectation: count must be >= 1");
    const MeasureSampler sampler(params, seed);
    const std::size_t chunks = (count + MeasureSampler::chunk_size - 1) / MeasureSampler::chunk_size;

    // per chunk: count, mean, sum of squared deviations (real and imaginary parts)
    struct Moments {
        double n = 0, mean_re = 0, mean_im = 0, m2 = 0;
    };
    std::vector<Moments> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t start = c * MeasureSampler::chunk_size;
        const std::size_t len = std::min(MeasureSampler::chunk_size, count - start);
        Eigen::MatrixXcd z(params.n, static_cast<Eigen::Index>(len));
        sampler.fill_chunk(c, z);
        Moments mo;
        Point col(params.n);
        for (Eigen::Index k = 0; k < z.cols(); ++k) {
            col = z.col(k);
            const Complex v = g(col);
            mo.n += 1.0;
            const double dre = v.real() - mo.mean_re, dim = v.imag() - mo.mean_im;
            mo.mean_re += dre / mo.n;
            mo.mean_im += dim / mo.n;
            mo.m2 += dre * (v.real() - mo.mean_re) + dim * (v.imag() - mo.mean_im);
        }
        parts[c] = mo;
    });

    Moments total;
    for (const auto& p : parts) {
        const double n = total.n + p.n;
        const double dre = p.mean_re - total.mean_re, dim = p.mean_im - total.mean_im;
        total.mean_re += dre * p.n / n;
        total.mean_im += dim * p.n / n;
        total.m2 += p.m2 + (dre * dre + dim * dim) * total.n * p.n / n;
        total.n = n;
    }
    IntegralResult r;
    r.value = Complex(total.mean_re, total.mean_im);
    r.evaluations = count;
    r.error_estimate = count > 1 ? std::sqrt(total.m2 / (total.n - 1.0) / total.n) : 0.0;
    return r;
}

} // namespace bergman
