#include "bergman/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bergman/representation.hpp"

namespace bergman {

std::optional<BlockPartition> Invariance::group(int n) const {
    switch (kind) {
    case InvarianceKind::general: return std::nullopt;
    case InvarianceKind::torus: return BlockPartition::torus(n);
    case InvarianceKind::unitary: return BlockPartition::full(n);
    case InvarianceKind::block:
        if (partition->n() != n) return std::nullopt;
        return partition;
    }
    return std::nullopt;
}

bool Invariance::contains(const BlockPartition& kappa) const {
    const auto g = group(kappa.n());
    return g && kappa.refines(*g);
}

std::string Invariance::name() const {
    switch (kind) {
    case InvarianceKind::general: return "general";
    case InvarianceKind::torus: return "torus";
    case InvarianceKind::unitary: return "unitary";
    case InvarianceKind::block: return "block" + partition->to_string();
    }
    return "general";
}

Invariance invariance_meet(const Invariance& a, const Invariance& b, int n) {
    const auto ga = a.group(n), gb = b.group(n);
    if (!ga || !gb) return Invariance::general();
    const BlockPartition g = meet(*ga, *gb);
    if (g.is_torus()) return Invariance::torus();
    if (g.is_full()) return Invariance::unitary();
    return Invariance::block(g);
}

Symbol::Symbol(std::string family, std::map<std::string, double> parameters, Invariance invariance,
               Evaluator evaluator, bool real_valued, std::vector<double> radial_jumps)
    : family_(std::move(family)),
      parameters_(std::move(parameters)),
      invariance_(std::move(invariance)),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      real_valued_(real_valued),
      radial_jumps_(std::move(radial_jumps)) {}

const std::vector<std::string>& symbol_catalogue() {
    static const std::vector<std::string> names{"constant", "coordinate_weight", "block_weight", "total_weight",
                                                "ball_indicator", "gaussian", "phase"};
    return names;
}

namespace {

double param(const std::map<std::string, double>& ps, const std::string& family, const std::string& key) {
    auto it = ps.find(key);
    if (it == ps.end()) throw std::invalid_argument(family + ": missing parameter '" + key + "'");
    if (!std::isfinite(it->second)) throw std::invalid_argument(family + ": parameter '" + key + "' is not finite");
    return it->second;
}

int index_param(const std::map<std::string, double>& ps, const std::string& family, const std::string& key) {
    const double v = param(ps, family, key);
    if (v < 1.0 || v != std::floor(v))
        throw std::invalid_argument(family + ": parameter '" + key + "' must be a positive integer (1-based)");
    return static_cast<int>(v) - 1;
}

void check_coordinate(const Point& z, int i, const char* family) {
    if (i >= z.size())
        throw std::invalid_argument(std::string(family) + ": coordinate index exceeds point dimension");
}

} // namespace

Symbol make_symbol(const std::string& family, const std::map<std::string, double>& ps,
                   const std::optional<BlockPartition>& partition) {
    if (family == "constant") {
        const Complex c(param(ps, family, "c"), ps.count("c_im") ? param(ps, family, "c_im") : 0.0);
        return Symbol(family, ps, Invariance::unitary(), [c](const Point&) { return c; }, c.imag() == 0.0);
    }
    if (family == "coordinate_weight") {
        const int i = index_param(ps, family, "i");
        return Symbol(family, ps, Invariance::torus(),
                      [i](const Point& z) {
                          check_coordinate(z, i, "coordinate_weight");
                          return Complex(std::norm(z(i)) / (1.0 + z.squaredNorm()), 0.0);
                      },
                      true);
    }
    if (family == "block_weight") {
        if (!partition) throw std::invalid_argument("block_weight: a partition is required");
        const int b = index_param(ps, family, "b");
        if (b >= partition->block_count()) throw std::invalid_argument("block_weight: block index exceeds block count");
        const int start = partition->block_begin(b), size = partition->block_size(b);
        const int n = partition->n();
        return Symbol(family, ps, Invariance::block(*partition),
                      [start, size, n](const Point& z) {
                          if (z.size() != n) throw std::invalid_argument("block_weight: point dimension does not match partition");
                          return Complex(z.segment(start, size).squaredNorm() / (1.0 + z.squaredNorm()), 0.0);
                      },
                      true);
    }
    if (family == "total_weight") {
        return Symbol(family, ps, Invariance::unitary(),
                      [](const Point& z) {
                          const double r2 = z.squaredNorm();
                          return Complex(r2 / (1.0 + r2), 0.0);
                      },
                      true);
    }
    if (family == "ball_indicator") {
        const double radius = param(ps, family, "R");
        if (!(radius > 0.0)) throw std::invalid_argument("ball_indicator: R must be positive");
        const double r2 = radius * radius;
        return Symbol(family, ps, Invariance::unitary(),
                      [r2](const Point& z) { return Complex(z.squaredNorm() <= r2 ? 1.0 : 0.0, 0.0); }, true, {r2});
    }
    if (family == "gaussian") {
        const double alpha = param(ps, family, "alpha");
        if (!(alpha >= 0.0)) throw std::invalid_argument("gaussian: alpha must be non-negative");
        return Symbol(family, ps, Invariance::unitary(),
                      [alpha](const Point& z) { return Complex(std::exp(-alpha * z.squaredNorm()), 0.0); }, true);
    }
    if (family == "phase") {
        const int i = index_param(ps, family, "i");
        return Symbol(family, ps, Invariance::general(),
                      [i](const Point& z) {
                          check_coordinate(z, i, "phase");
                          return Complex(z(i).real() / (1.0 + z.norm()), 0.0);
                      },
                      true);
    }
    std::ostringstream os;
    os << "unknown symbol family '" << family << "'; catalogue:";
    for (const auto& name : symbol_catalogue()) os << ' ' << name;
    throw std::invalid_argument(os.str());
}

Complex evaluate(const Symbol& a, const Point& z) {
    if (!z.allFinite()) throw std::invalid_argument("evaluate: non-finite point");
    return a(z);
}

Symbol affine_combination(Complex alpha, const Symbol& a, Complex beta, const Symbol& b, int n) {
    std::vector<double> jumps = a.radial_jumps();
    jumps.insert(jumps.end(), b.radial_jumps().begin(), b.radial_jumps().end());
    std::sort(jumps.begin(), jumps.end());
    jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
    const bool real = a.real_valued() && b.real_valued() && alpha.imag() == 0.0 && beta.imag() == 0.0;
    return Symbol("affine", {}, invariance_meet(a.invariance(), b.invariance(), n),
                  [alpha, a, beta, b](const Point& z) { return alpha * a(z) + beta * b(z); }, real, std::move(jumps));
}

Symbol radialize_torus(const Symbol& a, int phase_grid) {
    if (phase_grid < 1) throw std::invalid_argument("radialize_torus: phase_grid must be >= 1");
    std::vector<Complex> roots(static_cast<std::size_t>(phase_grid));
    for (int j = 0; j < phase_grid; ++j) roots[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / phase_grid);
    auto params = a.parameters();
    params["phase_grid"] = phase_grid;
    return Symbol(
        "torus_average(" + a.family() + ")", std::move(params), Invariance::torus(),
        [a, roots](const Point& z) {
            const auto n = static_cast<std::size_t>(z.size());
            const std::size_t g = roots.size();
            std::vector<std::size_t> idx(n, 0);
            Point w(z.size());
            Complex sum(0.0, 0.0);
            std::size_t total = 0;
            // odometer over the g^n tensor grid
            while (true) {
                for (std::size_t i = 0; i < n; ++i) w(static_cast<Eigen::Index>(i)) = roots[idx[i]] * z(static_cast<Eigen::Index>(i));
                sum += a(w);
                ++total;
                std::size_t i = 0;
                while (i < n && ++idx[i] == g) idx[i++] = 0;
                if (i == n) break;
            }
            return sum / static_cast<double>(total);
        },
        a.real_valued(), a.radial_jumps());
}

IntegralResult haar_average(const Symbol& a, const std::vector<Eigen::MatrixXcd>& rotations, const Point& z) {
    if (rotations.empty()) throw std::invalid_argument("haar_average: no rotations");
    double mre = 0.0, mim = 0.0, m2 = 0.0, count = 0.0;
    Point w(z.size());
    for (const auto& k : rotations) {
        w.noalias() = k * z;
        const Complex v = a(w);
        count += 1.0;
        const double dre = v.real() - mre, dim = v.imag() - mim;
        mre += dre / count;
        mim += dim / count;
        m2 += dre * (v.real() - mre) + dim * (v.imag() - mim);
    }
    IntegralResult r;
    r.value = Complex(mre, mim);
    r.evaluations = rotations.size();
    r.error_estimate = count > 1.0 ? std::sqrt(m2 / (count - 1.0) / count) : 0.0;
    return r;
}

Symbol radialize_block(const Symbol& a, const BlockPartition& kappa, int sphere_samples, std::uint64_t seed) {
    if (sphere_samples < 1) throw std::invalid_argument("radialize_block: sphere_samples must be >= 1");
    auto rotations = std::make_shared<std::vector<Eigen::MatrixXcd>>();
    rotations->reserve(static_cast<std::size_t>(sphere_samples));
    for (int s = 0; s < sphere_samples; ++s)
        rotations->push_back(haar_sample(kappa, seed, static_cast<std::uint64_t>(s)).matrix);
    auto params = a.parameters();
    params["sphere_samples"] = sphere_samples;
    const Invariance inv = kappa.is_torus() ? Invariance::torus()
                           : kappa.is_full() ? Invariance::unitary()
                                             : Invariance::block(kappa);
    const int n = kappa.n();
    return Symbol(
        "block_average(" + a.family() + ")", std::move(params), inv,
        [a, rotations, n](const Point& z) {
            if (z.size() != n) throw std::invalid_argument("block average: point dimension does not match partition");
            return haar_average(a, *rotations, z).value;
        },
        a.real_valued(), a.radial_jumps());
}

} // namespace bergman
