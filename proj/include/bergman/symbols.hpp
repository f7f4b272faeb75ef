#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bergman/bergman_space.hpp"
#include "bergman/partition.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class InvarianceKind { general, torus, block, unitary };

/// Declared symmetry group of a symbol.
struct Invariance {
    InvarianceKind kind = InvarianceKind::general;
    std::optional<BlockPartition> partition; // set iff kind == block

    static Invariance general() { return {}; }
    static Invariance torus() { return {InvarianceKind::torus, std::nullopt}; }
    static Invariance unitary() { return {InvarianceKind::unitary, std::nullopt}; }
    static Invariance block(BlockPartition p) { return {InvarianceKind::block, std::move(p)}; }

    /// Block partition of the invariance group in dimension n, or nullopt for general.
    std::optional<BlockPartition> group(int n) const;

    /// True when the declared group contains K_kappa.
    bool contains(const BlockPartition& kappa) const;

    std::string name() const;
};

Invariance invariance_meet(const Invariance& a, const Invariance& b, int n);

/// Bounded pointwise function on C^n with a declared invariance class.
///
/// Symbols are immutable; copies share the evaluator.
class Symbol {
public:
    using Evaluator = std::function<Complex(const Point&)>;

    Symbol(std::string family, std::map<std::string, double> parameters, Invariance invariance,
           Evaluator evaluator, bool real_valued, std::vector<double> radial_jumps = {});

    const std::string& family() const { return family_; }
    const std::map<std::string, double>& parameters() const { return parameters_; }
    const Invariance& invariance() const { return invariance_; }
    bool real_valued() const { return real_valued_; }

    /// Values of |z|^2 across which the symbol is discontinuous.
    const std::vector<double>& radial_jumps() const { return radial_jumps_; }

    Complex operator()(const Point& z) const { return (*evaluator_)(z); }

private:
    std::string family_;
    std::map<std::string, double> parameters_;
    Invariance invariance_;
    std::shared_ptr<const Evaluator> evaluator_;
    bool real_valued_;
    std::vector<double> radial_jumps_;
};

/// Catalogue families accepted by make_symbol.
const std::vector<std::string>& symbol_catalogue();

/// Builds a catalogue symbol. Indices i and b are 1-based. block_weight needs the partition.
///
///   constant(c[, c_im])   c                       |.| = |c|
///   coordinate_weight(i)  |z_i|^2/(1+|z|^2)       in [0,1)
///   block_weight(b)       rho_b^2/(1+|z|^2)       in [0,1)
///   total_weight          |z|^2/(1+|z|^2)         in [0,1)
///   ball_indicator(R)     1 if |z| <= R else 0
///   gaussian(alpha)       exp(-alpha |z|^2)       in (0,1]
///   phase(i)              Re(z_i)/(1+|z|)         in (-1,1)
Symbol make_symbol(const std::string& family, const std::map<std::string, double>& parameters,
                   const std::optional<BlockPartition>& partition = std::nullopt);

Complex evaluate(const Symbol& a, const Point& z);

/// alpha*a + beta*b pointwise.
Symbol affine_combination(Complex alpha, const Symbol& a, Complex beta, const Symbol& b, int n);

/// Haar average over T^n by the tensor trapezoid rule with phase_grid nodes per circle.
Symbol radialize_torus(const Symbol& a, int phase_grid);

/// Monte Carlo Haar average over U(k_1) x ... x U(k_s) with sphere_samples fixed rotations.
Symbol radialize_block(const Symbol& a, const BlockPartition& kappa, int sphere_samples, std::uint64_t seed);

/// Mean of a(k z) over the given rotations with its standard error.
IntegralResult haar_average(const Symbol& a, const std::vector<Eigen::MatrixXcd>& rotations, const Point& z);

} // namespace bergman
