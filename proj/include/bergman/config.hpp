#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bergman/partition.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/symbols.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

enum class Command { spectrum, matrix, decompose, verify, average };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command c);

/// A field-level problem found while reading a job document.
struct Diagnostic {
    std::string field;
    std::string message;
};

struct AverageSettings {
    enum class Target { operator_matrix, symbol };
    Target target = Target::operator_matrix;
    int samples = 2000;
    std::uint64_t seed = 0;
    int phase_grid = 16;
    std::vector<Point> points;
};

struct CommutantSettings {
    int probes = 0; // 0: twice the component count
    int samples = 8;
    std::uint64_t seed = 0;
};

/// A fully resolved job. Defaults: quadrature order 64, Monte Carlo count 10^6,
/// closed-form tolerance 1e-8, statistical tolerance 4 standard errors.
struct JobConfig {
    SpaceParams params{1, 0};
    BlockPartition group = BlockPartition::torus(1);
    std::optional<Symbol> symbol;
    std::optional<Symbol> second_symbol;
    QuadratureSpec quadrature;
    bool quadrature_given = false;
    std::optional<MonteCarloMethod> monte_carlo;
    std::string format = "json";
    std::optional<std::string> output_path;
    double closed_form_tolerance = 1e-8;
    double sigmas = 4.0;
    std::optional<AverageSettings> average;
    std::optional<CommutantSettings> commutant;
};

struct ValidationResult {
    std::optional<JobConfig> config;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return config.has_value() && diagnostics.empty(); }
};

/// Parses and checks a JSON job document. Never throws; problems come back as diagnostics.
/// With a command, the command-specific requirements (symbol, method blocks) are checked too.
///
///   {"n": 2, "m": 3, "group": [1, 1],
///    "symbol": {"family": "coordinate_weight", "parameters": {"i": 1},
///               "invariance": "torus", "partition": [...]},
///    "second_symbol": {...},
///    "method": {"quadrature": {"order": 64, "split_points": [], "tolerance": 1e-8},
///               "monte_carlo": {"count": 1000000, "seed": 7}},
///    "tolerances": {"closed_form": 1e-8, "sigmas": 4},
///    "average": {"target": "operator" | "symbol", "samples": 2000, "seed": 1,
///                "phase_grid": 16, "points": [[[re, im], ...], ...]},
///    "commutant": {"probes": 0, "samples": 8, "seed": 1},
///    "output": {"path": "out.json", "format": "json" | "csv"}}
///
/// A symbol may also be {"family": "affine", "terms": [{"weight": w, "weight_im": v, "symbol": {...}}, ...]}.
ValidationResult validate_config(std::string_view text, std::optional<Command> command = std::nullopt);

} // namespace bergman
