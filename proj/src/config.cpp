#include "bergman/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace bergman {

using nlohmann::json;

std::optional<Command> parse_command(std::string_view name) {
    if (name == "spectrum") return Command::spectrum;
    if (name == "matrix") return Command::matrix;
    if (name == "decompose") return Command::decompose;
    if (name == "verify") return Command::verify;
    if (name == "average") return Command::average;
    return std::nullopt;
}

std::string to_string(Command c) {
    switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::matrix: return "matrix";
    case Command::decompose: return "decompose";
    case Command::verify: return "verify";
    case Command::average: return "average";
    }
    return "unknown";
}

namespace {

constexpr std::size_t max_space_dimension = 20000;

class Reader {
public:
    std::vector<Diagnostic> diagnostics;

    void fail(std::string field, std::string message) { diagnostics.push_back({std::move(field), std::move(message)}); }

    std::optional<long long> integer(const json& j, const std::string& field) {
        if (!j.is_number_integer() && !(j.is_number_float() && std::floor(j.get<double>()) == j.get<double>() &&
                                        std::abs(j.get<double>()) < 9e15)) {
            fail(field, "expected an integer");
            return std::nullopt;
        }
        return j.is_number_integer() ? j.get<long long>() : static_cast<long long>(j.get<double>());
    }

    std::optional<double> number(const json& j, const std::string& field) {
        if (!j.is_number()) {
            fail(field, "expected a number");
            return std::nullopt;
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            fail(field, "expected a finite number");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::uint64_t> seed(const json& j, const std::string& field) {
        if (j.is_number_unsigned()) return j.get<std::uint64_t>();
        if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
        fail(field, "seed must be a non-negative integer");
        return std::nullopt;
    }

    std::optional<BlockPartition> partition(const json& j, const std::string& field, std::optional<int> n) {
        if (!j.is_array() || j.empty()) {
            fail(field, "expected a non-empty array of positive integers");
            return std::nullopt;
        }
        std::vector<int> blocks;
        int sum = 0;
        for (std::size_t k = 0; k < j.size(); ++k) {
            const auto v = integer(j[k], field + "[" + std::to_string(k) + "]");
            if (!v) return std::nullopt;
            if (*v < 1 || *v > 64) {
                fail(field + "[" + std::to_string(k) + "]", "block sizes must be positive");
                return std::nullopt;
            }
            blocks.push_back(static_cast<int>(*v));
            sum += static_cast<int>(*v);
        }
        if (n && sum != *n) {
            fail(field, "partition sums to " + std::to_string(sum) + " ≠ n=" + std::to_string(*n));
            return std::nullopt;
        }
        return BlockPartition(std::move(blocks));
    }

    std::optional<Invariance> invariance(const std::string& name, const json& root, const std::string& field, int n) {
        if (name == "general") return Invariance::general();
        if (name == "torus") return Invariance::torus();
        if (name == "unitary") return Invariance::unitary();
        if (name == "block") {
            if (!root.contains("partition")) {
                fail(field, "invariance 'block' needs a partition");
                return std::nullopt;
            }
            auto p = partition(root["partition"], field.substr(0, field.rfind('.')) + ".partition", n);
            if (!p) return std::nullopt;
            return Invariance::block(*p);
        }
        fail(field, "unknown invariance '" + name + "'; expected general, torus, block or unitary");
        return std::nullopt;
    }

    std::optional<Symbol> symbol(const json& j, const std::string& field, int n, int depth = 0) {
        if (!j.is_object()) {
            fail(field, "expected an object with 'family' and 'parameters'");
            return std::nullopt;
        }
        if (!j.contains("family") || !j["family"].is_string()) {
            fail(field + ".family", "missing symbol family");
            return std::nullopt;
        }
        const std::string family = j["family"].get<std::string>();
        std::optional<BlockPartition> part;
        if (j.contains("partition")) {
            part = partition(j["partition"], field + ".partition", n);
            if (!part) return std::nullopt;
        }

        std::optional<Symbol> built;
        if (family == "affine") {
            if (depth > 4) {
                fail(field, "affine combinations nest too deeply");
                return std::nullopt;
            }
            if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) {
                fail(field + ".terms", "an affine symbol needs a non-empty 'terms' array");
                return std::nullopt;
            }
            for (std::size_t k = 0; k < j["terms"].size(); ++k) {
                const json& term = j["terms"][k];
                const std::string tf = field + ".terms[" + std::to_string(k) + "]";
                if (!term.is_object() || !term.contains("symbol")) {
                    fail(tf, "expected {\"weight\": w, \"symbol\": {...}}");
                    return std::nullopt;
                }
                double w_re = 1.0, w_im = 0.0;
                if (term.contains("weight")) {
                    const auto w = number(term["weight"], tf + ".weight");
                    if (!w) return std::nullopt;
                    w_re = *w;
                }
                if (term.contains("weight_im")) {
                    const auto w = number(term["weight_im"], tf + ".weight_im");
                    if (!w) return std::nullopt;
                    w_im = *w;
                }
                auto s = symbol(term["symbol"], tf + ".symbol", n, depth + 1);
                if (!s) return std::nullopt;
                const Complex w(w_re, w_im);
                built = built ? affine_combination(1.0, *built, w, *s, n) : affine_combination(w, *s, 0.0, *s, n);
            }
        } else {
            std::map<std::string, double> params;
            if (j.contains("parameters")) {
                if (!j["parameters"].is_object()) {
                    fail(field + ".parameters", "expected an object of numbers");
                    return std::nullopt;
                }
                for (const auto& [key, value] : j["parameters"].items()) {
                    const auto v = number(value, field + ".parameters." + key);
                    if (!v) return std::nullopt;
                    params[key] = *v;
                }
            }
            try {
                built = make_symbol(family, params, part);
            } catch (const std::invalid_argument& e) {
                fail(field, e.what());
                return std::nullopt;
            }
            for (const char* key : {"i", "b"}) {
                const auto it = params.find(key);
                const int limit = std::string(key) == "i" ? n : (part ? part->block_count() : n);
                if (it != params.end() && it->second > limit) {
                    fail(field + ".parameters." + key, std::string(key) + " = " + std::to_string(static_cast<int>(it->second)) +
                                                           " exceeds " + std::to_string(limit));
                    return std::nullopt;
                }
            }
        }

        if (j.contains("invariance")) {
            if (!j["invariance"].is_string()) {
                fail(field + ".invariance", "expected a string");
                return std::nullopt;
            }
            const auto declared = invariance(j["invariance"].get<std::string>(), j, field + ".invariance", n);
            if (!declared) return std::nullopt;
            // a declared group may be smaller than the family's, never larger
            const auto g = declared->group(n);
            if (g && !built->invariance().contains(*g)) {
                fail(field + ".invariance", "family '" + family + "' is only " + built->invariance().name() +
                                                " invariant, not " + declared->name());
                return std::nullopt;
            }
            const Symbol inner = *built;
            built = Symbol(inner.family(), inner.parameters(), *declared, [inner](const Point& z) { return inner(z); },
                           inner.real_valued(), inner.radial_jumps());
        }
        return built;
    }
};

} // namespace

ValidationResult validate_config(std::string_view text, std::optional<Command> command) {
    ValidationResult result;
    Reader r;
    const json root = json::parse(text.begin(), text.end(), nullptr, false);
    if (root.is_discarded()) {
        result.diagnostics.push_back({"", "config is not valid JSON"});
        return result;
    }
    if (!root.is_object()) {
        result.diagnostics.push_back({"", "config must be a JSON object"});
        return result;
    }

    static const std::vector<std::string> known{"n",      "m",          "group",   "symbol",    "second_symbol",
                                                "method", "tolerances", "average", "commutant", "output"};
    for (const auto& [key, value] : root.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) r.fail(key, "unknown field");

    JobConfig cfg;
    std::optional<int> n, m;
    if (!root.contains("n")) {
        r.fail("n", "missing");
    } else if (auto v = r.integer(root["n"], "n")) {
        if (*v < 1 || *v > 64) r.fail("n", "n must be between 1 and 64");
        else n = static_cast<int>(*v);
    }
    if (!root.contains("m")) {
        r.fail("m", "missing");
    } else if (auto v = r.integer(root["m"], "m")) {
        if (*v < 0 || *v > 200) r.fail("m", "m must be between 0 and 200");
        else m = static_cast<int>(*v);
    }
    if (n && m) {
        cfg.params = SpaceParams(*n, *m);
        const double dim = binomial(*n + *m, *n).convert_to<double>();
        if (dim > static_cast<double>(max_space_dimension))
            r.fail("m", "space dimension C(n+m, n) = " + binomial(*n + *m, *n).str() + " exceeds " +
                            std::to_string(max_space_dimension));
    }
    if (!n) {
        result.diagnostics = std::move(r.diagnostics);
        return result;
    }

    if (root.contains("symbol")) cfg.symbol = r.symbol(root["symbol"], "symbol", *n);
    if (root.contains("second_symbol")) cfg.second_symbol = r.symbol(root["second_symbol"], "second_symbol", *n);

    if (root.contains("group")) {
        if (auto p = r.partition(root["group"], "group", *n)) cfg.group = *p;
    } else if (cfg.symbol && cfg.symbol->invariance().group(*n)) {
        cfg.group = *cfg.symbol->invariance().group(*n);
    } else {
        cfg.group = BlockPartition::torus(*n);
    }

    if (root.contains("tolerances")) {
        const json& t = root["tolerances"];
        if (!t.is_object()) {
            r.fail("tolerances", "expected an object");
        } else {
            if (t.contains("closed_form"))
                if (auto v = r.number(t["closed_form"], "tolerances.closed_form")) {
                    if (*v > 0.0) cfg.closed_form_tolerance = *v;
                    else r.fail("tolerances.closed_form", "must be positive");
                }
            if (t.contains("sigmas"))
                if (auto v = r.number(t["sigmas"], "tolerances.sigmas")) {
                    if (*v > 0.0) cfg.sigmas = *v;
                    else r.fail("tolerances.sigmas", "must be positive");
                }
        }
    }
    cfg.quadrature.tolerance = cfg.closed_form_tolerance;

    if (root.contains("method")) {
        const json& meth = root["method"];
        if (!meth.is_object()) {
            r.fail("method", "expected an object with 'quadrature' and/or 'monte_carlo'");
        } else {
            for (const auto& [key, value] : meth.items())
                if (key != "quadrature" && key != "monte_carlo") r.fail("method." + key, "unknown method");
            if (meth.contains("quadrature")) {
                const json& q = meth["quadrature"];
                cfg.quadrature_given = true;
                if (!q.is_object()) {
                    r.fail("method.quadrature", "expected an object");
                } else {
                    if (q.contains("order"))
                        if (auto v = r.integer(q["order"], "method.quadrature.order")) {
                            if (*v < 2 || *v > 512) r.fail("method.quadrature.order", "order must be between 2 and 512");
                            else cfg.quadrature.order = static_cast<int>(*v);
                        }
                    if (q.contains("tolerance"))
                        if (auto v = r.number(q["tolerance"], "method.quadrature.tolerance")) {
                            if (*v > 0.0) cfg.quadrature.tolerance = *v;
                            else r.fail("method.quadrature.tolerance", "must be positive");
                        }
                    if (q.contains("split_points")) {
                        if (!q["split_points"].is_array()) {
                            r.fail("method.quadrature.split_points", "expected an array");
                        } else {
                            for (const auto& x : q["split_points"])
                                if (auto v = r.number(x, "method.quadrature.split_points")) cfg.quadrature.split_points.push_back(*v);
                            try {
                                cfg.quadrature.validate();
                            } catch (const std::invalid_argument& e) {
                                r.fail("method.quadrature.split_points", e.what());
                            }
                        }
                    }
                }
            }
            if (meth.contains("monte_carlo")) {
                const json& mc = meth["monte_carlo"];
                MonteCarloMethod method;
                bool good = true;
                if (!mc.is_object()) {
                    r.fail("method.monte_carlo", "expected an object");
                    good = false;
                } else {
                    if (mc.contains("count")) {
                        if (auto v = r.integer(mc["count"], "method.monte_carlo.count")) {
                            if (*v < 2 || *v > 1'000'000'000) {
                                r.fail("method.monte_carlo.count", "count must be between 2 and 1e9");
                                good = false;
                            } else {
                                method.count = static_cast<std::size_t>(*v);
                            }
                        } else {
                            good = false;
                        }
                    }
                    if (!mc.contains("seed")) {
                        r.fail("method.monte_carlo.seed", "a seed is required for Monte Carlo methods");
                        good = false;
                    } else if (auto s = r.seed(mc["seed"], "method.monte_carlo.seed")) {
                        method.seed = *s;
                    } else {
                        good = false;
                    }
                }
                if (good) cfg.monte_carlo = method;
            }
        }
    }

    if (root.contains("average")) {
        const json& a = root["average"];
        AverageSettings avg;
        if (!a.is_object()) {
            r.fail("average", "expected an object");
        } else {
            if (a.contains("target")) {
                const std::string t = a["target"].is_string() ? a["target"].get<std::string>() : "";
                if (t == "operator") avg.target = AverageSettings::Target::operator_matrix;
                else if (t == "symbol") avg.target = AverageSettings::Target::symbol;
                else r.fail("average.target", "expected 'operator' or 'symbol'");
            }
            if (a.contains("samples"))
                if (auto v = r.integer(a["samples"], "average.samples")) {
                    if (*v < 1 || *v > 10'000'000) r.fail("average.samples", "samples must be between 1 and 1e7");
                    else avg.samples = static_cast<int>(*v);
                }
            if (a.contains("phase_grid"))
                if (auto v = r.integer(a["phase_grid"], "average.phase_grid")) {
                    if (*v < 1 || *v > 1024) r.fail("average.phase_grid", "phase_grid must be between 1 and 1024");
                    else avg.phase_grid = static_cast<int>(*v);
                }
            const bool needs_seed = !cfg.group.is_torus();
            if (a.contains("seed")) {
                if (auto s = r.seed(a["seed"], "average.seed")) avg.seed = *s;
            } else if (needs_seed) {
                r.fail("average.seed", "a seed is required for Monte Carlo averaging");
            }
            if (a.contains("points")) {
                if (!a["points"].is_array()) {
                    r.fail("average.points", "expected an array of points");
                } else {
                    for (std::size_t k = 0; k < a["points"].size(); ++k) {
                        const json& pj = a["points"][k];
                        const std::string pf = "average.points[" + std::to_string(k) + "]";
                        if (!pj.is_array() || static_cast<int>(pj.size()) != *n) {
                            r.fail(pf, "expected " + std::to_string(*n) + " coordinates");
                            continue;
                        }
                        Point z(*n);
                        bool good = true;
                        for (int i = 0; i < *n; ++i) {
                            const json& c = pj[static_cast<std::size_t>(i)];
                            if (c.is_number()) {
                                z(i) = Complex(c.get<double>(), 0.0);
                            } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
                                z(i) = Complex(c[0].get<double>(), c[1].get<double>());
                            } else {
                                good = false;
                            }
                        }
                        if (!good || !z.allFinite()) r.fail(pf, "coordinates must be finite numbers or [re, im] pairs");
                        else avg.points.push_back(z);
                    }
                }
            }
        }
        cfg.average = avg;
    }

    if (root.contains("commutant")) {
        const json& c = root["commutant"];
        CommutantSettings cs;
        if (!c.is_object()) {
            r.fail("commutant", "expected an object");
        } else {
            if (c.contains("probes"))
                if (auto v = r.integer(c["probes"], "commutant.probes")) {
                    if (*v < 0 || *v > 100000) r.fail("commutant.probes", "probes must be between 0 and 1e5");
                    else cs.probes = static_cast<int>(*v);
                }
            if (c.contains("samples"))
                if (auto v = r.integer(c["samples"], "commutant.samples")) {
                    if (*v < 1 || *v > 10000) r.fail("commutant.samples", "samples must be between 1 and 1e4");
                    else cs.samples = static_cast<int>(*v);
                }
            if (!c.contains("seed")) r.fail("commutant.seed", "a seed is required for the commutant check");
            else if (auto s = r.seed(c["seed"], "commutant.seed")) cs.seed = *s;
        }
        cfg.commutant = cs;
    }

    if (root.contains("output")) {
        const json& o = root["output"];
        if (!o.is_object()) {
            r.fail("output", "expected an object");
        } else {
            if (o.contains("path")) {
                if (o["path"].is_string() && !o["path"].get<std::string>().empty()) cfg.output_path = o["path"].get<std::string>();
                else r.fail("output.path", "expected a non-empty string");
            }
            if (o.contains("format")) {
                const std::string f = o["format"].is_string() ? o["format"].get<std::string>() : "";
                if (f == "json" || f == "csv") cfg.format = f;
                else r.fail("output.format", "expected 'json' or 'csv'");
            }
        }
    }

    if (command) {
        const bool has_q = root.contains("method") && root["method"].is_object() && root["method"].contains("quadrature");
        const bool has_mc = root.contains("method") && root["method"].is_object() && root["method"].contains("monte_carlo");
        switch (*command) {
        case Command::spectrum:
            if (!root.contains("symbol")) r.fail("symbol", "spectrum needs a symbol");
            if (has_mc) r.fail("method.monte_carlo", "spectrum is computed by quadrature only");
            break;
        case Command::matrix:
            if (!root.contains("symbol")) r.fail("symbol", "matrix needs a symbol");
            if (has_q == has_mc) r.fail("method", "matrix needs exactly one of 'quadrature' or 'monte_carlo'");
            break;
        case Command::decompose:
            break;
        case Command::verify:
            if (!root.contains("symbol")) r.fail("symbol", "verify needs a symbol");
            if (!has_mc) r.fail("method.monte_carlo", "verify needs a monte_carlo block with a seed");
            break;
        case Command::average:
            if (!root.contains("symbol")) r.fail("symbol", "average needs a symbol");
            if (!root.contains("average")) r.fail("average", "average needs an 'average' block");
            else if (cfg.average && cfg.average->target == AverageSettings::Target::operator_matrix && has_q == has_mc)
                r.fail("method", "averaging an operator needs exactly one of 'quadrature' or 'monte_carlo'");
            else if (cfg.average && cfg.average->target == AverageSettings::Target::symbol && cfg.average->points.empty())
                r.fail("average.points", "averaging a symbol needs evaluation points");
            break;
        }
        if ((*command == Command::spectrum || *command == Command::verify) && cfg.symbol &&
            !cfg.symbol->invariance().contains(cfg.group))
            r.fail("symbol.invariance", "symbol invariance " + cfg.symbol->invariance().name() +
                                            " does not contain the group of partition " + cfg.group.to_string());
    }

    result.diagnostics = std::move(r.diagnostics);
    if (result.diagnostics.empty()) result.config = std::move(cfg);
    return result;
}

} // namespace bergman
