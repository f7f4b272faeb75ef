#include "bergman/jobs.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "bergman/representation.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::closed_form: return "closed_form";
    case Provenance::quadrature: return "quadrature";
    case Provenance::monte_carlo: return "monte_carlo";
    case Provenance::averaged: return "averaged";
    }
    return "unknown";
}

namespace {

using ojson = nlohmann::ordered_json;

ojson complex_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

ojson scalar_json(Complex z, bool real) { return real ? ojson(z.real()) : complex_json(z); }

ojson ints(const std::vector<int>& v) { return ojson(v); }

ojson ints(const MultiIndex& p) { return ojson(p.entries()); }

std::string number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dashed(const std::vector<int>& d) {
    std::string s;
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "-" : "") + std::to_string(d[k]);
    return s;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string method_name(const JobConfig& cfg, bool monte_carlo) {
    if (monte_carlo)
        return "monte_carlo(count=" + std::to_string(cfg.monte_carlo->count) + ",seed=" + std::to_string(cfg.monte_carlo->seed) +
               ")";
    return "quadrature(order=" + std::to_string(cfg.quadrature.order) + ")";
}

ojson symbol_json(const Symbol& a) {
    ojson j;
    j["family"] = a.family();
    j["parameters"] = ojson::object();
    for (const auto& [k, v] : a.parameters()) j["parameters"][k] = v;
    j["invariance"] = a.invariance().name();
    return j;
}

std::string matrix_document(const JobConfig& cfg, const OperatorMatrix& t, const std::string& method) {
    const auto dim = t.dimension();
    if (cfg.format == "csv") {
        std::string out = "row,col,re,im\n";
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                out += std::to_string(i) + "," + std::to_string(j) + "," + number(t.entries(i, j).real()) + "," +
                       number(t.entries(i, j).imag()) + "\n";
        return out;
    }
    ojson j;
    j["n"] = cfg.params.n;
    j["m"] = cfg.params.m;
    j["symbol"] = symbol_json(*cfg.symbol);
    j["method"] = method;
    j["basis"] = ojson::array();
    for (const auto& p : t.order->indices()) j["basis"].push_back(ints(p));
    j["rows"] = dim;
    j["cols"] = dim;
    j["entries"] = ojson::array();
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) j["entries"].push_back(complex_json(t.entries(r, c)));
    j["provenance"] = to_string(t.provenance);
    j["error_estimate"] = t.error_estimate;
    if (t.standard_errors) {
        j["standard_errors"] = ojson::array();
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c) j["standard_errors"].push_back((*t.standard_errors)(r, c));
    } else {
        j["standard_errors"] = nullptr;
    }
    return dump(j);
}

JobResult spectrum(const JobConfig& cfg) {
    const Symbol& a = *cfg.symbol;
    const SpectrumTable table = block_radial_spectrum(cfg.params, cfg.group, a, cfg.quadrature);
    const bool real = a.real_valued();
    if (cfg.format == "csv") {
        std::string out = real ? "degrees,eigenvalue\n" : "degrees,eigenvalue,eigenvalue_im\n";
        for (const auto& e : table.entries) {
            out += dashed(e.degrees) + "," + number(e.eigenvalue.real());
            if (!real) out += "," + number(e.eigenvalue.imag());
            out += "\n";
        }
        return {exit_ok, out};
    }
    ojson j;
    j["n"] = cfg.params.n;
    j["m"] = cfg.params.m;
    j["partition"] = cfg.group.blocks();
    j["entries"] = ojson::array();
    for (const auto& e : table.entries)
        j["entries"].push_back({{"degrees", ints(e.degrees)}, {"eigenvalue", scalar_json(e.eigenvalue, real)},
                                {"dimension", e.dimension}});
    j["per_index"] = ojson::array();
    const BasisOrder order(cfg.params);
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        j["per_index"].push_back({{"p", ints(order[pos])}, {"eigenvalue", scalar_json(table.per_index[pos], real)}});
    j["method"] = table.method;
    j["error_estimate"] = table.error_estimate;
    return {exit_ok, dump(j)};
}

JobResult matrix(const JobConfig& cfg) {
    const bool mc = cfg.monte_carlo.has_value() && !cfg.quadrature_given;
    const MatrixMethod method = mc ? MatrixMethod(*cfg.monte_carlo) : MatrixMethod(cfg.quadrature);
    const OperatorMatrix t = toeplitz_matrix(cfg.params, *cfg.symbol, method);
    return {exit_ok, matrix_document(cfg, t, method_name(cfg, mc))};
}

JobResult decompose(const JobConfig& cfg) {
    const IsotypicDecomposition dec = isotypic_decomposition(cfg.params, cfg.group);
    std::optional<CommutantDimension> commutant;
    if (cfg.commutant) {
        const int l = static_cast<int>(dec.component_count());
        const int probes = cfg.commutant->probes > 0 ? cfg.commutant->probes : 2 * l;
        commutant = commutant_dimension(cfg.params, cfg.group, probes, cfg.commutant->samples, cfg.commutant->seed);
    }
    if (cfg.format == "csv") {
        std::string out = "degrees,dimension\n";
        for (const auto& c : dec.components) out += dashed(c.degrees) + "," + std::to_string(c.dimension) + "\n";
        return {exit_ok, out};
    }
    const BasisOrder order(cfg.params);
    ojson j;
    j["n"] = cfg.params.n;
    j["m"] = cfg.params.m;
    j["partition"] = cfg.group.blocks();
    j["component_count"] = dec.component_count();
    j["components"] = ojson::array();
    for (const auto& c : dec.components) {
        ojson basis = ojson::array();
        for (auto pos : c.basis_positions) basis.push_back(ints(order[pos]));
        j["components"].push_back({{"degrees", ints(c.degrees)},
                                   {"dimension", c.dimension},
                                   {"basis_positions", c.basis_positions},
                                   {"basis", basis}});
    }
    if (commutant) {
        j["commutant"] = {{"dimension", commutant->dimension},
                          {"matches_component_count", commutant->dimension == static_cast<int>(dec.component_count())},
                          {"margin", commutant->margin},
                          {"margin_warning", commutant->margin_warning},
                          {"probe_rank", commutant->probe_rank}};
    }
    return {exit_ok, dump(j)};
}

JobResult verify(const JobConfig& cfg) {
    const VerificationReport report = spectrum_vs_matrix(cfg.params, cfg.group, *cfg.symbol, cfg.quadrature,
                                                         *cfg.monte_carlo, cfg.second_symbol, cfg.sigmas);
    const int status = report.all_passed() ? exit_ok : exit_checks_failed;
    if (cfg.format == "csv") {
        std::string out = "check,value,tolerance,passed\n";
        for (const auto& c : report.checks)
            out += c.name + "," + number(c.value) + "," + number(c.tolerance) + "," + (c.passed ? "true" : "false") + "\n";
        return {status, out};
    }
    ojson j;
    j["n"] = cfg.params.n;
    j["m"] = cfg.params.m;
    j["partition"] = cfg.group.blocks();
    j["symbol"] = symbol_json(*cfg.symbol);
    j["checks"] = ojson::array();
    for (const auto& c : report.checks)
        j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    j["passed"] = report.all_passed();
    return {status, dump(j)};
}

JobResult average(const JobConfig& cfg) {
    const AverageSettings& s = *cfg.average;
    const Symbol& a = *cfg.symbol;
    if (s.target == AverageSettings::Target::operator_matrix) {
        const bool mc = cfg.monte_carlo.has_value() && !cfg.quadrature_given;
        const MatrixMethod method = mc ? MatrixMethod(*cfg.monte_carlo) : MatrixMethod(cfg.quadrature);
        const OperatorMatrix t = toeplitz_matrix(cfg.params, a, method);
        const OperatorMatrix avg = average_operator(cfg.params, cfg.group, t, s.samples, s.seed);
        return {exit_ok, matrix_document(cfg, avg, method_name(cfg, mc) + " averaged over " + cfg.group.to_string())};
    }

    std::vector<IntegralResult> values;
    if (cfg.group.is_torus()) {
        const Symbol avg = radialize_torus(a, s.phase_grid);
        for (const auto& z : s.points) values.push_back({avg(z), 0.0, 0});
    } else {
        std::vector<Eigen::MatrixXcd> rotations;
        rotations.reserve(static_cast<std::size_t>(s.samples));
        for (int k = 0; k < s.samples; ++k) rotations.push_back(haar_sample(cfg.group, s.seed, static_cast<std::uint64_t>(k)).matrix);
        for (const auto& z : s.points) values.push_back(haar_average(a, rotations, z));
    }
    if (cfg.format == "csv") {
        std::string out = "point,re,im,standard_error\n";
        for (std::size_t k = 0; k < values.size(); ++k)
            out += std::to_string(k) + "," + number(values[k].value.real()) + "," + number(values[k].value.imag()) + "," +
                   number(values[k].error_estimate) + "\n";
        return {exit_ok, out};
    }
    ojson j;
    j["n"] = cfg.params.n;
    j["partition"] = cfg.group.blocks();
    j["symbol"] = symbol_json(a);
    j["method"] = cfg.group.is_torus() ? "trapezoid(phase_grid=" + std::to_string(s.phase_grid) + ")"
                                       : "haar_monte_carlo(samples=" + std::to_string(s.samples) +
                                             ",seed=" + std::to_string(s.seed) + ")";
    j["points"] = ojson::array();
    for (std::size_t k = 0; k < values.size(); ++k) {
        ojson z = ojson::array();
        for (Eigen::Index i = 0; i < s.points[k].size(); ++i) z.push_back(complex_json(s.points[k](i)));
        j["points"].push_back({{"z", z}, {"value", complex_json(values[k].value)}, {"standard_error", values[k].error_estimate}});
    }
    return {exit_ok, dump(j)};
}

std::string error_document(const std::string& kind, const std::vector<Diagnostic>& diagnostics) {
    ojson j;
    j["error"] = kind;
    j["diagnostics"] = ojson::array();
    for (const auto& d : diagnostics) j["diagnostics"].push_back({{"field", d.field}, {"message", d.message}});
    return dump(j);
}

} // namespace

JobResult run_job(Command command, const JobConfig& cfg) {
    try {
        switch (command) {
        case Command::spectrum: return spectrum(cfg);
        case Command::matrix: return matrix(cfg);
        case Command::decompose: return decompose(cfg);
        case Command::verify: return verify(cfg);
        case Command::average: return average(cfg);
        }
    } catch (const ConvergenceError& e) {
        return {exit_non_convergence, error_document("non_convergence", {{"", e.what()}})};
    } catch (const std::invalid_argument& e) {
        return {exit_validation, error_document("validation", {{"", e.what()}})};
    }
    return {exit_validation, error_document("validation", {{"", "unknown command"}})};
}

void write_atomically(const std::string& path, std::string_view text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp-" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f) {
            f.close();
            fs::remove(tmp);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
    }
}

int run(Command command, std::string_view config_text, const RunOptions& options, std::ostream& out, std::ostream& err) {
    ValidationResult v = validate_config(config_text, command);
    if (!v.ok()) {
        err << error_document("validation", v.diagnostics);
        return exit_validation;
    }
    JobConfig cfg = std::move(*v.config);
    if (options.format) {
        if (*options.format != "json" && *options.format != "csv") {
            err << error_document("validation", {{"--format", "expected 'json' or 'csv'"}});
            return exit_validation;
        }
        cfg.format = *options.format;
    }
    const JobResult result = run_job(command, cfg);
    if (result.status == exit_validation || result.status == exit_non_convergence) {
        err << result.document;
        return result.status;
    }
    const std::optional<std::string> path = options.out ? options.out : cfg.output_path;
    if (path) {
        try {
            write_atomically(*path, result.document);
        } catch (const std::exception& e) {
            err << error_document("io", {{"output.path", e.what()}});
            return exit_validation;
        }
    } else {
        out << result.document;
    }
    return result.status;
}

} // namespace bergman
