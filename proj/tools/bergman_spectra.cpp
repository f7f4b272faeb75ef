// bergman-spectra <command> --config <path> [--out <path>] [--format json|csv]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bergman/jobs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz spectra on weighted Bergman spaces over CP^n"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::string> out_path, format;
    for (const char* name : {"spectrum", "matrix", "decompose", "verify", "average"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON job document")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "output file (written atomically); stdout when absent");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : bergman::exit_validation;
    }

    const auto command = bergman::parse_command(app.get_subcommands().front()->get_name());
    std::ifstream f(config_path, std::ios::binary);
    std::stringstream text;
    text << f.rdbuf();
    if (!f) {
        std::cerr << "cannot read " << config_path << "\n";
        return bergman::exit_validation;
    }
    return bergman::run(*command, text.str(), {out_path, format}, std::cout, std::cerr);
}
