#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "bergman/config.hpp"

namespace bergman {

/// Process exit statuses of the batch tool.
enum ExitStatus : int {
    exit_ok = 0,
    exit_validation = 1,
    exit_non_convergence = 2,
    exit_checks_failed = 3,
};

struct JobResult {
    int status = exit_ok;
    /// Serialized output (JSON or CSV) or, on failure, a JSON diagnostic document.
    std::string document;
};

/// Runs one validated job and serializes its result in cfg.format.
JobResult run_job(Command command, const JobConfig& cfg);

struct RunOptions {
    std::optional<std::string> out;
    std::optional<std::string> format;
};

/// Validates config_text, runs the job and writes the document to options.out (or the
/// config's output path) atomically, else to `out`. Diagnostics go to `err` as JSON.
int run(Command command, std::string_view config_text, const RunOptions& options, std::ostream& out, std::ostream& err);

/// Writes text to path via a temporary file in the same directory and a rename.
void write_atomically(const std::string& path, std::string_view text);

} // namespace bergman
