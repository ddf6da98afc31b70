// scenario.hpp - the line-oriented driver format and runner
#pragma once

#include <string>

#include "captionkit/diagnostics.hpp"

namespace captionkit {

struct RunOptions {
    int width = 72;
    bool annotated = false;
    bool strict = false;      // warnings flip the exit status
    bool render = true;       // `check` runs with rendering off
};

struct RunResult {
    std::string output;          // rendered blocks, blank-line separated
    DiagnosticList diagnostics;  // in emission order
    int exit_code = 0;

    bool has_errors() const {
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Error) return true;
        return false;
    }
    bool has_warnings() const {
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Warning) return true;
        return false;
    }
};

// Directives, one per line; `#` starts a comment line. Quoted strings carry
// headings; `\par` inside a heading splits paragraphs.
RunResult run_scenario_text(const std::string& text, const RunOptions& options);
RunResult run_scenario_file(const std::string& path, const RunOptions& options);

}  // namespace captionkit
