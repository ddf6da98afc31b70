// captionkit - render caption scenarios to a text grid
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "captionkit/render.hpp"
#include "captionkit/scenario.hpp"

namespace {

int run_file(const std::string& path, const captionkit::RunOptions& options) {
    captionkit::RunResult result = captionkit::run_scenario_file(path, options);
    if (!result.output.empty()) std::cout << result.output;
    for (const auto& d : result.diagnostics)
        std::cerr << captionkit::render_diagnostic(d) << "\n";
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"caption layout engine"};
    app.require_subcommand(1);

    std::string file;
    captionkit::RunOptions options;
    std::string format = "text";

    CLI::App* run = app.add_subcommand("run", "execute a scenario and render its captions");
    run->add_option("file", file, "scenario file")->required();
    run->add_option("--width", options.width, "container width in cells")
        ->check(CLI::Range(4, 4096));
    run->add_option("--format", format, "text|annotated")
        ->check(CLI::IsMember({"text", "annotated"}));
    run->add_flag("--strict", options.strict, "warnings fail the run");

    CLI::App* check = app.add_subcommand("check", "parse and diagnose without rendering");
    check->add_option("file", file, "scenario file")->required();
    check->add_option("--width", options.width, "container width in cells")
        ->check(CLI::Range(4, 4096));
    check->add_flag("--strict", options.strict, "warnings fail the run");

    CLI11_PARSE(app, argc, argv);

    options.annotated = format == "annotated";
    options.render = !check->parsed();
    return run_file(file, options);
}
