#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
    using lorentz::cli::Format;
    lorentz::cli::RunConfig cfg;
    CLI::App app{"Lorentz-space functionals on piecewise functions"};
    app.set_version_flag("--version", "lorentz 0.1.0");

    std::string commands;
    for (const auto& c : lorentz::cli::command_names()) commands += (commands.empty() ? "" : ", ") + c;
    app.add_option("command", cfg.command, "one of: " + commands)->required();
    app.add_option("--p", cfg.p, "exponent p > 1 (constants: comma list)");
    app.add_option("--s", cfg.s, "exponent s >= 1 or inf (constants: comma list)");
    app.add_option("-f,--file", cfg.input_path, "function JSON file");
    app.add_option("--epsilon", cfg.epsilon, "decomposition tolerance");
    app.add_option("--trials", cfg.trials, "random trials per property");
    app.add_option("--seed", cfg.seed, "base seed");
    app.add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
    app.add_option("-o,--output", cfg.output_path, "output path (default stdout)");
    app.add_flag("--list", cfg.list, "verify: list the registered properties");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return lorentz::cli::run(cfg, std::cout, std::cerr);
}
