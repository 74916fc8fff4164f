#include <CLI11.hpp>

#include "tbvp/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Thermostat BVP with deviated arguments: hypothesis checks, "
                 "cone fixed-point solves and branch sweeps"};
    app.require_subcommand(1);

    tbvp::CliOptions opts;
    double rho = 0.0;
    std::string out;
    for (const char* name : {"check", "solve", "sweep", "kernel"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "configuration file")->required();
        sub->add_flag("--force", opts.force, "skip the hypothesis gate before solving");
        sub->add_option("--rho", rho, "override the configured rho value(s)");
        sub->add_option("--out", out, "override the output directory");
        sub->add_flag("--parallel", opts.parallel,
                      "solve sweep points concurrently (disables warm starts)");
        sub->callback([&, name, sub] {
            opts.command = name;
            if (sub->count("--rho")) opts.rho = rho;
            if (sub->count("--out")) opts.out_dir = out;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return tbvp::run(opts);
}
