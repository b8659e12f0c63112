#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "topospec/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"topospec: topological invariants and spectra of classical "
                 "configurations"};
    app.require_subcommand(1);

    std::string run_path, sweep_path, dim_config;
    int points = 0;

    auto* run = app.add_subcommand("run", "execute a JSON run-config file");
    run->add_option("file", run_path, "path to the config file")->required();

    auto* verify =
        app.add_subcommand("verify", "run the built-in oracle suite");
    verify->add_option("--points", points,
                       "override points_per_axis of every check");

    auto* sweep =
        app.add_subcommand("sweep", "full-factorial parameter sweep (task sweep)");
    sweep->add_option("file", sweep_path, "path to the config file")->required();

    auto* list =
        app.add_subcommand("list", "list catalog configurations and parameters");

    auto* dim = app.add_subcommand(
        "dim", "principal-bundle dimension of a catalog configuration");
    dim->add_option("config", dim_config, "configuration name")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return topospec::cli::run_config(run_path, std::cout, std::cerr);
    if (verify->parsed()) {
        topospec::VerifyOptions opts;
        if (points > 0) opts.points_override = points;
        return topospec::cli::run_verify(std::cout, opts);
    }
    if (sweep->parsed())
        return topospec::cli::run_sweep(sweep_path, std::cout, std::cerr);
    if (list->parsed()) return topospec::cli::run_list(std::cout);
    if (dim->parsed())
        return topospec::cli::run_dim(dim_config, std::cout, std::cerr);
    return 1;
}
