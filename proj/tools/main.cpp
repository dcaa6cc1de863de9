// Command-line front end: exact commutant constructions for invariant
// subspaces of a matrix with rational (Gaussian-rational) eigenvalues.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "invsub/cli.hpp"

namespace {

void add_common(CLI::App* cmd, invsub::cli::JobConfig& config) {
    cmd->add_option("--input", config.input_path, "reference matrix file");
    cmd->add_option("--subspace", config.subspace_path,
                    "matrix file whose column span is the subspace");
    cmd->add_option("--chains", config.chains_path,
                    "JSON chain description ([{eigenvalue, generator}, ...])");
    cmd->add_option("--eigenvalues", config.eigenvalues,
                    "eigenvalue hints, e.g. --eigenvalues 2 3 1/2 i");
    cmd->add_option("--method", config.method, "construct (default) | rowreduce");
    cmd->add_option("--emit", config.emit,
                    "output form: matrix | construction | dot | json");
    cmd->add_option("--output", config.output_path, "write result to this file");
    cmd->add_option("--seed", config.seed, "seed for randomized lattice sampling");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact commutant constructions for invariant subspaces"};
    app.require_subcommand(1);

    invsub::cli::JobConfig config;

    auto* construct = app.add_subcommand(
        "construct", "build a commutant member whose kernel is the subspace");
    add_common(construct, config);

    auto* range = app.add_subcommand(
        "range", "build a commutant member whose range is the subspace");
    add_common(range, config);

    auto* lattice = app.add_subcommand(
        "lattice", "enumerate the invariant subspace lattice of the input");
    add_common(lattice, config);

    auto* jordanize = app.add_subcommand(
        "jordanize", "compute an exact Jordan form and transform");
    add_common(jordanize, config);

    auto* verify = app.add_subcommand(
        "verify", "check a construction document or a plain commutant candidate");
    verify->add_option("target", config.target, "file to check")->required();
    add_common(verify, config);

    auto* demo = app.add_subcommand("demo", "run a built-in worked example");
    demo->add_option("target", config.target,
                     "exampleA | exampleB | exampleC | exampleD | exampleE | "
                     "exampleF | exampleG")
        ->required();
    add_common(demo, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    for (auto* cmd : {construct, range, lattice, jordanize, verify, demo}) {
        if (cmd->parsed()) {
            config.command = cmd->get_name();
            break;
        }
    }
    return invsub::cli::run(config);
}
