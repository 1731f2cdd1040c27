// polytrop: command-line front end for the library.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polytrop/cli.hpp"

int main(int argc, char** argv) {
    using namespace polytrop;
    CLI::App app{"Exact toric, tropical and skeleton computations on JSON inputs"};
    app.require_subcommand(1, 1);

    cli::JobConfig cfg;
    std::string level = "2";
    std::size_t depth = 0;

    const std::map<std::string, std::string> help = {
        {"trop", "tropical hypersurface of a polynomial (min-plus)"},
        {"ptrop", "projective tropicalization of a germ or ideal, with the numerical oracle"},
        {"fan-validate", "check a fan; exit 2 when invalid"},
        {"refine", "build a fan tower and write its last level"},
        {"limit-point", "cone chain of a direction through a tower and its limit"},
        {"fiber-rank", "rank and normalizer of a direction"},
        {"dualcx", "dual complex of a strata incidence file"},
        {"subdivide", "scaled subdivision at level N"},
        {"rational-points", "points of the complex with denominators dividing N"},
        {"map-fibers", "fibers of a stratified map over target points"},
        {"toric-fiber", "fiber complex of a toric morphism over a base cone"},
        {"galaxy", "classify points along an elliptic tower, or list decomposition slots"},
    };
    for (const auto& name : cli::subcommands()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("inputs", cfg.inputs, "input JSON files")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", cfg.output, "artifact or report file");
        sub->add_option("--svg", cfg.svg, "write a picture (2-D results only)");
        sub->add_option("--seed", cfg.seed, "oracle seed")->capture_default_str();
        sub->add_option("--depth", depth, "tower depth cap / oracle depth");
        sub->add_option("--N,--level", level, "subdivision level")->capture_default_str();
        sub->add_flag("--json", cfg.json, "print the JSON report");
        sub->add_option("--cluster-threshold", cfg.cluster_threshold, "oracle clustering radius (radians)")
            ->capture_default_str();
        sub->add_option("--paths", cfg.paths, "oracle sample paths")->capture_default_str();
        sub->add_option("--parallel", cfg.parallel, "worker threads for batches")->capture_default_str();
        sub->add_option("--mode", cfg.mode, "complex mode for incidence inputs: algebraic or analytic");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (depth) cfg.depth = depth;
    try {
        cfg.level = parse_integer(level);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return cli::kParse;
    }
    return cli::run_and_write(cfg, std::cout, std::cerr);
}
