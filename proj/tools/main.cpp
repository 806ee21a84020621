#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "powerspan/config.hpp"
#include "powerspan/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"powerspan: density experiments for spans of powers of functions"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"classify", "approx",      "psi", "modulate",
                                            "cosine",   "diophantine", "hup"};
    const std::vector<std::string> blurbs = {
        "Muntz-Szasz classification of an index family on an interval",
        "best-approximation error curves for a power system",
        "injectivity/density verdicts and annihilator witnesses for {psi^lambda}",
        "two-family modulated systems: verdicts, witnesses, singularity exponent",
        "translated cosine powers: decomposition, counterexamples, pipeline",
        "continued fractions, approximability witnesses, small denominators",
        "Heisenberg uniqueness checks for pairs of lines through the origin"};

    struct Options {
        std::string config_path;
        std::string out_dir = ".";
        bool verbose = false;
    };
    std::vector<Options> opts(names.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", opts[i].config_path, "experiment config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts[i].out_dir, "output directory (default: .)");
        sub->add_flag("--verbose", opts[i].verbose, "echo output paths");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < names.size(); ++i) {
        if (subs[i]->parsed()) {
            try {
                const auto cfg = powerspan::config::Config::parse_file(opts[i].config_path);
                return powerspan::runner::run(names[i], cfg, opts[i].out_dir, opts[i].verbose);
            } catch (const powerspan::config::ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return powerspan::runner::kExitConfigError;
            }
        }
    }
    return powerspan::runner::kExitConfigError;
}
