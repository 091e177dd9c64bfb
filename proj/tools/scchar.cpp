// scchar command-line front end: sweep-bound, asymptotics, kappa-table, checks.

#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "scchar/cli/commands.hpp"

namespace {

using scchar::cli::SweepConfig;
using Command = int (*)(const SweepConfig&, std::ostream&, std::ostream&);

// Flag name -> config key. Every value is routed through set_field so flags
// and config files share one parser.
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"--p", "p"},
    {"--prec", "prec"},
    {"--r-min", "r_min"},
    {"--r-max", "r_max"},
    {"--gamma-depth-max", "gamma_depth_max"},
    {"--classes", "classes"},
    {"--seed", "seed"},
    {"--tol", "tol"},
    {"--out", "out"},
    {"--samples", "gamma_samples"},
    {"--noncompact", "noncompact"},
    {"--dedupe-inverse", "dedupe_inverse"},
    {"--gamma-class", "gamma_class"},
    {"--gamma-depth", "gamma_depth"},
    {"--types", "types"},
    {"--inject-fault", "inject_fault"},
};

const std::map<std::string, std::string> kHelp = {
    {"p", "prime(s), comma separated"},
    {"prec", "p-adic precision N (0: derived)"},
    {"r_min", "smallest parameter depth, half-units"},
    {"r_max", "largest parameter depth, half-units"},
    {"gamma_depth_max", "largest |d_plus| of sampled elements, half-units"},
    {"classes", "torus classes, e.g. eps:1,pi:1,split"},
    {"seed", "sampling seed"},
    {"tol", "absolute tolerance"},
    {"out", "output path (default stdout)"},
    {"gamma_samples", "random elements per class and depth"},
    {"noncompact", "include non-compact split elements (true/false)"},
    {"dedupe_inverse", "identify phi with its inverse (true/false)"},
    {"gamma_class", "torus class of the fixed element (asymptotics)"},
    {"gamma_depth", "depth d of the fixed element, half-units (asymptotics)"},
    {"types", "root system types, e.g. A1,G2"},
    {"inject_fault", "test fixture: wrong-legendre"},
};

struct Sub {
    CLI::App* app;
    Command run;
    std::string config_path{};
    std::map<std::string, std::string> values{};
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character magnitude sweeps and bound constants for supercuspidal representations of SL(2)"};
    app.require_subcommand(1);

    std::vector<Sub> subs = {
        {app.add_subcommand("sweep-bound", "check D^{1/2}|Theta| <= 2 + D^{1/2} over parameters and elements"),
         scchar::cli::cmd_sweep_bound},
        {app.add_subcommand("asymptotics", "max |Theta|/deg per depth for a fixed element"), scchar::cli::cmd_asymptotics},
        {app.add_subcommand("kappa-table", "bound constants per root system type"), scchar::cli::cmd_kappa_table},
        {app.add_subcommand("checks", "property suites with PASS/FAIL lines"), scchar::cli::cmd_checks},
    };
    for (auto& s : subs) {
        s.app->add_option("--config", s.config_path, "key=value config file (flags override it)");
        for (const auto& [flag, key] : kFlags) s.app->add_option(flag, s.values[key], kHelp.at(key));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    for (auto& s : subs) {
        if (!s.app->parsed()) continue;
        try {
            SweepConfig cfg;
            if (!s.config_path.empty()) cfg = scchar::cli::load_config(s.config_path);
            for (const auto& [flag, key] : kFlags)
                if (s.app->count(flag) > 0) scchar::cli::set_field(cfg, key, s.values[key], flag + ": ");
            return s.run(cfg, std::cout, std::cerr);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }
    return 2;
}
