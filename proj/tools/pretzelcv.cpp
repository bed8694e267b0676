// pretzelcv: character varieties and A-polynomials of odd pretzel knots.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pretzelcv/cli.hpp"
#include "pretzelcv/roots.hpp"

using namespace pretzelcv;

int main(int argc, char** argv) {
    CLI::App app{"Character varieties and A-polynomials of pretzel knots P(2k1+1, 2k2+1, 2k3+1)"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.precision_bits = default_precision();
    std::vector<int> ks;
    bool hard = false, all = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("k", ks, "k1 k2 k3")->expected(3)->required();
        sub->add_flag("--json", cfg.json, "JSON output");
        sub->add_option("--samples", cfg.samples, "samples per curve");
        sub->add_option("--tol", cfg.tolerance, "oracle tolerance");
        sub->add_option("--seed", cfg.seed, "sampling seed");
        sub->add_option("--precision", cfg.precision_bits, "root-finding precision in bits (PRETZELCV_PRECISION)");
        sub->add_option("--out", cfg.output, "write output to a file");
    };
    CLI::App* components = app.add_subcommand("components", "list and verify the components");
    common(components);
    CLI::App* apoly = app.add_subcommand("apoly", "A-polynomial factors");
    common(apoly);
    auto* hard_flag = apoly->add_flag("--hard", hard, "only the factor from the three-dimensional-trace part");
    apoly->add_flag("--all", all, "hard factor and conic factors (default)")->excludes(hard_flag);
    CLI::App* verify = app.add_subcommand("verify", "run the oracle suites and list anomalies");
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : kExitUsage;
    }

    CommandOutput out;
    try {
        cfg.params = {ks[0], ks[1], ks[2]};
        validate(cfg);
        set_working_precision(cfg.precision_bits);
        if (components->parsed()) out = cmd_components(cfg);
        else if (apoly->parsed()) out = cmd_apoly(cfg, hard);
        else out = cmd_verify(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (cfg.output.empty()) {
        std::cout << out.text;
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << "cannot write " << cfg.output << "\n";
            return kExitUsage;
        }
        f << out.text;
    }
    return out.exit_code;
}
