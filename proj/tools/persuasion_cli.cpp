#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "persuasion/cli.hpp"

namespace cli = persuasion::cli;

int main(int argc, char** argv) {
    CLI::App app{"Costly persuasion with a partially informed sender"};
    app.require_subcommand(1);
    cli::Options opts;
    std::string format = "json";

    auto shared = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opts.config_path, "config document (JSON)");
        if (needs_config) c->required();
        sub->add_option("--out", opts.out_path, "write output here instead of stdout");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--grid", opts.grid, "verifier resolution per axis");
        sub->add_option("--tol", opts.tol, "verifier tolerance");
        sub->add_option("--seed", opts.seed, "RNG seed");
        sub->add_option("--paths", opts.paths, "Monte Carlo paths");
        sub->add_option("--threads", opts.threads, "worker threads, 0 = all cores");
    };

    auto* analyze = app.add_subcommand("analyze", "crossing regime of the cost model");
    shared(analyze, true);
    auto* solve = app.add_subcommand("solve", "equilibrium outcomes for the config's regime");
    shared(solve, true);
    const std::map<std::string, cli::Equilibrium> kinds{{"auto", cli::Equilibrium::Auto},
                                                        {"separating", cli::Equilibrium::Separating},
                                                        {"pooling", cli::Equilibrium::Pooling},
                                                        {"uninformative", cli::Equilibrium::Uninformative}};
    solve->add_option("--equilibrium", opts.equilibrium, "auto, separating, pooling or uninformative")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    auto* verify = app.add_subcommand("verify", "D1 check of a strategy profile; exits 1 on violations");
    shared(verify, true);
    verify->add_option("--profile", opts.profile_path, "document with a \"profile\" array (defaults to --config)");
    auto* bench = app.add_subcommand("bench", "known-type benchmark per type and at the common prior");
    shared(bench, true);
    auto* wald = app.add_subcommand("wald", "sequential sampling closed forms and Monte Carlo");
    shared(wald, false);
    wald->add_option("--alpha", opts.alpha, "signal accuracy in (0.5, 1)");
    wald->add_option("--cg", opts.c_g, "cost of a g signal");
    wald->add_option("--cb", opts.c_b, "cost of a b signal");
    wald->add_option("--n-bar", opts.n_bar, "upper threshold (> 0)");
    wald->add_option("--n-low", opts.n_low, "lower threshold (< 0)");
    wald->add_option("--mu0", opts.mu0, "prior on the good state");
    auto* curves = app.add_subcommand("curves", "indifference curves, loci and obedience lines");
    shared(curves, true);
    curves->add_option("--p", opts.p, "experiment p the indifference curves pass through");
    curves->add_option("--q", opts.q, "experiment q the indifference curves pass through");
    curves->add_option("--samples", opts.samples, "points per locus and obedience line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kInvalidInput;
    }

    opts.command = *cli::parse_command(app.get_subcommands().front()->get_name());
    opts.format = format == "csv" ? cli::Format::Csv : cli::Format::Json;

    const auto res = cli::run(opts);
    if (!res.error.empty()) std::cerr << res.error << (res.error.back() == '\n' ? "" : "\n");
    if (!res.output.empty()) {
        if (opts.out_path.empty()) {
            std::cout << res.output;
        } else {
            std::ofstream out(opts.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << opts.out_path << "\n";
                return cli::kInvalidInput;
            }
            out << res.output;
        }
    }
    return res.status;
}
