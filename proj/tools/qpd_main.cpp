// Command-line front end: decompose | correlate | check.
// Input and output documents are JSON; see README for the schema.

#include <CLI11.hpp>

#include "qpd/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"prime decomposition and correlation indices of finite quantum states"};
    app.require_subcommand(1);

    qpd::CliOptions opts;

    auto add_io = [&](CLI::App* cmd, bool need_input) {
        if (need_input)
            cmd->add_option("-i,--input", opts.input_path, "input JSON document")->required();
        cmd->add_option("-o,--output", opts.output_path, "output file (default: stdout)");
        cmd->add_flag("--diagnostics-json", opts.diagnostics_json,
                      "one JSON object per diagnostic line on stderr");
    };

    auto* dec = app.add_subcommand("decompose", "factor a state over the coprime factors of n");
    add_io(dec, true);
    dec->add_option("--factor-order", opts.factor_order,
                    "explicit coprime modulus order, e.g. 3,4,5")
        ->delimiter(',');
    dec->add_option("--convention", opts.convention,
                    "phase convention: auto | half-angle | mod-inverse")
        ->check(CLI::IsMember({"auto", "half-angle", "mod-inverse"}));
    dec->add_option("--tol", opts.tol, "density validation tolerance");
    dec->add_option("--threshold", opts.threshold, "coefficient dump magnitude cutoff");

    auto* cor = app.add_subcommand("correlate", "correlation indices for a partitioned state");
    add_io(cor, true);
    cor->add_option("--dims", opts.dims, "partition dimensions d1,d2 or d1,d2,d3")
        ->delimiter(',');
    cor->add_option("--tol", opts.tol, "density validation tolerance");

    auto* chk = app.add_subcommand("check", "run the invariant suites for a dimension");
    add_io(chk, false);
    chk->add_option("--n", opts.check_n, "dimension to exercise")->required();
    chk->add_option("--seed", opts.seed, "seed for sampled indices and random states");
    chk->add_option("--trials", opts.trials, "random-state trials per suite");

    CLI11_PARSE(app, argc, argv);

    if (dec->parsed()) return qpd::cmd_decompose(opts);
    if (cor->parsed()) return qpd::cmd_correlate(opts);
    return qpd::cmd_check(opts);
}
