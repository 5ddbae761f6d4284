// Command-line front end.  Talks to the library exclusively through the C
// API in oddwalks.h, the same surface other language bindings would use.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <oddwalks.h>

namespace {

struct CommonOpts {
    std::vector<double> eps;
    bool exact_mixing = false;
    bool lazy = false;
    long max_states = 0;
    std::string report_path;
    std::string csv_path;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--eps", opts.eps,
                    "total-variation thresholds in (0, 1); default 0.25,0.01")
        ->delimiter(',');
    cmd->add_flag("--exact-mixing", opts.exact_mixing,
                  "also compute exact total-variation mixing times");
    cmd->add_flag("--lazy", opts.lazy, "also analyze the lazy chain (I + P)/2");
    cmd->add_option("--max-states", opts.max_states,
                    "state-space cap (0 = library default)");
    cmd->add_option("--report", opts.report_path, "write the JSON report to this file");
    cmd->add_option("--csv", opts.csv_path,
                    "write a CSV header plus one data row per analyzed chain to this file");
}

bool write_file(const std::string& path, const char* text) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return false;
    }
    out << text;
    return out.good();
}

int finish(ow_status status, ow_analysis* analysis, const CommonOpts& opts) {
    if (status != OW_OK) {
        std::cerr << "error: " << ow_last_error() << '\n';
        return 2;
    }
    std::fputs(ow_report_summary(analysis), stdout);
    int rc = ow_all_checks_passed(analysis) ? 0 : 1;
    if (!opts.report_path.empty() && !write_file(opts.report_path, ow_report_json(analysis)))
        rc = 2;
    if (!opts.csv_path.empty() && !write_file(opts.csv_path, ow_report_csv(analysis)))
        rc = 2;
    ow_analysis_free(analysis);
    return rc;
}

ow_options make_options(const CommonOpts& opts) {
    ow_options options;
    ow_options_init(&options);
    if (!opts.eps.empty()) {
        options.epsilons = opts.eps.data();
        options.n_epsilons = opts.eps.size();
    }
    options.exact_mixing = opts.exact_mixing ? 1 : 0;
    options.lazy = opts.lazy ? 1 : 0;
    options.max_states = opts.max_states;
    return options;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Bounds the smallest eigenvalue of reversible Markov chains via the congestion "
        "of canonical odd-length closed walks, and verifies every bound exactly on "
        "fully enumerated state spaces."};
    app.require_subcommand(1);

    int switch_n = 0, switch_d = 0;
    CommonOpts switch_opts;
    auto* switch_cmd =
        app.add_subcommand("switch", "switch chain on labeled d-regular graphs");
    switch_cmd->add_option("--n", switch_n, "number of vertices")->required();
    switch_cmd->add_option("--d", switch_d, "degree")->required();
    add_common_options(switch_cmd, switch_opts);

    std::string graph_path;
    CommonOpts matchings_opts;
    auto* matchings_cmd = app.add_subcommand(
        "matchings", "perfect/near-perfect matchings chain on a host graph");
    matchings_cmd->add_option("--graph", graph_path, "graph file (`n m` header, `u v` lines)")
        ->required();
    add_common_options(matchings_cmd, matchings_opts);

    std::vector<long> row_sums, col_sums;
    CommonOpts contingency_opts;
    auto* contingency_cmd = app.add_subcommand(
        "contingency", "heat-bath chain on contingency tables with fixed margins");
    contingency_cmd->add_option("--rows", row_sums, "row sums, e.g. 2,2,2")
        ->delimiter(',')
        ->required();
    contingency_cmd->add_option("--cols", col_sums, "column sums, e.g. 2,2,2")
        ->delimiter(',')
        ->required();
    add_common_options(contingency_cmd, contingency_opts);

    int random_states = 30, random_trials = 100;
    std::uint64_t random_seed = 42;
    CommonOpts random_opts;
    auto* random_cmd = app.add_subcommand(
        "random", "property sweep over seeded random reversible chains");
    random_cmd->add_option("--states", random_states, "maximum state count per trial");
    random_cmd->add_option("--trials", random_trials, "number of random chains");
    random_cmd->add_option("--seed", random_seed, "sweep seed");
    add_common_options(random_cmd, random_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ow_analysis* analysis = nullptr;
    if (switch_cmd->parsed()) {
        const ow_options options = make_options(switch_opts);
        const ow_status status = ow_analyze_switch(switch_n, switch_d, &options, &analysis);
        return finish(status, analysis, switch_opts);
    }
    if (matchings_cmd->parsed()) {
        const ow_options options = make_options(matchings_opts);
        const ow_status status =
            ow_analyze_matchings_file(graph_path.c_str(), &options, &analysis);
        return finish(status, analysis, matchings_opts);
    }
    if (contingency_cmd->parsed()) {
        const ow_options options = make_options(contingency_opts);
        const ow_status status = ow_analyze_contingency(
            row_sums.data(), row_sums.size(), col_sums.data(), col_sums.size(), &options,
            &analysis);
        return finish(status, analysis, contingency_opts);
    }
    const ow_options options = make_options(random_opts);
    const ow_status status =
        ow_analyze_random_sweep(random_states, random_trials, random_seed, &options, &analysis);
    return finish(status, analysis, random_opts);
}
