#include "oddwalks.h"

#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "oddwalks/analysis.hpp"
#include "oddwalks/errors.hpp"

struct ow_analysis {
    std::string json;
    std::string csv;
    std::string summary;
    bool all_pass = false;
};

namespace {

thread_local std::string g_last_error;

oddwalks::AnalysisOptions convert_options(const ow_options* options) {
    oddwalks::AnalysisOptions converted;
    if (!options) return converted;
    if (options->epsilons) {
        if (options->n_epsilons == 0)
            throw oddwalks::InvalidArgumentError("epsilons array is non-null but empty");
        converted.epsilons.assign(options->epsilons, options->epsilons + options->n_epsilons);
        for (double eps : converted.epsilons)
            if (!(eps > 0.0 && eps < 1.0))
                throw oddwalks::InvalidArgumentError("epsilon values must lie in (0, 1)");
    } else if (options->n_epsilons != 0) {
        throw oddwalks::InvalidArgumentError("n_epsilons is nonzero but epsilons is null");
    }
    converted.exact_mixing = options->exact_mixing != 0;
    converted.lazy = options->lazy != 0;
    if (options->max_states < 0)
        throw oddwalks::InvalidArgumentError("max_states must be nonnegative");
    if (options->max_states > 0) converted.max_states = options->max_states;
    return converted;
}

template <typename F>
ow_status run_analysis(ow_analysis** out, const ow_options* options, F&& body) {
    if (!out) {
        g_last_error = "output handle pointer is null";
        return OW_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        const oddwalks::AnalysisOptions converted = convert_options(options);
        const oddwalks::AnalysisResult result = body(converted);
        auto handle = std::make_unique<ow_analysis>();
        handle->json = result.report.dump(2);
        handle->json += '\n';
        handle->csv = oddwalks::csv_header(converted);
        handle->csv += '\n';
        for (const auto& row : result.csv_rows) {
            handle->csv += row;
            handle->csv += '\n';
        }
        handle->summary = oddwalks::report_summary_text(result.report);
        handle->all_pass = result.all_pass;
        *out = handle.release();
        g_last_error.clear();
        return OW_OK;
    } catch (const oddwalks::InvalidArgumentError& e) {
        g_last_error = e.what();
        return OW_INVALID_ARGUMENT;
    } catch (const oddwalks::InfeasibleError& e) {
        g_last_error = e.what();
        return OW_INFEASIBLE;
    } catch (const oddwalks::StateCapError& e) {
        g_last_error = e.what();
        return OW_STATE_CAP_EXCEEDED;
    } catch (const oddwalks::NumericError& e) {
        g_last_error = e.what();
        return OW_NUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return OW_INTERNAL;
    }
}

}  // namespace

extern "C" {

void ow_options_init(ow_options* options) {
    if (!options) return;
    options->epsilons = nullptr;
    options->n_epsilons = 0;
    options->exact_mixing = 0;
    options->lazy = 0;
    options->max_states = 0;
}

ow_status ow_analyze_switch(int n, int d, const ow_options* options, ow_analysis** out) {
    return run_analysis(out, options, [&](const oddwalks::AnalysisOptions& converted) {
        return oddwalks::analyze_switch(n, d, converted);
    });
}

ow_status ow_analyze_matchings_file(const char* path, const ow_options* options,
                                    ow_analysis** out) {
    if (!path) {
        g_last_error = "graph file path is null";
        if (out) *out = nullptr;
        return OW_INVALID_ARGUMENT;
    }
    std::ifstream in(path);
    if (!in) {
        g_last_error = std::string("cannot open graph file: ") + path;
        if (out) *out = nullptr;
        return OW_IO;
    }
    return run_analysis(out, options, [&](const oddwalks::AnalysisOptions& converted) {
        return oddwalks::analyze_matchings(oddwalks::HostGraph::parse(in), converted);
    });
}

ow_status ow_analyze_contingency(const long* row_sums, size_t n_rows, const long* col_sums,
                                 size_t n_cols, const ow_options* options, ow_analysis** out) {
    if (!row_sums || !col_sums) {
        g_last_error = "margin arrays must be non-null";
        if (out) *out = nullptr;
        return OW_INVALID_ARGUMENT;
    }
    return run_analysis(out, options, [&](const oddwalks::AnalysisOptions& converted) {
        oddwalks::Margins margins;
        margins.rows.assign(row_sums, row_sums + n_rows);
        margins.cols.assign(col_sums, col_sums + n_cols);
        return oddwalks::analyze_contingency(margins, converted);
    });
}

ow_status ow_analyze_random_sweep(int max_chain_states, int trials, uint64_t seed,
                                  const ow_options* options, ow_analysis** out) {
    return run_analysis(out, options, [&](const oddwalks::AnalysisOptions& converted) {
        return oddwalks::analyze_random_sweep(max_chain_states, trials, seed, converted);
    });
}

const char* ow_report_json(const ow_analysis* analysis) {
    return analysis ? analysis->json.c_str() : nullptr;
}

const char* ow_report_csv(const ow_analysis* analysis) {
    return analysis ? analysis->csv.c_str() : nullptr;
}

const char* ow_report_summary(const ow_analysis* analysis) {
    return analysis ? analysis->summary.c_str() : nullptr;
}

int ow_all_checks_passed(const ow_analysis* analysis) {
    return analysis && analysis->all_pass ? 1 : 0;
}

void ow_analysis_free(ow_analysis* analysis) { delete analysis; }

const char* ow_last_error(void) { return g_last_error.c_str(); }

const char* ow_version(void) { return "0.1.0"; }

}  // extern "C"
