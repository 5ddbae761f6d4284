#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oddwalks/chain.hpp"
#include "oddwalks/contingency_chain.hpp"
#include "oddwalks/matchings_chain.hpp"

namespace oddwalks {

struct SwitchInstance {
    int n = 0;
    int d = 0;
};

struct MatchingsInstance {
    HostGraph graph;
};

struct ContingencyInstance {
    Margins margins;
};

using InstanceSpec = std::variant<SwitchInstance, MatchingsInstance, ContingencyInstance>;

// Dispatch to the family constructors.
Chain build_chain(const InstanceSpec& spec, long max_states = kDefaultMaxStates);

struct AnalysisOptions {
    std::vector<double> epsilons{0.25, 0.01};
    bool exact_mixing = false;  // also compute exact TV mixing times
    bool lazy = false;          // also analyze (I + P)/2
    long max_states = kDefaultMaxStates;
};

// Full pipeline result: a deterministic JSON report (the `timings` object is
// the only nondeterministic part), CSV data rows, and the overall verdict
// (true iff no check failed; skipped checks do not fail).
struct AnalysisResult {
    nlohmann::ordered_json report;
    bool all_pass = false;
    std::vector<std::string> csv_rows;
};

std::string csv_header(const AnalysisOptions& options);

AnalysisResult analyze_switch(int n, int d, const AnalysisOptions& options);
AnalysisResult analyze_matchings(const HostGraph& graph, const AnalysisOptions& options);
AnalysisResult analyze_matchings_file(const std::string& path, const AnalysisOptions& options);
AnalysisResult analyze_contingency(const Margins& margins, const AnalysisOptions& options);

// Property sweep over seeded random reversible chains with random odd walk
// sets; state counts are drawn in [2, max_chain_states].
AnalysisResult analyze_random_sweep(int max_chain_states, int trials, std::uint64_t seed,
                                    const AnalysisOptions& options);

// One-line-per-check terminal rendering of a report.
std::string report_summary_text(const nlohmann::ordered_json& report);

// Shortest decimal text that round-trips the double.
std::string format_double(double value);

}  // namespace oddwalks
