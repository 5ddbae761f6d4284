#include "oddwalks/analysis.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "oddwalks/errors.hpp"
#include "oddwalks/oracle.hpp"
#include "oddwalks/spectral.hpp"
#include "oddwalks/switch_chain.hpp"
#include "oddwalks/walks.hpp"

namespace oddwalks {

using nlohmann::ordered_json;

namespace {

constexpr double kLambdaSlack = 1e-9;      // absorbs eigensolver error
constexpr double kGapSlack = 1e-8;         // slack on congestion-derived bounds
constexpr double kLazyMapTolerance = 1e-8;
constexpr double kPowerIterTolerance = 1e-6;

ordered_json verdict_pass() { return ordered_json{{"verdict", "pass"}}; }

ordered_json verdict_fail(const std::string& reason) {
    return ordered_json{{"verdict", "fail"}, {"reason", reason}};
}

ordered_json verdict_skip(const std::string& reason) {
    return ordered_json{{"verdict", "skipped"}, {"reason", reason}};
}

void add_check(ordered_json& checks, bool& all_pass, const std::string& name,
               ordered_json verdict) {
    if (verdict.at("verdict") == "fail") all_pass = false;
    checks[name] = std::move(verdict);
}

ordered_json json_real(double value) {
    if (std::isfinite(value)) return value;
    return value > 0 ? "inf" : "-inf";
}

std::string eps_label(double epsilon) {
    std::string text = format_double(epsilon);
    if (text.rfind("0.", 0) == 0) return text.substr(2);
    for (char& c : text)
        if (c == '.' || c == '-' || c == '+') c = '_';
    return text;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ordered_json spectrum_json(const Spectrum& spectrum, const SpectralSummary& summary) {
    return ordered_json{{"lambda_1", summary.lambda_1},
                        {"lambda_min", summary.lambda_min},
                        {"lambda_star", summary.lambda_star},
                        {"relaxation_time_star", json_real(summary.relaxation_time_star)},
                        {"max_residual", spectrum.max_residual}};
}

ordered_json params_json(const ChainDescriptor& descriptor) {
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : descriptor.params) params[key] = value;
    return params;
}

std::string params_csv(const ChainDescriptor& descriptor) {
    std::string out;
    for (const auto& [key, value] : descriptor.params) {
        if (!out.empty()) out += ';';
        out += key + "=" + value;
    }
    return out;
}

// Everything shared by all four subcommands: spectrum, walk validation,
// congestion, the congestion-derived eigenvalue bound, mixing bounds, the
// optional lazy analysis and exact mixing times.
struct CoreAnalysis {
    Spectrum spectrum;
    SpectralSummary summary;
    Rational eta;
    Lemma1Bound gap;
    bool all_pass = true;
    ordered_json body;    // spectrum/walks/bounds/... fragments, in order
    ordered_json checks;
    std::vector<long> taus;  // parallel to options.epsilons; -1 when absent
};

CoreAnalysis analyze_core(const Chain& chain, const std::string& walks_kind,
                          const WalkSet& walks, const AnalysisOptions& options,
                          bool check_uniform_congestion) {
    CoreAnalysis core;

    const auto balance = check_detailed_balance(chain.kernel, chain.pi);
    const auto ergodic = check_ergodicity(chain.kernel);

    core.spectrum = eigenvalues(chain.kernel, chain.pi, options.max_states);
    core.summary = summarize(core.spectrum);

    std::vector<std::string> walk_failures;
    std::map<std::size_t, long long> length_histogram;
    for (std::size_t x = 0; x < walks.size(); ++x) {
        const auto validation = validate_walk(chain.kernel, walks.walks[x]);
        for (const auto& failure : validation.failures)
            walk_failures.push_back("state " + std::to_string(x) + ": " + failure);
        ++length_histogram[walks.walks[x].length()];
    }
    const EdgeUsageIndex usage(walks);

    core.eta = congestion(chain.kernel, chain.pi, walks);
    core.gap = lemma1_bound(core.eta);

    ordered_json histogram = ordered_json::object();
    for (const auto& [length, count] : length_histogram)
        histogram[std::to_string(length)] = count;
    core.body["walks"] = ordered_json{{"kind", walks_kind},
                                      {"length_histogram", histogram},
                                      {"max_edge_multiplicity", usage.max_multiplicity()},
                                      {"eta", core.eta.to_string()},
                                      {"eta_real", core.eta.to_double()}};
    core.body["spectrum"] = spectrum_json(core.spectrum, core.summary);

    ordered_json mixing_bounds = ordered_json::object();
    std::vector<double> bounds_real;
    for (double eps : options.epsilons) {
        const double bound = mixing_time_bound(core.summary, chain.pi, eps);
        bounds_real.push_back(bound);
        mixing_bounds[format_double(eps)] = bound;
    }
    core.body["bounds"] =
        ordered_json{{"inverse_gap_upper", core.gap.bound_on_inverse.to_string()},
                     {"lambda_min_lower", core.gap.lambda_min_lower.to_string()},
                     {"lambda_min_lower_real", core.gap.lambda_min_lower.to_double()},
                     {"mixing_time", mixing_bounds}};

    add_check(core.checks, core.all_pass, "detailed_balance",
              balance.ok ? verdict_pass()
                         : verdict_fail("stationary flow is asymmetric at states " +
                                        std::to_string(balance.worst_violation->first) + ", " +
                                        std::to_string(balance.worst_violation->second)));
    add_check(core.checks, core.all_pass, "ergodicity",
              ergodic.irreducible && ergodic.aperiodic
                  ? verdict_pass()
                  : verdict_fail(ergodic.irreducible ? "kernel is periodic"
                                                     : "kernel is not irreducible"));
    add_check(core.checks, core.all_pass, "walks_valid",
              walk_failures.empty() ? verdict_pass() : verdict_fail(walk_failures.front()));

    // lambda_min >= 2/eta - 1, with explicit slack for the eigensolver.
    {
        const double floor = core.gap.lambda_min_lower.to_double() - kGapSlack;
        add_check(core.checks, core.all_pass, "congestion_gap",
                  core.summary.lambda_min >= floor
                      ? verdict_pass()
                      : verdict_fail("lambda_min " + format_double(core.summary.lambda_min) +
                                     " below 2/eta - 1 = " +
                                     format_double(core.gap.lambda_min_lower.to_double())));
    }

    if (check_uniform_congestion) {
        ordered_json verdict;
        try {
            const Rational uniform_eta = congestion_uniform(chain.kernel, walks);
            verdict = uniform_eta == core.eta
                          ? verdict_pass()
                          : verdict_fail("uniform formula gives " + uniform_eta.to_string() +
                                         ", general formula gives " + core.eta.to_string());
        } catch (const Error& e) {
            verdict = verdict_fail(std::string("uniform congestion unavailable: ") + e.what());
        }
        add_check(core.checks, core.all_pass, "congestion_uniform_match", std::move(verdict));
    }

    core.taus.assign(options.epsilons.size(), -1);
    if (options.exact_mixing) {
        ordered_json taus_json = ordered_json::object();
        ordered_json verdict = verdict_pass();
        try {
            for (std::size_t i = 0; i < options.epsilons.size(); ++i) {
                const double eps = options.epsilons[i];
                const long tau =
                    oracle::tv_mixing_time(chain.kernel, chain.pi, eps);
                core.taus[i] = tau;
                taus_json[format_double(eps)] = tau;
                if (static_cast<double>(tau) > bounds_real[i])
                    verdict = verdict_fail("exact mixing time " + std::to_string(tau) +
                                           " exceeds the spectral bound " +
                                           format_double(bounds_real[i]) + " at epsilon " +
                                           format_double(eps));
            }
            core.body["exact_mixing"] = taus_json;
        } catch (const StateCapError& e) {
            verdict = verdict_skip(e.what());
        }
        add_check(core.checks, core.all_pass, "mixing_bound", std::move(verdict));
    } else {
        add_check(core.checks, core.all_pass, "mixing_bound",
                  verdict_skip("exact mixing not requested"));
    }

    if (options.lazy) {
        const TransitionKernel lazy = lazy_transform(chain.kernel);
        const Spectrum lazy_spectrum = eigenvalues(lazy, chain.pi, options.max_states);
        const SpectralSummary lazy_summary = summarize(lazy_spectrum);
        double worst_map = 0.0;
        for (std::size_t i = 0; i < lazy_spectrum.eigenvalues.size(); ++i)
            worst_map = std::max(worst_map,
                                 std::fabs(lazy_spectrum.eigenvalues[i] -
                                           (1.0 + core.spectrum.eigenvalues[i]) / 2.0));
        core.body["lazy"] = ordered_json{{"spectrum", spectrum_json(lazy_spectrum, lazy_summary)},
                                         {"map_deviation", worst_map}};
        add_check(core.checks, core.all_pass, "lazy_map",
                  worst_map <= kLazyMapTolerance
                      ? verdict_pass()
                      : verdict_fail("lazy spectrum deviates from (1 + lambda)/2 by " +
                                     format_double(worst_map)));
        add_check(core.checks, core.all_pass, "lazy_nonnegative",
                  lazy_summary.lambda_min >= -kLambdaSlack
                      ? verdict_pass()
                      : verdict_fail("lazy lambda_min = " +
                                     format_double(lazy_summary.lambda_min)));
    }

    return core;
}

std::string csv_row(const Chain& chain, const CoreAnalysis& core, const AnalysisOptions& options,
                    bool all_pass) {
    std::ostringstream row;
    row << family_name(chain.descriptor.family) << ',' << csv_escape(params_csv(chain.descriptor))
        << ',' << chain.descriptor.n_states << ',' << format_double(core.summary.lambda_1) << ','
        << format_double(core.summary.lambda_min) << ','
        << format_double(core.summary.lambda_star) << ',' << core.eta.num() << ','
        << core.eta.den() << ','
        << (core.checks.at("congestion_gap").at("verdict") == "pass" ? "1" : "0");
    for (std::size_t i = 0; i < options.epsilons.size(); ++i) {
        const double bound =
            core.body.at("bounds").at("mixing_time").at(format_double(options.epsilons[i]));
        row << ',' << format_double(bound) << ',';
        if (core.taus[i] >= 0) row << core.taus[i];
    }
    row << ',' << (all_pass ? "1" : "0");
    return row.str();
}

ordered_json finish_report(const Chain& chain, CoreAnalysis& core,
                           std::chrono::steady_clock::time_point started) {
    ordered_json report;
    report["family"] = family_name(chain.descriptor.family);
    report["params"] = params_json(chain.descriptor);
    report["n_states"] = chain.descriptor.n_states;
    for (auto& [key, value] : core.body.items()) report[key] = value;
    report["checks"] = core.checks;
    report["all_pass"] = core.all_pass;
    const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - started);
    report["timings"] = ordered_json{{"total_us", elapsed.count()}};
    return report;
}

Rational min_holding(const TransitionKernel& kernel) {
    Rational best(1);
    for (StateIndex x = 0; x < kernel.size(); ++x) {
        const Rational* p = kernel.find(x, x);
        const Rational value = p ? *p : Rational(0);
        if (value < best) best = value;
    }
    return best;
}

void add_oracle_count_check(ordered_json& checks, bool& all_pass, ordered_json& report_oracle,
                            std::optional<long long> expected, std::size_t observed,
                            const std::string& skip_reason) {
    if (!expected) {
        add_check(checks, all_pass, "oracle_count", verdict_skip(skip_reason));
        return;
    }
    report_oracle["direct_count"] = *expected;
    add_check(checks, all_pass, "oracle_count",
              *expected == static_cast<long long>(observed)
                  ? verdict_pass()
                  : verdict_fail("direct count " + std::to_string(*expected) +
                                 " != enumerated " + std::to_string(observed)));
}

void add_power_iteration_check(ordered_json& checks, bool& all_pass, ordered_json& report_oracle,
                               const Chain& chain, const SpectralSummary& summary) {
    try {
        const double dominant = oracle::power_iteration_dominant(chain.kernel, chain.pi);
        report_oracle["power_iteration_dominant"] = dominant;
        add_check(checks, all_pass, "power_iteration",
                  std::fabs(std::fabs(dominant) - summary.lambda_star) <= kPowerIterTolerance
                      ? verdict_pass()
                      : verdict_fail("deflated dominant " + format_double(dominant) +
                                     " disagrees with lambda_star " +
                                     format_double(summary.lambda_star)));
    } catch (const NumericError& e) {
        add_check(checks, all_pass, "power_iteration", verdict_skip(e.what()));
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw Error("double formatting failed");
    return std::string(buf, ptr);
}

Chain build_chain(const InstanceSpec& spec, long max_states) {
    return std::visit(
        [&](const auto& instance) -> Chain {
            using T = std::decay_t<decltype(instance)>;
            if constexpr (std::is_same_v<T, SwitchInstance>)
                return build_switch_chain(instance.n, instance.d, max_states);
            else if constexpr (std::is_same_v<T, MatchingsInstance>)
                return build_matchings_chain(instance.graph, max_states);
            else
                return build_contingency_chain(instance.margins, max_states);
        },
        spec);
}

std::string csv_header(const AnalysisOptions& options) {
    std::string header =
        "family,params,n_states,lambda1,lambda_min,lambda_star,eta_num,eta_den,gap_bound_pass";
    for (double eps : options.epsilons) {
        const std::string label = eps_label(eps);
        header += ",mix_bound_eps" + label + ",tau_eps" + label;
    }
    header += ",all_pass";
    return header;
}

AnalysisResult analyze_switch(int n, int d, const AnalysisOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    Chain chain = build_switch_chain(n, d, options.max_states);
    const WalkSet walks = self_loop_walkset(chain.kernel);
    CoreAnalysis core = analyze_core(chain, "self_loop", walks, options, true);

    core.body["bounds"]["lambda_1_literature"] = "O(d^23 n^8)";

    add_check(core.checks, core.all_pass, "eta_cap",
              core.eta <= Rational(3)
                  ? verdict_pass()
                  : verdict_fail("eta = " + core.eta.to_string() + " exceeds 3"));
    add_check(core.checks, core.all_pass, "lambda_min_cap",
              core.summary.lambda_min >= -1.0 / 3.0 - kLambdaSlack
                  ? verdict_pass()
                  : verdict_fail("lambda_min " + format_double(core.summary.lambda_min) +
                                 " below -1/3"));
    {
        const Rational holding = min_holding(chain.kernel);
        core.body["min_holding"] = holding.to_string();
        add_check(core.checks, core.all_pass, "min_holding",
                  holding >= Rational(1, 3)
                      ? verdict_pass()
                      : verdict_fail("min p(x,x) = " + holding.to_string() + " below 1/3"));
    }
    {
        ordered_json oracle_json = ordered_json::object();
        std::optional<long long> expected;
        if (n <= 7) expected = oracle::count_regular_graphs(n, d);
        add_oracle_count_check(core.checks, core.all_pass, oracle_json, expected,
                               chain.space.size(), "direct filter supports n <= 7 only");
        add_power_iteration_check(core.checks, core.all_pass, oracle_json, chain, core.summary);
        core.body["oracle"] = oracle_json;
    }

    AnalysisResult result;
    result.all_pass = core.all_pass;
    result.csv_rows.push_back(csv_row(chain, core, options, core.all_pass));
    result.report = finish_report(chain, core, started);
    return result;
}

AnalysisResult analyze_matchings(const HostGraph& graph, const AnalysisOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    Chain chain = build_matchings_chain(graph, options.max_states);
    const WalkSet walks = self_loop_walkset(chain.kernel);
    CoreAnalysis core = analyze_core(chain, "self_loop", walks, options, true);

    const long long edges = static_cast<long long>(graph.edge_count());
    core.body["bounds"]["lambda_1_literature"] = "O(n |E| q(n))";

    add_check(core.checks, core.all_pass, "eta_cap",
              core.eta <= Rational(edges)
                  ? verdict_pass()
                  : verdict_fail("eta = " + core.eta.to_string() + " exceeds |E| = " +
                                 std::to_string(edges)));
    add_check(core.checks, core.all_pass, "lambda_min_cap",
              core.summary.lambda_min >=
                      Rational(2 - edges, edges).to_double() - kLambdaSlack
                  ? verdict_pass()
                  : verdict_fail("lambda_min " + format_double(core.summary.lambda_min) +
                                 " below -1 + 2/|E|"));
    {
        const Rational holding = min_holding(chain.kernel);
        core.body["min_holding"] = holding.to_string();
        add_check(core.checks, core.all_pass, "min_holding",
                  holding >= Rational(1, edges)
                      ? verdict_pass()
                      : verdict_fail("min p(x,x) = " + holding.to_string() + " below 1/|E|"));
    }
    {
        ordered_json oracle_json = ordered_json::object();
        const std::size_t k = static_cast<std::size_t>(graph.n) / 2;
        const long long expected =
            oracle::count_matchings(graph, k) + oracle::count_matchings(graph, k - 1);
        add_oracle_count_check(core.checks, core.all_pass, oracle_json, expected,
                               chain.space.size(), "");
        add_power_iteration_check(core.checks, core.all_pass, oracle_json, chain, core.summary);
        core.body["oracle"] = oracle_json;
    }

    AnalysisResult result;
    result.all_pass = core.all_pass;
    result.csv_rows.push_back(csv_row(chain, core, options, core.all_pass));
    result.report = finish_report(chain, core, started);
    return result;
}

AnalysisResult analyze_matchings_file(const std::string& path, const AnalysisOptions& options) {
    return analyze_matchings(HostGraph::parse_file(path), options);
}

AnalysisResult analyze_contingency(const Margins& margins, const AnalysisOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    margins.validate();
    margins.require_walk_hypotheses();
    Chain chain = build_contingency_chain(margins, options.max_states);
    const WalkSet walks = contingency_walkset(chain, margins);
    CoreAnalysis core = analyze_core(chain, "subsquare_canonical", walks, options, true);

    const long long m = static_cast<long long>(margins.m());
    const long long n = static_cast<long long>(margins.n());
    const Rational eta_cap(90 * m * m * m * n * n * n);
    const Rational inverse_gap_cap(45 * m * m * m * n * n * n);
    core.body["bounds"]["lambda_1_literature"] = "n^f(m) with f(m) >= 68 m^4";
    core.body["bounds"]["eta_cap"] = eta_cap.to_string();
    core.body["bounds"]["inverse_gap_cap"] = inverse_gap_cap.to_string();

    add_check(core.checks, core.all_pass, "eta_cap",
              core.eta <= eta_cap
                  ? verdict_pass()
                  : verdict_fail("eta = " + core.eta.to_string() + " exceeds 90 m^3 n^3 = " +
                                 eta_cap.to_string()));
    {
        const double inverse_gap = core.summary.gap_upper_inverse;
        add_check(core.checks, core.all_pass, "lambda_min_cap",
                  std::isfinite(inverse_gap) &&
                          inverse_gap <= inverse_gap_cap.to_double() + kGapSlack
                      ? verdict_pass()
                      : verdict_fail("1/(1 + lambda_min) = " + format_double(inverse_gap) +
                                     " exceeds 45 m^3 n^3 = " + inverse_gap_cap.to_string()));
    }
    add_check(core.checks, core.all_pass, "nonnegative_spectrum",
              core.summary.lambda_min >= -kLambdaSlack
                  ? verdict_pass()
                  : verdict_fail("lambda_min = " + format_double(core.summary.lambda_min)));
    add_check(core.checks, core.all_pass, "min_holding",
              verdict_skip("holding probability depends on the margins; no fixed floor"));

    {
        const auto classes = classify_all_states(chain, margins);
        long long row_good = 0, column_good = 0, bad = 0;
        for (auto kind : classes) {
            if (kind == TableClassKind::RowGood) ++row_good;
            else if (kind == TableClassKind::ColumnGood) ++column_good;
            else ++bad;
        }
        core.body["classes"] = ordered_json{
            {"row_good", row_good}, {"column_good", column_good}, {"bad", bad}};

        EdgeClassCounts worst;
        for (const auto& [edge, counts] : edge_class_counts(walks, classes)) {
            worst.row_good = std::max(worst.row_good, counts.row_good);
            worst.column_good = std::max(worst.column_good, counts.column_good);
            worst.bad = std::max(worst.bad, counts.bad);
        }
        const long long row_cap = 12 * (m - 2), col_cap = 12 * (n - 2);
        const long long bad_cap = 72 * (m - 2) * (n - 2);
        core.body["edge_class_counts"] =
            ordered_json{{"max_row_good", worst.row_good},
                         {"max_column_good", worst.column_good},
                         {"max_bad", worst.bad},
                         {"cap_row_good", row_cap},
                         {"cap_column_good", col_cap},
                         {"cap_bad", bad_cap}};
        add_check(core.checks, core.all_pass, "class_counts",
                  worst.row_good <= row_cap && worst.column_good <= col_cap &&
                          worst.bad <= bad_cap
                      ? verdict_pass()
                      : verdict_fail("some edge exceeds the per-class walk count caps"));
    }
    {
        ordered_json oracle_json = ordered_json::object();
        add_oracle_count_check(core.checks, core.all_pass, oracle_json,
                               oracle::count_tables(margins), chain.space.size(), "");
        add_power_iteration_check(core.checks, core.all_pass, oracle_json, chain, core.summary);
        core.body["oracle"] = oracle_json;
    }

    AnalysisResult result;
    result.all_pass = core.all_pass;
    result.csv_rows.push_back(csv_row(chain, core, options, core.all_pass));
    result.report = finish_report(chain, core, started);
    return result;
}

AnalysisResult analyze_random_sweep(int max_chain_states, int trials, std::uint64_t seed,
                                    const AnalysisOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    if (max_chain_states < 2) throw InvalidArgumentError("random sweep needs --states >= 2");
    if (trials < 1) throw InvalidArgumentError("random sweep needs --trials >= 1");

    oracle::SplitMix64 sweep(seed);
    AnalysisResult result;
    result.report["family"] = "random";
    result.report["params"] = ordered_json{{"states", std::to_string(max_chain_states)},
                                           {"trials", std::to_string(trials)},
                                           {"seed", std::to_string(seed)}};
    ordered_json trials_json = ordered_json::array();
    bool all_pass = true;

    for (int t = 0; t < trials; ++t) {
        oracle::RandomChainSpec spec;
        spec.n_states = 2 + static_cast<int>(sweep.below(
                                static_cast<std::uint64_t>(max_chain_states - 1)));
        spec.seed = sweep.next();
        const std::uint64_t walk_seed = sweep.next();

        Chain chain = oracle::random_reversible_chain(spec);
        const WalkSet walks = oracle::random_odd_walkset(chain.kernel, walk_seed);
        CoreAnalysis core = analyze_core(chain, "parity_bfs", walks, options, false);

        ordered_json trial;
        trial["trial"] = t;
        trial["params"] = params_json(chain.descriptor);
        trial["n_states"] = chain.descriptor.n_states;
        for (auto& [key, value] : core.body.items()) trial[key] = value;
        trial["checks"] = core.checks;
        trial["all_pass"] = core.all_pass;
        trials_json.push_back(std::move(trial));

        all_pass = all_pass && core.all_pass;
        result.csv_rows.push_back(csv_row(chain, core, options, core.all_pass));
    }

    result.report["trials"] = std::move(trials_json);
    result.report["all_pass"] = all_pass;
    const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - started);
    result.report["timings"] = ordered_json{{"total_us", elapsed.count()}};
    result.all_pass = all_pass;
    return result;
}

std::string report_summary_text(const ordered_json& report) {
    std::ostringstream out;
    out << report.at("family").get<std::string>();
    if (report.contains("params")) {
        out << " (";
        bool first = true;
        for (const auto& [key, value] : report.at("params").items()) {
            if (!first) out << ", ";
            out << key << "=" << value.get<std::string>();
            first = false;
        }
        out << ")";
    }
    out << '\n';

    auto print_checks = [&](const ordered_json& checks, const std::string& indent) {
        for (const auto& [name, verdict] : checks.items()) {
            out << indent << '[' << verdict.at("verdict").get<std::string>() << "] " << name;
            if (verdict.contains("reason"))
                out << " — " << verdict.at("reason").get<std::string>();
            out << '\n';
        }
    };

    if (report.contains("trials")) {
        const auto& trials = report.at("trials");
        std::size_t failed = 0;
        for (const auto& trial : trials)
            if (!trial.at("all_pass").get<bool>()) ++failed;
        out << "  trials: " << trials.size() << ", failing: " << failed << '\n';
        for (const auto& trial : trials) {
            if (trial.at("all_pass").get<bool>()) continue;
            out << "  trial " << trial.at("trial") << ":\n";
            print_checks(trial.at("checks"), "    ");
        }
    } else {
        out << "  states: " << report.at("n_states") << ", eta: "
            << report.at("walks").at("eta").get<std::string>() << ", lambda_min: "
            << format_double(report.at("spectrum").at("lambda_min").get<double>()) << '\n';
        print_checks(report.at("checks"), "  ");
    }
    out << (report.at("all_pass").get<bool>() ? "ALL CHECKS PASS" : "CHECK FAILURES PRESENT")
        << '\n';
    return out.str();
}

}  // namespace oddwalks
