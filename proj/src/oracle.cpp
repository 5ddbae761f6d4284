#include "oddwalks/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "oddwalks/errors.hpp"
#include "oddwalks/spectral.hpp"

namespace oddwalks::oracle {

namespace {

// b += v with Kahan compensation c.
inline void compensated_add(double& b, double& c, double v) {
    const double y = v - c;
    const double t = b + y;
    c = (t - b) - y;
    b = t;
}

}  // namespace

long tv_mixing_time(const TransitionKernel& kernel, const StationaryDistribution& pi,
                    double epsilon, long state_cap, long iteration_cap) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidArgumentError("epsilon must lie in (0, 1)");
    const std::size_t n = kernel.size();
    if (n != pi.size()) throw InvalidArgumentError("kernel and distribution sizes differ");
    if (static_cast<long>(n) > state_cap)
        throw StateCapError("exact mixing time needs at most " + std::to_string(state_cap) +
                            " states, got " + std::to_string(n));
    auto ergodic = check_ergodicity(kernel);
    if (!ergodic.irreducible || !ergodic.aperiodic)
        throw InvalidArgumentError("exact mixing time needs an ergodic kernel");

    std::vector<double> target(n);
    for (std::size_t y = 0; y < n; ++y) target[y] = pi.pi[y].to_double();

    // dist[x] holds the row P^t(x, .) as doubles.
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t x = 0; x < n; ++x) dist[x][x] = 1.0;

    auto max_tv = [&]() {
        double worst = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            double sum = 0.0, comp = 0.0;
            for (std::size_t y = 0; y < n; ++y)
                compensated_add(sum, comp, std::fabs(dist[x][y] - target[y]));
            worst = std::max(worst, sum / 2.0);
        }
        return worst;
    };

    if (max_tv() <= epsilon) return 0;

    std::vector<double> next(n), comp(n);
    for (long t = 1; t <= iteration_cap; ++t) {
        for (std::size_t x = 0; x < n; ++x) {
            std::fill(next.begin(), next.end(), 0.0);
            std::fill(comp.begin(), comp.end(), 0.0);
            for (std::size_t z = 0; z < n; ++z) {
                const double mass = dist[x][z];
                if (mass == 0.0) continue;
                for (const auto& entry : kernel.rows[z])
                    compensated_add(next[entry.target], comp[entry.target],
                                    mass * entry.prob.to_double());
            }
            dist[x] = next;
        }
        if (max_tv() <= epsilon) return t;
    }
    throw Error("exact mixing time exceeds the iteration limit " +
                std::to_string(iteration_cap));
}

long long count_regular_graphs(int n, int d) {
    if (n < 2 || n > 7)
        throw InvalidArgumentError("regular graph filter supports 2 <= n <= 7");
    const int pairs = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pair_of_bit;
    pair_of_bit.reserve(pairs);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pair_of_bit.emplace_back(u, v);

    long long count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
        int degree[7] = {0, 0, 0, 0, 0, 0, 0};
        for (int b = 0; b < pairs; ++b)
            if (mask & (1ULL << b)) {
                ++degree[pair_of_bit[b].first];
                ++degree[pair_of_bit[b].second];
            }
        bool regular = true;
        for (int v = 0; v < n && regular; ++v) regular = degree[v] == d;
        if (regular) ++count;
    }
    return count;
}

namespace {

long long count_matchings_from(const HostGraph& g, std::vector<bool>& covered, int vertex,
                               std::size_t left) {
    if (left == 0) return 1;
    while (vertex < g.n && covered[vertex]) ++vertex;
    if (vertex == g.n) return 0;
    // Leave `vertex` uncovered, or match it along any incident edge.
    covered[vertex] = true;
    long long total = count_matchings_from(g, covered, vertex + 1, left);
    for (auto [u, v] : g.edges) {
        const int other = u == vertex ? v : (v == vertex ? u : -1);
        if (other < 0 || covered[other]) continue;
        covered[other] = true;
        total += count_matchings_from(g, covered, vertex + 1, left - 1);
        covered[other] = false;
    }
    covered[vertex] = false;
    return total;
}

}  // namespace

long long count_matchings(const HostGraph& g, std::size_t size) {
    std::vector<bool> covered(g.n, false);
    return count_matchings_from(g, covered, 0, size);
}

namespace {

long long count_tables_from(const Margins& margins, std::vector<long>& row_left,
                            std::size_t col) {
    const std::size_t m = margins.m(), n = margins.n();
    if (col == n - 1) {
        // Last column forced by the row remainders.
        long long sum = 0;
        for (long r : row_left) sum += r;
        return sum == margins.cols[col] ? 1 : 0;
    }
    // Enumerate column `col` top down.
    long long total = 0;
    auto rec = [&](auto&& self, std::size_t i, long col_left) -> void {
        if (i == m - 1) {
            if (col_left > row_left[i]) return;
            row_left[i] -= col_left;
            total += count_tables_from(margins, row_left, col + 1);
            row_left[i] += col_left;
            return;
        }
        const long cap = std::min(row_left[i], col_left);
        for (long v = 0; v <= cap; ++v) {
            row_left[i] -= v;
            self(self, i + 1, col_left - v);
            row_left[i] += v;
        }
    };
    rec(rec, 0, margins.cols[col]);
    return total;
}

}  // namespace

long long count_tables(const Margins& margins) {
    margins.validate();
    std::vector<long> row_left = margins.rows;
    return count_tables_from(margins, row_left, 0);
}

double power_iteration_dominant(const TransitionKernel& kernel,
                                const StationaryDistribution& pi, int iterations) {
    const std::size_t n = kernel.size();
    if (n < 2) throw InvalidArgumentError("power iteration needs at least 2 states");
    const DenseMatrix s = symmetrize(kernel, pi);

    std::vector<double> top(n);
    for (std::size_t x = 0; x < n; ++x) top[x] = std::sqrt(pi.pi[x].to_double());
    double top_norm = 0.0;
    for (double v : top) top_norm += v * v;
    top_norm = std::sqrt(top_norm);
    for (double& v : top) v /= top_norm;

    auto deflate = [&](std::vector<double>& v) {
        double dot = 0.0;
        for (std::size_t x = 0; x < n; ++x) dot += v[x] * top[x];
        for (std::size_t x = 0; x < n; ++x) v[x] -= dot * top[x];
    };
    auto normalize = [&](std::vector<double>& v) {
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (norm < 1e-300) throw NumericError("power iteration vector vanished after deflation");
        for (double& c : v) c /= norm;
        return norm;
    };

    SplitMix64 rng(0x0DDBA11);
    std::vector<double> v(n);
    for (std::size_t x = 0; x < n; ++x)
        v[x] = static_cast<double>(rng.next() >> 11) / 9007199254740992.0 - 0.5;
    deflate(v);
    normalize(v);

    std::vector<double> w(n);
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) sum += s.at(i, j) * v[j];
            w[i] = sum;
        }
        deflate(w);
        lambda = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = w[i] - lambda * v[i];
            residual += r * r;
        }
        if (std::sqrt(residual) <= 1e-10) return lambda;
        v = w;
        normalize(v);
    }
    throw NumericError("power iteration did not converge; dominant deflated eigenvalues may be "
                       "tied in magnitude");
}

Chain random_reversible_chain(const RandomChainSpec& spec) {
    if (spec.n_states < 2) throw InvalidArgumentError("random chain needs at least 2 states");
    if (!(spec.loop_mass.is_positive() && spec.loop_mass < Rational(1)))
        throw InvalidArgumentError("loop mass must lie in (0, 1)");
    const std::size_t n = static_cast<std::size_t>(spec.n_states);
    SplitMix64 rng(spec.seed);

    // Symmetric integer weights; weight[x][x] is the self-loop weight.
    std::vector<std::vector<long long>> weight(n, std::vector<long long>(n, 0));
    for (std::size_t v = 1; v < n; ++v) {
        const std::size_t u = rng.below(v);  // random spanning tree keeps it connected
        const long long w = 1 + static_cast<long long>(rng.below(8));
        weight[u][v] = weight[v][u] = w;
    }
    const std::size_t extra = rng.below(n + 1);
    for (std::size_t k = 0; k < extra; ++k) {
        const std::size_t u = rng.below(n), v = rng.below(n);
        if (u == v || weight[u][v] != 0) continue;
        const long long w = 1 + static_cast<long long>(rng.below(8));
        weight[u][v] = weight[v][u] = w;
    }
    bool any_loop = false;
    const auto p = static_cast<std::uint64_t>(spec.loop_mass.num());
    const auto q = static_cast<std::uint64_t>(spec.loop_mass.den());
    for (std::size_t x = 0; x < n; ++x)
        if (rng.below(q) < p) {
            weight[x][x] = 1 + static_cast<long long>(rng.below(8));
            any_loop = true;
        }
    if (!any_loop) {
        const std::size_t x = rng.below(n);
        weight[x][x] = 1 + static_cast<long long>(rng.below(8));
    }

    std::vector<long long> degree(n, 0);
    long long total = 0;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) degree[x] += weight[x][y];
        total += degree[x];
    }

    Chain chain;
    std::vector<std::string> encodings;
    encodings.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::string enc(4, '\0');
        for (int b = 0; b < 4; ++b) enc[b] = static_cast<char>((x >> (24 - 8 * b)) & 0xFF);
        encodings.push_back(std::move(enc));
    }
    chain.space = StateSpace::from_encodings(std::move(encodings));
    chain.kernel.rows.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (weight[x][y] != 0)
                chain.kernel.rows[x].push_back(
                    {static_cast<StateIndex>(y), Rational(weight[x][y], degree[x])});
    chain.kernel.validate();
    chain.pi.pi.reserve(n);
    for (std::size_t x = 0; x < n; ++x) chain.pi.pi.emplace_back(degree[x], total);
    chain.pi.validate();
    chain.descriptor = {ChainFamily::Custom,
                        {{"states", std::to_string(spec.n_states)},
                         {"seed", std::to_string(spec.seed)},
                         {"loop_mass", spec.loop_mass.to_string()}},
                        n};

    auto balance = check_detailed_balance(chain.kernel, chain.pi);
    auto ergodic = check_ergodicity(chain.kernel);
    if (!balance.ok || !ergodic.irreducible || !ergodic.aperiodic)
        throw Error("random chain generator produced a non-ergodic or non-reversible chain");
    return chain;
}

WalkSet random_odd_walkset(const TransitionKernel& kernel, std::uint64_t seed) {
    const std::size_t n = kernel.size();
    auto ergodic = check_ergodicity(kernel);
    if (!ergodic.irreducible || !ergodic.aperiodic)
        throw InvalidArgumentError("odd walks need an ergodic kernel");

    // Seed-shuffled adjacency, shared by every per-state search.
    SplitMix64 rng(seed);
    std::vector<std::vector<StateIndex>> targets(n);
    for (std::size_t x = 0; x < n; ++x) {
        targets[x].reserve(kernel.rows[x].size());
        for (const auto& entry : kernel.rows[x]) targets[x].push_back(entry.target);
        for (std::size_t i = targets[x].size(); i > 1; --i)
            std::swap(targets[x][i - 1], targets[x][rng.below(i)]);
    }

    WalkSet out;
    out.walks.reserve(n);
    for (std::size_t start = 0; start < n; ++start) {
        // Shortest path from (start, even) to (start, odd) in the
        // parity-doubled graph.
        std::vector<std::array<StateIndex, 2>> parent(n);
        std::vector<std::array<bool, 2>> seen(n, {false, false});
        std::deque<std::pair<StateIndex, int>> frontier;
        frontier.emplace_back(static_cast<StateIndex>(start), 0);
        seen[start][0] = true;
        while (!frontier.empty() && !seen[start][1]) {
            auto [v, parity] = frontier.front();
            frontier.pop_front();
            for (StateIndex next : targets[v]) {
                const int flipped = 1 - parity;
                if (seen[next][flipped]) continue;
                seen[next][flipped] = true;
                parent[next][flipped] = v;
                frontier.emplace_back(next, flipped);
            }
        }
        if (!seen[start][1]) throw Error("no closed odd walk found despite ergodicity");

        // Walk parents back from (start, odd) to the BFS root (start, even).
        std::vector<StateIndex> reversed;
        StateIndex v = static_cast<StateIndex>(start);
        int parity = 1;
        reversed.push_back(v);
        while (!(v == start && parity == 0)) {
            v = parent[v][parity];
            parity = 1 - parity;
            reversed.push_back(v);
        }
        OddWalk walk;
        walk.vertices.assign(reversed.rbegin(), reversed.rend());
        out.walks.push_back(std::move(walk));
    }
    return out;
}

}  // namespace oddwalks::oracle
