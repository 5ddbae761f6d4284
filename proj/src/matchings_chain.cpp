#include "oddwalks/matchings_chain.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "oddwalks/errors.hpp"

namespace oddwalks {

void HostGraph::validate() const {
    if (n < 4) throw InvalidArgumentError("host graph needs at least 4 vertices");
    if (n % 2 != 0)
        throw InfeasibleError("host graph has an odd number of vertices; no perfect matchings");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v >= n || u >= v)
            throw InvalidArgumentError("host graph edge endpoints out of range");
        if (!seen.insert({u, v}).second)
            throw InvalidArgumentError("host graph has a repeated edge");
    }
}

bool HostGraph::is_perfect_matching() const {
    if (edges.size() != static_cast<std::size_t>(n) / 2) return false;
    std::vector<bool> covered(n, false);
    for (auto [u, v] : edges) {
        if (covered[u] || covered[v]) return false;
        covered[u] = covered[v] = true;
    }
    return true;
}

bool HostGraph::is_connected() const {
    if (n == 0) return false;
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<bool> seen(n, false);
    std::deque<int> frontier{0};
    seen[0] = true;
    int reached = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                frontier.push_back(w);
            }
    }
    return reached == n;
}

HostGraph HostGraph::parse(std::istream& in) {
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(raw);
    }
    if (lines.empty()) throw InvalidArgumentError("graph file is empty");

    HostGraph g;
    long m = 0;
    {
        std::istringstream head(lines[0]);
        if (!(head >> g.n >> m) || g.n < 1 || m < 0)
            throw InvalidArgumentError("graph file header must be `n m`");
        std::string extra;
        if (head >> extra) throw InvalidArgumentError("graph file header must be `n m`");
    }
    if (static_cast<long>(lines.size()) - 1 != m)
        throw InvalidArgumentError("graph file declares " + std::to_string(m) + " edges but has " +
                                   std::to_string(lines.size() - 1));
    for (long i = 1; i <= m; ++i) {
        std::istringstream line(lines[i]);
        int u = 0, v = 0;
        std::string extra;
        if (!(line >> u >> v) || (line >> extra))
            throw InvalidArgumentError("graph file edge line must be `u v`");
        if (u < 1 || u > g.n || v < 1 || v > g.n || u == v)
            throw InvalidArgumentError("graph file edge (" + std::to_string(u) + ", " +
                                       std::to_string(v) + ") is invalid for n = " +
                                       std::to_string(g.n));
        g.edges.emplace_back(std::min(u, v) - 1, std::max(u, v) - 1);
    }
    g.validate();
    return g;
}

HostGraph HostGraph::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open graph file: " + path);
    return parse(in);
}

Matching Matching::from_encoding(const HostGraph& g, const std::string& bytes) {
    Matching m{ByteBits(g.edge_count(), bytes)};
    m.validate(g);
    return m;
}

void Matching::validate(const HostGraph& g) const {
    if (edges.bit_count() != g.edge_count())
        throw InvalidArgumentError("matching encoding has wrong width");
    std::vector<bool> covered(g.n, false);
    std::size_t count = 0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (!edges.test(e)) continue;
        ++count;
        auto [u, v] = g.edges[e];
        if (covered[u] || covered[v]) throw Error("matching has adjacent edges");
        covered[u] = covered[v] = true;
    }
    const std::size_t k = static_cast<std::size_t>(g.n) / 2;
    if (count != k && count + 1 != k)
        throw Error("matching is neither perfect nor near-perfect");
}

std::vector<std::pair<Matching, Rational>> matchings_kernel_row(const Matching& m,
                                                                const HostGraph& g) {
    m.validate(g);
    const std::size_t nedges = g.edge_count();
    const std::size_t k = static_cast<std::size_t>(g.n) / 2;
    const bool perfect = m.size() == k;

    // match[v] = index of the matching edge covering v, or -1.
    std::vector<int> match(g.n, -1);
    for (std::size_t e = 0; e < nedges; ++e)
        if (m.edges.test(e)) {
            auto [u, v] = g.edges[e];
            match[u] = match[v] = static_cast<int>(e);
        }

    const Rational step(1, static_cast<long long>(nedges));
    std::map<std::string, long long> hits;
    long long stay = 0;
    for (std::size_t e = 0; e < nedges; ++e) {
        auto [u, v] = g.edges[e];
        ByteBits next = m.edges;
        if (perfect) {
            if (!m.edges.test(e)) {
                ++stay;
                continue;
            }
            next.reset(e);
        } else if (match[u] == -1 && match[v] == -1) {
            next.set(e);
        } else if (match[u] == -1) {
            next.set(e);
            next.reset(static_cast<std::size_t>(match[v]));
        } else if (match[v] == -1) {
            next.set(e);
            next.reset(static_cast<std::size_t>(match[u]));
        } else {
            ++stay;
            continue;
        }
        ++hits[next.bytes()];
    }

    std::vector<std::pair<Matching, Rational>> row;
    row.reserve(hits.size() + 1);
    if (stay > 0) row.emplace_back(m, Rational(stay) * step);
    for (const auto& [enc, count] : hits)
        row.emplace_back(Matching::from_encoding(g, enc), Rational(count) * step);
    return row;
}

Chain build_matchings_chain(const HostGraph& g, long max_states) {
    g.validate();
    if (g.is_perfect_matching())
        throw InfeasibleError("host graph is itself a perfect matching, so every edge move is "
                              "forced and no state can hold");
    if (!g.is_connected()) throw InfeasibleError("host graph is not connected");

    const std::size_t nedges = g.edge_count();
    const std::size_t k = static_cast<std::size_t>(g.n) / 2;

    // Backtracking enumeration of all matchings of size k and k-1.
    std::vector<std::string> encodings;
    ByteBits current(nedges);
    std::vector<bool> covered(g.n, false);
    auto enumerate = [&](auto&& self, std::size_t from, std::size_t size) -> void {
        if (size == k || size + 1 == k) {
            encodings.push_back(current.bytes());
            if (static_cast<long>(encodings.size()) > max_states)
                throw StateCapError("matchings chain exceeds the state cap " +
                                    std::to_string(max_states));
        }
        if (size == k) return;
        for (std::size_t e = from; e < nedges; ++e) {
            auto [u, v] = g.edges[e];
            if (covered[u] || covered[v]) continue;
            covered[u] = covered[v] = true;
            current.set(e);
            self(self, e + 1, size + 1);
            current.reset(e);
            covered[u] = covered[v] = false;
        }
    };
    enumerate(enumerate, 0, 0);

    bool has_perfect = false;
    for (const auto& enc : encodings)
        if (ByteBits(nedges, enc).popcount() == k) {
            has_perfect = true;
            break;
        }
    if (!has_perfect) throw InfeasibleError("host graph has no perfect matching");

    Chain chain;
    chain.space = StateSpace::from_encodings(std::move(encodings));
    chain.kernel.rows.resize(chain.space.size());
    for (StateIndex x = 0; x < chain.space.size(); ++x) {
        Matching m = Matching::from_encoding(g, chain.space.encoding(x));
        auto raw = matchings_kernel_row(m, g);
        auto& out = chain.kernel.rows[x];
        out.reserve(raw.size());
        for (auto& [target, p] : raw) out.push_back({chain.space.index_of(target.encoding()), p});
        std::sort(out.begin(), out.end(),
                  [](const auto& lhs, const auto& rhs) { return lhs.target < rhs.target; });
    }
    chain.kernel.validate();

    auto ergodic = check_ergodicity(chain.kernel);
    if (!ergodic.irreducible)
        throw InfeasibleError("matchings chain is not irreducible on this host graph");
    if (!ergodic.aperiodic)
        throw InfeasibleError("matchings chain is not aperiodic on this host graph");

    chain.pi = uniform_distribution(chain.space.size());
    chain.descriptor = {ChainFamily::Matchings,
                        {{"n", std::to_string(g.n)}, {"m", std::to_string(nedges)}},
                        chain.space.size()};
    return chain;
}

}  // namespace oddwalks
