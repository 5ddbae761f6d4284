#include "oddwalks/switch_chain.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "oddwalks/errors.hpp"

namespace oddwalks {

namespace {

void order(int& u, int& v) {
    if (u > v) std::swap(u, v);
}

}  // namespace

std::size_t RegularGraph::pair_index(int n, int u, int v) {
    // Row-major upper triangle: (0,1), (0,2), ..., (0,n-1), (1,2), ...
    return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

RegularGraph RegularGraph::empty(int n, int d) {
    if (n < 2 || d < 1) throw InvalidArgumentError("regular graph needs n >= 2 and d >= 1");
    if (d >= n) throw InfeasibleError("no simple " + std::to_string(d) + "-regular graph on " +
                                      std::to_string(n) + " vertices");
    if (n % 2 == 1 && d % 2 == 1)
        throw InfeasibleError("n and d cannot both be odd: degree sum would be odd");
    RegularGraph g;
    g.n = n;
    g.d = d;
    g.edges = ByteBits(static_cast<std::size_t>(n) * (n - 1) / 2);
    return g;
}

bool RegularGraph::has_edge(int u, int v) const {
    order(u, v);
    return edges.test(pair_index(n, u, v));
}

void RegularGraph::set_edge(int u, int v) {
    order(u, v);
    edges.set(pair_index(n, u, v));
}

void RegularGraph::clear_edge(int u, int v) {
    order(u, v);
    edges.reset(pair_index(n, u, v));
}

int RegularGraph::degree(int v) const {
    int deg = 0;
    for (int u = 0; u < n; ++u)
        if (u != v && has_edge(u, v)) ++deg;
    return deg;
}

std::vector<std::pair<int, int>> RegularGraph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n) * d / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
}

RegularGraph RegularGraph::from_encoding(int n, int d, const std::string& bytes) {
    RegularGraph g = empty(n, d);
    if (bytes.size() != g.edges.bytes().size())
        throw InvalidArgumentError("graph encoding has wrong length");
    g.edges = ByteBits(static_cast<std::size_t>(n) * (n - 1) / 2, bytes);
    g.validate();
    return g;
}

void RegularGraph::validate() const {
    for (int v = 0; v < n; ++v)
        if (degree(v) != d)
            throw Error("vertex " + std::to_string(v + 1) + " has degree " +
                        std::to_string(degree(v)) + ", expected " + std::to_string(d));
}

RegularGraph circulant_seed(int n, int d) {
    RegularGraph g = RegularGraph::empty(n, d);
    for (int v = 0; v < n; ++v) {
        for (int k = 1; k <= d / 2; ++k) g.set_edge(v, (v + k) % n);
        if (d % 2 == 1) g.set_edge(v, (v + n / 2) % n);
    }
    g.validate();
    return g;
}

long long nonincident_pair_count(const RegularGraph& g) {
    auto edges = g.edge_list();
    long long count = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            auto [a, b] = edges[i];
            auto [c, e] = edges[j];
            if (a != c && a != e && b != c && b != e) ++count;
        }
    return count;
}

std::vector<std::pair<RegularGraph, Rational>> switch_kernel_row(const RegularGraph& g) {
    const auto edges = g.edge_list();
    const long long pairs = nonincident_pair_count(g);
    if (pairs == 0)
        throw InfeasibleError("switch chain is degenerate: graph has no pair of non-incident "
                              "edges");
    const Rational step(1, 3 * pairs);

    // Accepted proposal counts per neighbour encoding; everything else folds
    // into the holding probability.
    std::map<std::string, long long> hits;
    long long stay = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            auto [a, b] = edges[i];
            auto [c, e] = edges[j];
            if (a == c || a == e || b == c || b == e) continue;
            ++stay;  // the identity rematching {ab, ce}
            const int rewire[2][4] = {{a, c, b, e}, {a, e, b, c}};
            for (const auto& w : rewire) {
                if (g.has_edge(w[0], w[1]) || g.has_edge(w[2], w[3])) {
                    ++stay;  // proposal would create a parallel edge
                    continue;
                }
                RegularGraph h = g;
                h.clear_edge(a, b);
                h.clear_edge(c, e);
                h.set_edge(w[0], w[1]);
                h.set_edge(w[2], w[3]);
                ++hits[h.encoding()];
            }
        }
    }

    std::vector<std::pair<RegularGraph, Rational>> row;
    row.reserve(hits.size() + 1);
    if (stay > 0) row.emplace_back(g, Rational(stay) * step);
    for (const auto& [enc, count] : hits)
        row.emplace_back(RegularGraph::from_encoding(g.n, g.d, enc), Rational(count) * step);
    return row;
}

Chain build_switch_chain(int n, int d, long max_states) {
    const RegularGraph seed = circulant_seed(n, d);
    const long long pairs = nonincident_pair_count(seed);

    std::map<std::string, std::vector<std::pair<std::string, Rational>>> rows_by_encoding;
    std::deque<RegularGraph> frontier{seed};
    rows_by_encoding[seed.encoding()];  // mark visited
    while (!frontier.empty()) {
        const RegularGraph g = frontier.front();
        frontier.pop_front();
        if (nonincident_pair_count(g) != pairs)
            throw Error("non-incident pair count is not constant across states");
        auto raw = switch_kernel_row(g);
        auto& row = rows_by_encoding[g.encoding()];
        for (auto& [h, p] : raw) {
            row.emplace_back(h.encoding(), p);
            auto [it, inserted] = rows_by_encoding.try_emplace(h.encoding());
            if (inserted) {
                if (static_cast<long>(rows_by_encoding.size()) > max_states)
                    throw StateCapError("switch chain on (n=" + std::to_string(n) +
                                        ", d=" + std::to_string(d) + ") exceeds the state cap " +
                                        std::to_string(max_states));
                frontier.push_back(RegularGraph::from_encoding(n, d, it->first));
            }
        }
    }

    std::vector<std::string> encodings;
    encodings.reserve(rows_by_encoding.size());
    for (const auto& [enc, row] : rows_by_encoding) encodings.push_back(enc);

    Chain chain;
    chain.space = StateSpace::from_encodings(std::move(encodings));
    chain.kernel.rows.resize(chain.space.size());
    for (auto& [enc, row] : rows_by_encoding) {
        auto& out = chain.kernel.rows[chain.space.index_of(enc)];
        out.reserve(row.size());
        for (auto& [target, p] : row) out.push_back({chain.space.index_of(target), p});
        std::sort(out.begin(), out.end(),
                  [](const auto& lhs, const auto& rhs) { return lhs.target < rhs.target; });
    }
    chain.kernel.validate();
    chain.pi = uniform_distribution(chain.space.size());
    chain.descriptor = {ChainFamily::Switch,
                        {{"n", std::to_string(n)},
                         {"d", std::to_string(d)},
                         {"nonincident_pairs", std::to_string(pairs)}},
                        chain.space.size()};
    return chain;
}

}  // namespace oddwalks
