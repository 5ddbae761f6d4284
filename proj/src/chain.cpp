#include "oddwalks/chain.hpp"

#include <algorithm>
#include <queue>

#include "oddwalks/errors.hpp"

namespace oddwalks {

StateSpace StateSpace::from_encodings(std::vector<std::string> encodings) {
    if (encodings.empty()) throw Error("state space is empty");
    std::sort(encodings.begin(), encodings.end());
    for (std::size_t i = 1; i < encodings.size(); ++i) {
        if (encodings[i - 1] == encodings[i]) throw Error("duplicate state encoding");
    }
    StateSpace space;
    space.states_ = std::move(encodings);
    space.index_.reserve(space.states_.size());
    for (std::size_t i = 0; i < space.states_.size(); ++i) {
        space.index_.emplace(space.states_[i], static_cast<StateIndex>(i));
    }
    return space;
}

StateIndex StateSpace::index_of(const std::string& encoding) const {
    auto it = index_.find(encoding);
    if (it == index_.end()) throw Error("encoding not in state space");
    return it->second;
}

std::optional<StateIndex> StateSpace::find(const std::string& encoding) const {
    auto it = index_.find(encoding);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Rational* TransitionKernel::find(StateIndex x, StateIndex y) const {
    const auto& row = rows[x];
    auto it = std::lower_bound(row.begin(), row.end(), y,
                               [](const Entry& e, StateIndex t) { return e.target < t; });
    if (it == row.end() || it->target != y) return nullptr;
    return &it->prob;
}

Rational TransitionKernel::prob(StateIndex x, StateIndex y) const {
    const Rational* p = find(x, y);
    return p ? *p : Rational(0);
}

void TransitionKernel::validate() const {
    const auto n = rows.size();
    for (std::size_t x = 0; x < n; ++x) {
        Rational sum(0);
        StateIndex prev = 0;
        bool first = true;
        for (const auto& e : rows[x]) {
            if (e.target >= n) throw Error("kernel entry targets unknown state");
            if (!first && e.target <= prev) throw Error("kernel row not sorted by target");
            first = false;
            prev = e.target;
            if (!e.prob.is_positive() || e.prob > Rational(1)) {
                throw Error("kernel probability outside (0,1]");
            }
            sum += e.prob;
        }
        if (sum != Rational(1)) throw Error("kernel row does not sum to 1");
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (const auto& e : rows[x]) {
            if (find(e.target, static_cast<StateIndex>(x)) == nullptr) {
                throw Error("kernel support is not symmetric");
            }
        }
    }
}

void StationaryDistribution::validate() const {
    Rational sum(0);
    for (const auto& p : pi) {
        if (!p.is_positive()) throw Error("stationary distribution entry not positive");
        sum += p;
    }
    if (sum != Rational(1)) throw Error("stationary distribution does not sum to 1");
}

Rational StationaryDistribution::min() const {
    if (pi.empty()) throw Error("empty stationary distribution");
    Rational best = pi.front();
    for (const auto& p : pi) {
        if (p < best) best = p;
    }
    return best;
}

StationaryDistribution uniform_distribution(std::size_t n) {
    if (n == 0) throw Error("empty stationary distribution");
    StationaryDistribution dist;
    dist.pi.assign(n, Rational(1, static_cast<std::int64_t>(n)));
    return dist;
}

const char* family_name(ChainFamily family) {
    switch (family) {
        case ChainFamily::Switch: return "switch";
        case ChainFamily::Matchings: return "matchings";
        case ChainFamily::Contingency: return "contingency";
        case ChainFamily::Custom: return "custom";
    }
    return "custom";
}

Rational edge_flow(const TransitionKernel& kernel, const StationaryDistribution& pi,
                   StateIndex x, StateIndex y) {
    if (kernel.size() != pi.size()) throw Error("kernel and distribution size mismatch");
    const Rational* p = kernel.find(x, y);
    if (p == nullptr) throw Error("edge_flow on a non-transition");
    return pi.pi[x] * *p;
}

BalanceReport check_detailed_balance(const TransitionKernel& kernel,
                                     const StationaryDistribution& pi) {
    if (kernel.size() != pi.size()) throw Error("kernel and distribution size mismatch");
    BalanceReport report;
    Rational worst(0);
    for (StateIndex x = 0; x < kernel.size(); ++x) {
        for (const auto& e : kernel.rows[x]) {
            const Rational forward = pi.pi[x] * e.prob;
            const Rational backward = pi.pi[e.target] * kernel.prob(e.target, x);
            if (forward != backward) {
                report.ok = false;
                Rational gap = forward - backward;
                if (gap.is_negative()) gap = -gap;
                if (gap > worst) {
                    worst = gap;
                    report.worst_violation = {x, e.target};
                }
            }
        }
    }
    return report;
}

ErgodicityReport check_ergodicity(const TransitionKernel& kernel) {
    const auto n = kernel.size();
    ErgodicityReport report;
    if (n == 0) return report;

    // Connectivity by BFS over the support graph.
    std::vector<char> seen(n, 0);
    std::queue<StateIndex> queue;
    queue.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const StateIndex x = queue.front();
        queue.pop();
        for (const auto& e : kernel.rows[x]) {
            if (!seen[e.target]) {
                seen[e.target] = 1;
                ++reached;
                queue.push(e.target);
            }
        }
    }
    report.irreducible = reached == n;

    bool has_loop = false;
    for (StateIndex x = 0; x < n && !has_loop; ++x) {
        if (kernel.find(x, x) != nullptr) has_loop = true;
    }
    if (has_loop) {
        report.aperiodic = true;
        return report;
    }

    // No self-loops: the chain is aperiodic iff the loopless support graph
    // is non-bipartite (reversible chains have period 1 or 2).
    std::vector<int> color(n, -1);
    bool bipartite = true;
    for (StateIndex start = 0; start < n && bipartite; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::queue<StateIndex> bfs;
        bfs.push(start);
        while (!bfs.empty() && bipartite) {
            const StateIndex x = bfs.front();
            bfs.pop();
            for (const auto& e : kernel.rows[x]) {
                if (e.target == x) continue;
                if (color[e.target] == -1) {
                    color[e.target] = 1 - color[x];
                    bfs.push(e.target);
                } else if (color[e.target] == color[x]) {
                    bipartite = false;
                    break;
                }
            }
        }
    }
    report.aperiodic = !bipartite;
    return report;
}

}  // namespace oddwalks
