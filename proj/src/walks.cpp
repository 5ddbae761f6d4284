#include "oddwalks/walks.hpp"

#include <algorithm>

#include "oddwalks/errors.hpp"

namespace oddwalks {

WalkValidation validate_walk(const TransitionKernel& kernel, const OddWalk& walk) {
    WalkValidation result;
    auto fail = [&](std::string msg) {
        result.ok = false;
        result.failures.push_back(std::move(msg));
    };

    if (walk.vertices.size() < 2) {
        fail("walk has no steps");
        return result;
    }
    for (StateIndex v : walk.vertices) {
        if (v >= kernel.size()) {
            fail("walk vertex out of range");
            return result;
        }
    }
    if (walk.vertices.front() != walk.vertices.back()) fail("walk is not closed");
    if (walk.length() % 2 == 0) fail("walk length is even");

    std::map<DirectedEdge, std::uint32_t> multiplicity;
    for (std::size_t i = 0; i + 1 < walk.vertices.size(); ++i) {
        const StateIndex a = walk.vertices[i];
        const StateIndex b = walk.vertices[i + 1];
        if (kernel.find(a, b) == nullptr) {
            fail("step " + std::to_string(i) + " is not a transition");
            continue;
        }
        ++multiplicity[{a, b}];
    }
    for (const auto& [edge, count] : multiplicity) {
        if (edge.first == edge.second && count > 1) {
            fail("self-loop used more than once");
        } else if (count > 2) {
            fail("directed edge used more than twice");
        }
    }
    return result;
}

EdgeUsageIndex::EdgeUsageIndex(const WalkSet& walkset) {
    for (StateIndex owner = 0; owner < walkset.size(); ++owner) {
        const auto& walk = walkset.walks[owner];
        std::map<DirectedEdge, std::uint32_t> local;
        for (std::size_t i = 0; i + 1 < walk.vertices.size(); ++i) {
            ++local[{walk.vertices[i], walk.vertices[i + 1]}];
        }
        for (const auto& [edge, count] : local) {
            entries_[edge].push_back({owner, count});
            max_multiplicity_ = std::max(max_multiplicity_, count);
        }
    }
}

const std::vector<EdgeUsageIndex::Use>* EdgeUsageIndex::uses(DirectedEdge edge) const {
    auto it = entries_.find(edge);
    if (it == entries_.end()) return nullptr;
    return &it->second;
}

namespace {

void require_total_valid(const TransitionKernel& kernel, const WalkSet& walkset) {
    if (walkset.size() != kernel.size()) {
        throw Error("walk set does not cover every state");
    }
    for (StateIndex x = 0; x < walkset.size(); ++x) {
        const auto& walk = walkset.walks[x];
        if (walk.vertices.empty() || walk.vertices.front() != x) {
            throw Error("walk for state " + std::to_string(x) + " does not start there");
        }
        const auto validation = validate_walk(kernel, walk);
        if (!validation.ok) {
            throw Error("invalid walk for state " + std::to_string(x) + ": " +
                        validation.failures.front());
        }
    }
}

}  // namespace

Rational congestion(const TransitionKernel& kernel, const StationaryDistribution& pi,
                    const WalkSet& walkset) {
    if (kernel.size() != pi.size()) throw Error("kernel and distribution size mismatch");
    require_total_valid(kernel, walkset);

    const EdgeUsageIndex index(walkset);
    Rational eta(0);
    // Scan every directed transition; edges carrying no walk contribute 0.
    for (StateIndex x = 0; x < kernel.size(); ++x) {
        for (const auto& e : kernel.rows[x]) {
            const auto* uses = index.uses({x, e.target});
            if (uses == nullptr) continue;
            Rational load(0);
            for (const auto& use : *uses) {
                load += Rational(static_cast<std::int64_t>(use.multiplicity)) * pi.pi[use.owner] *
                        Rational(static_cast<std::int64_t>(walkset.walks[use.owner].length()));
            }
            const Rational flow = pi.pi[x] * e.prob;
            const Rational local = load / flow;
            if (local > eta) eta = local;
        }
    }
    return eta;
}

Rational congestion_uniform(const TransitionKernel& kernel, const WalkSet& walkset) {
    require_total_valid(kernel, walkset);
    const EdgeUsageIndex index(walkset);
    if (index.max_multiplicity() > 1) {
        throw Error("congestion_uniform requires each directed edge used at most once per walk");
    }
    Rational eta(0);
    for (StateIndex x = 0; x < kernel.size(); ++x) {
        for (const auto& e : kernel.rows[x]) {
            const auto* uses = index.uses({x, e.target});
            if (uses == nullptr) continue;
            std::int64_t total_length = 0;
            for (const auto& use : *uses) {
                total_length += static_cast<std::int64_t>(walkset.walks[use.owner].length());
            }
            const Rational local = Rational(total_length) / e.prob;
            if (local > eta) eta = local;
        }
    }
    return eta;
}

Lemma1Bound lemma1_bound(const Rational& eta) {
    if (!eta.is_positive()) throw Error("congestion must be positive");
    Lemma1Bound bound;
    bound.bound_on_inverse = eta / Rational(2);
    bound.lambda_min_lower = Rational(2) / eta - Rational(1);
    return bound;
}

WalkSet self_loop_walkset(const TransitionKernel& kernel) {
    WalkSet walkset;
    walkset.walks.resize(kernel.size());
    for (StateIndex x = 0; x < kernel.size(); ++x) {
        if (kernel.find(x, x) == nullptr) {
            throw InfeasibleError("state " + std::to_string(x) +
                                  " has no self-loop; self-loop walk set unavailable");
        }
        walkset.walks[x].vertices = {x, x};
    }
    return walkset;
}

}  // namespace oddwalks
