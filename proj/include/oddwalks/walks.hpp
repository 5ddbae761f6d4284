#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oddwalks/chain.hpp"

namespace oddwalks {

// Closed odd walk x_0 x_1 ... x_l with x_l = x_0 and l odd.
struct OddWalk {
    std::vector<StateIndex> vertices;

    std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

// One canonical closed odd walk per state, indexed by state.
struct WalkSet {
    std::vector<OddWalk> walks;

    std::size_t size() const { return walks.size(); }
};

struct WalkValidation {
    bool ok = true;
    std::vector<std::string> failures;
};

// Closed, odd length, every step a positive-probability transition, every
// directed edge used at most twice (self-loops at most once).
WalkValidation validate_walk(const TransitionKernel& kernel, const OddWalk& walk);

using DirectedEdge = std::pair<StateIndex, StateIndex>;

// Inverted index: directed edge -> (owning walk, multiplicity r(e, w)).
// Ordered map so scans are deterministic.
class EdgeUsageIndex {
  public:
    struct Use {
        StateIndex owner;
        std::uint32_t multiplicity;
    };

    explicit EdgeUsageIndex(const WalkSet& walkset);

    const std::map<DirectedEdge, std::vector<Use>>& entries() const { return entries_; }
    const std::vector<Use>* uses(DirectedEdge edge) const;
    std::uint32_t max_multiplicity() const { return max_multiplicity_; }

  private:
    std::map<DirectedEdge, std::vector<Use>> entries_;
    std::uint32_t max_multiplicity_ = 0;
};

// Congestion eta(W) = max over directed transitions e of
//   Q(e)^-1 * sum_{x : e in w_x} r(e, w_x) pi(x) |w_x|,
// computed exactly.  Throws when a walk steps outside the kernel support.
Rational congestion(const TransitionKernel& kernel, const StationaryDistribution& pi,
                    const WalkSet& walkset);

// Uniform-stationary simplification: max over e of P(e)^-1 * sum |w_x|.
// Preconditions: pi uniform and no walk repeats a directed edge; must equal
// congestion() exactly where defined.
Rational congestion_uniform(const TransitionKernel& kernel, const WalkSet& walkset);

struct Lemma1Bound {
    Rational bound_on_inverse;   // eta / 2, upper bound on (1 + lambda_min)^-1
    Rational lambda_min_lower;   // 2/eta - 1, lower bound on lambda_min
};

Lemma1Bound lemma1_bound(const Rational& eta);

// w_x = [x, x] for every state; requires a self-loop everywhere, otherwise
// throws naming a witness state.  Congestion of the result is
// max_x p(x,x)^-1.
WalkSet self_loop_walkset(const TransitionKernel& kernel);

}  // namespace oddwalks
