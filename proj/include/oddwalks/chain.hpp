#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oddwalks/rational.hpp"

namespace oddwalks {

using StateIndex = std::uint32_t;

inline constexpr long kDefaultMaxStates = 200000;

// Enumerated state space.  States are canonical byte encodings, sorted
// lexicographically so that indices are deterministic and platform
// independent.
class StateSpace {
  public:
    static StateSpace from_encodings(std::vector<std::string> encodings);

    std::size_t size() const { return states_.size(); }
    const std::vector<std::string>& states() const { return states_; }
    const std::string& encoding(StateIndex i) const { return states_[i]; }

    StateIndex index_of(const std::string& encoding) const;       // throws if unknown
    std::optional<StateIndex> find(const std::string& encoding) const;

  private:
    std::vector<std::string> states_;
    std::unordered_map<std::string, StateIndex> index_;
};

// Sparse row-stochastic transition matrix with exact rational entries.
// Rows are sorted by target index; zero probabilities are never stored.
struct TransitionKernel {
    struct Entry {
        StateIndex target;
        Rational prob;
    };

    std::vector<std::vector<Entry>> rows;

    std::size_t size() const { return rows.size(); }

    // nullptr when (x,y) is not a transition.
    const Rational* find(StateIndex x, StateIndex y) const;
    Rational prob(StateIndex x, StateIndex y) const;

    // Checks entries in (0,1], sorted rows, exact unit row sums and support
    // symmetry.  Throws Error on the first violation.
    void validate() const;
};

struct StationaryDistribution {
    std::vector<Rational> pi;

    std::size_t size() const { return pi.size(); }
    void validate() const;  // strictly positive entries, exact unit sum
    Rational min() const;
};

StationaryDistribution uniform_distribution(std::size_t n);

enum class ChainFamily { Switch, Matchings, Contingency, Custom };

const char* family_name(ChainFamily family);

struct ChainDescriptor {
    ChainFamily family = ChainFamily::Custom;
    std::vector<std::pair<std::string, std::string>> params;  // ordered key/value
    std::size_t n_states = 0;
};

struct Chain {
    StateSpace space;
    TransitionKernel kernel;
    StationaryDistribution pi;
    ChainDescriptor descriptor;
};

// Stationary edge flow Q(x,y) = pi(x) p(x,y); throws when (x,y) is not a
// transition.
Rational edge_flow(const TransitionKernel& kernel, const StationaryDistribution& pi,
                   StateIndex x, StateIndex y);

struct BalanceReport {
    bool ok = true;
    // Transition with the largest |pi(x)p(x,y) - pi(y)p(y,x)|, if any.
    std::optional<std::pair<StateIndex, StateIndex>> worst_violation;
};

BalanceReport check_detailed_balance(const TransitionKernel& kernel,
                                     const StationaryDistribution& pi);

struct ErgodicityReport {
    bool irreducible = false;
    bool aperiodic = false;
};

// Irreducible iff the (symmetric-support) transition graph is connected;
// aperiodic iff some state has a self-loop or the loopless graph is
// non-bipartite.
ErgodicityReport check_ergodicity(const TransitionKernel& kernel);

}  // namespace oddwalks
