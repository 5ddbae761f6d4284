#pragma once

#include <cstdint>

#include "oddwalks/chain.hpp"
#include "oddwalks/contingency_chain.hpp"
#include "oddwalks/matchings_chain.hpp"
#include "oddwalks/walks.hpp"

// Independent brute-force baselines.  Nothing here shares enumeration code
// with the chain modules; tests compare the two sides.
namespace oddwalks::oracle {

// splitmix64: the single PRNG behind every randomized oracle, so derived
// values are reproducible from the seed alone.
//   state += 0x9E3779B97F4A7C15
//   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31; return z
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  private:
    std::uint64_t state_;
};

inline constexpr long kMixingStateCap = 5000;
inline constexpr long kMixingIterationCap = 1000000;

// Smallest t >= 0 with max_x TV(P^t(x, .), pi) <= epsilon, by dense row
// iteration with compensated summation.
long tv_mixing_time(const TransitionKernel& kernel, const StationaryDistribution& pi,
                    double epsilon, long state_cap = kMixingStateCap,
                    long iteration_cap = kMixingIterationCap);

// Counts labeled d-regular graphs on [n] by filtering all 2^C(n,2) graphs.
long long count_regular_graphs(int n, int d);

// Counts matchings of the host graph with exactly `size` edges, by
// vertex-by-vertex recursion (match the first free vertex or skip it).
long long count_matchings(const HostGraph& g, std::size_t size);

// Counts tables with the given margins by column-wise recursion (the chain
// module enumerates row-wise).
long long count_tables(const Margins& margins);

// Dominant eigenvalue (by magnitude, signed) of the symmetrized kernel after
// deflating the top eigenvector sqrt(pi); equals lambda_1 when
// lambda_1 >= |lambda_min|.  Throws NumericError when the iteration has not
// converged, e.g. when lambda_1 and -lambda_min tie.
double power_iteration_dominant(const TransitionKernel& kernel,
                                const StationaryDistribution& pi, int iterations = 20000);

struct RandomChainSpec {
    int n_states = 2;
    std::uint64_t seed = 0;
    Rational loop_mass{1, 4};  // per-state self-loop probability, in (0,1)
};

// Random reversible ergodic chain: a random connected integer-weighted graph
// with at least one self-loop; p(x,y) = w(x,y)/deg(x), pi(x) = deg(x)/W.
Chain random_reversible_chain(const RandomChainSpec& spec);

// One shortest closed odd walk per state via parity-augmented BFS with
// seed-shuffled neighbour order.  Directed edges are used at most twice and
// self-loops at most once by construction.
WalkSet random_odd_walkset(const TransitionKernel& kernel, std::uint64_t seed);

}  // namespace oddwalks::oracle
