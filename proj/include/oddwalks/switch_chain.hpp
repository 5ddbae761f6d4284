#pragma once

#include <utility>
#include <vector>

#include "oddwalks/bitbytes.hpp"
#include "oddwalks/chain.hpp"

namespace oddwalks {

// Labeled simple d-regular graph on [n], stored as a bitset over the
// C(n,2) vertex pairs in row-major upper-triangle order.
struct RegularGraph {
    int n = 0;
    int d = 0;
    ByteBits edges;

    static std::size_t pair_index(int n, int u, int v);  // u < v
    static RegularGraph empty(int n, int d);

    bool has_edge(int u, int v) const;
    void set_edge(int u, int v);
    void clear_edge(int u, int v);
    int degree(int v) const;
    std::vector<std::pair<int, int>> edge_list() const;

    const std::string& encoding() const { return edges.bytes(); }
    static RegularGraph from_encoding(int n, int d, const std::string& bytes);

    void validate() const;  // simple, d-regular, feasible (n, d)
};

// Seed for the BFS enumeration: circulant graph joining i to i+-1, ...,
// i+-floor(d/2) (mod n), plus i + n/2 when d is odd.
RegularGraph circulant_seed(int n, int d);

// Number of unordered pairs of non-incident edges; for d-regular graphs
// equals C(nd/2, 2) - n C(d, 2).
long long nonincident_pair_count(const RegularGraph& g);

// One heat of the switch move: for every unordered pair of non-incident
// edges and each of the 3 perfect matchings on their endpoints, the
// proposal is accepted iff it stays simple.  Rejections and identity
// rematchings accumulate into the holding probability.
std::vector<std::pair<RegularGraph, Rational>> switch_kernel_row(const RegularGraph& g);

// BFS closure under switch moves from the circulant seed.
Chain build_switch_chain(int n, int d, long max_states = kDefaultMaxStates);

}  // namespace oddwalks
