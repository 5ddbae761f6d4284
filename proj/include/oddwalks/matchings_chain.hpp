#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "oddwalks/bitbytes.hpp"
#include "oddwalks/chain.hpp"

namespace oddwalks {

// Host graph for the matchings chain.  Edge indices follow the input order
// of the (deduplicated, endpoint-sorted) edge list and fix the canonical
// matching encoding.
struct HostGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // 0-based endpoints, u < v

    std::size_t edge_count() const { return edges.size(); }
    void validate() const;        // simple, n even, n >= 4
    bool is_perfect_matching() const;
    bool is_connected() const;

    // Text format: first line `n m`, then m lines `u v` with 1-based labels;
    // blank lines and `#` comments ignored.
    static HostGraph parse(std::istream& in);
    static HostGraph parse_file(const std::string& path);
};

// A matching as a bitset over host edge indices.
struct Matching {
    ByteBits edges;

    static Matching from_encoding(const HostGraph& g, const std::string& bytes);
    const std::string& encoding() const { return edges.bytes(); }
    std::size_t size() const { return edges.popcount(); }
    void validate(const HostGraph& g) const;  // pairwise non-adjacent, size n/2 or n/2 - 1
};

// Single heat of the chain: pick a host edge uniformly; remove it when the
// matching is perfect and contains it, add it when both endpoints are free,
// slide when exactly one endpoint is free, otherwise hold.
std::vector<std::pair<Matching, Rational>> matchings_kernel_row(const Matching& m,
                                                                const HostGraph& g);

// State space = all perfect and near-perfect matchings.  Rejects hosts that
// are themselves perfect matchings, disconnected hosts, hosts without a
// perfect matching, and spaces on which the chain is not ergodic.
Chain build_matchings_chain(const HostGraph& g, long max_states = kDefaultMaxStates);

}  // namespace oddwalks
