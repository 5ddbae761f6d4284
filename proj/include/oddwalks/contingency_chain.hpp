#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oddwalks/chain.hpp"
#include "oddwalks/walks.hpp"

namespace oddwalks {

struct Margins {
    std::vector<long> rows;  // r_1..r_m, all positive
    std::vector<long> cols;  // c_1..c_n, all positive

    std::size_t m() const { return rows.size(); }
    std::size_t n() const { return cols.size(); }
    void validate() const;  // positivity, equal sums, m >= 2 and n >= 2

    // Hypotheses of the smallest-eigenvalue bound: the largest row sum and
    // the largest column sum are both >= 2, and max(m, n) >= 3.  Margins may
    // arrive unsorted; only the maxima matter.
    void require_walk_hypotheses() const;
};

// Nonnegative integer matrix with prescribed row and column sums.  The
// canonical encoding is row-major, 4 bytes per cell, big endian, so
// lexicographic order of encodings equals row-major numeric order.
class ContingencyTable {
  public:
    ContingencyTable(std::size_t m, std::size_t n) : m_(m), n_(n), cells_(m * n, 0) {}

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    long at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
    long& at(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }

    void validate(const Margins& margins) const;
    ContingencyTable transposed() const;

    std::string encoding() const;
    static ContingencyTable from_encoding(const Margins& margins, const std::string& bytes);

  private:
    std::size_t m_;
    std::size_t n_;
    std::vector<long> cells_;
};

// Number of nonnegative 2x2 integer matrices with row sums s1, s2 and column
// sums t1, t2; equals min(s1, t1) - max(0, t1 - s2) + 1 = min(s1,s2,t1,t2)+1.
long long subsquare_fill_count(long s1, long s2, long t1, long t2);

// All tables with the given margins, by row-wise recursion with column-sum
// pruning; encodings returned sorted.  Throws StateCapError beyond the cap.
std::vector<std::string> enumerate_tables(const Margins& margins,
                                          long max_states = kDefaultMaxStates);

// Heat-bath step: a uniform row pair and column pair select a 2x2 subsquare,
// whose contents are resampled uniformly among consistent fillings.
std::vector<std::pair<ContingencyTable, Rational>> heatbath_kernel_row(
    const ContingencyTable& x, const Margins& margins);

// Builds the chain and cross-checks the enumeration against BFS closure
// under heat-bath moves from the north-west-corner table.
Chain build_contingency_chain(const Margins& margins, long max_states = kDefaultMaxStates);

enum class TableClassKind { RowGood, ColumnGood, Bad };

const char* table_class_name(TableClassKind kind);

// Classification behind the canonical odd walks.  Indices are 1-based, as in
// the walk displays.  RowGood stores (i1,i2,i3,j1,j2): rows distinct, columns
// distinct, x[i1,j1], x[i2,j1], x[i3,j2] all positive, lexicographically
// least.  ColumnGood stores (i1,i2,j1,j2,j3), found by classifying the
// transpose, so minimality is over the transposed tuple (j1,j2,j3,i1,i2).
// Bad stores (i1,i2,i3,j1,j2,j3) lex-least with x[i1,j1] >= 2 and x[i2,j2],
// x[i3,j3] positive.
struct TableClass {
    TableClassKind kind = TableClassKind::RowGood;
    std::array<int, 6> tuple{};  // first tuple_size() entries meaningful
    std::size_t tuple_size() const { return kind == TableClassKind::Bad ? 6 : 5; }
};

TableClass classify_table(const ContingencyTable& x);

// The canonical closed odd walk at X: the 3-step subsquare sequence for
// row-good tables, its transpose for column-good ones, and the 5-step
// sequence on a 3x3 subtable for bad ones.  First and last entries equal X.
std::vector<ContingencyTable> canonical_odd_walk_tables(const ContingencyTable& x);

// Walks for every state, as index walks over the chain's state space.
WalkSet contingency_walkset(const Chain& chain, const Margins& margins);

std::vector<TableClassKind> classify_all_states(const Chain& chain, const Margins& margins);

struct EdgeClassCounts {
    long long row_good = 0;
    long long column_good = 0;
    long long bad = 0;
};

// Exact per-directed-edge counts of states whose walk crosses the edge,
// split by class.
std::map<DirectedEdge, EdgeClassCounts> edge_class_counts(
    const WalkSet& walks, const std::vector<TableClassKind>& classes);

EdgeClassCounts count_walks_through_edge(const WalkSet& walks,
                                         const std::vector<TableClassKind>& classes,
                                         DirectedEdge e);

}  // namespace oddwalks
