#include "oddwalks/contingency_chain.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "oddwalks/errors.hpp"

namespace oddwalks {

void Margins::validate() const {
    if (rows.size() < 2 || cols.size() < 2)
        throw InvalidArgumentError("margins need at least 2 rows and 2 columns");
    for (long r : rows)
        if (r < 1) throw InvalidArgumentError("row sums must be positive");
    for (long c : cols)
        if (c < 1) throw InvalidArgumentError("column sums must be positive");
    const long long total_r = std::accumulate(rows.begin(), rows.end(), 0LL);
    const long long total_c = std::accumulate(cols.begin(), cols.end(), 0LL);
    if (total_r != total_c)
        throw InvalidArgumentError("row sums total " + std::to_string(total_r) +
                                   " but column sums total " + std::to_string(total_c));
}

void Margins::require_walk_hypotheses() const {
    validate();
    if (*std::max_element(rows.begin(), rows.end()) < 2)
        throw InfeasibleError("walk construction needs a row sum of at least 2");
    if (*std::max_element(cols.begin(), cols.end()) < 2)
        throw InfeasibleError("walk construction needs a column sum of at least 2");
    if (std::max(m(), n()) < 3)
        throw InfeasibleError("walk construction needs at least 3 rows or 3 columns");
}

void ContingencyTable::validate(const Margins& margins) const {
    if (m_ != margins.m() || n_ != margins.n())
        throw InvalidArgumentError("table shape does not match margins");
    for (long v : cells_)
        if (v < 0) throw Error("table has a negative entry");
    for (std::size_t i = 0; i < m_; ++i) {
        long long sum = 0;
        for (std::size_t j = 0; j < n_; ++j) sum += at(i, j);
        if (sum != margins.rows[i])
            throw Error("row " + std::to_string(i + 1) + " sums to " + std::to_string(sum) +
                        ", expected " + std::to_string(margins.rows[i]));
    }
    for (std::size_t j = 0; j < n_; ++j) {
        long long sum = 0;
        for (std::size_t i = 0; i < m_; ++i) sum += at(i, j);
        if (sum != margins.cols[j])
            throw Error("column " + std::to_string(j + 1) + " sums to " + std::to_string(sum) +
                        ", expected " + std::to_string(margins.cols[j]));
    }
}

ContingencyTable ContingencyTable::transposed() const {
    ContingencyTable t(n_, m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
    return t;
}

std::string ContingencyTable::encoding() const {
    std::string out(cells_.size() * 4, '\0');
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        const long v = cells_[k];
        if (v < 0 || v > 0xFFFFFFFFL) throw Error("table entry does not fit the encoding");
        const auto u = static_cast<std::uint32_t>(v);
        out[4 * k] = static_cast<char>(u >> 24);
        out[4 * k + 1] = static_cast<char>((u >> 16) & 0xFF);
        out[4 * k + 2] = static_cast<char>((u >> 8) & 0xFF);
        out[4 * k + 3] = static_cast<char>(u & 0xFF);
    }
    return out;
}

ContingencyTable ContingencyTable::from_encoding(const Margins& margins,
                                                 const std::string& bytes) {
    ContingencyTable t(margins.m(), margins.n());
    if (bytes.size() != t.cells_.size() * 4)
        throw InvalidArgumentError("table encoding has wrong length");
    for (std::size_t k = 0; k < t.cells_.size(); ++k) {
        std::uint32_t u = 0;
        for (int b = 0; b < 4; ++b)
            u = (u << 8) | static_cast<unsigned char>(bytes[4 * k + b]);
        t.cells_[k] = static_cast<long>(u);
    }
    t.validate(margins);
    return t;
}

long long subsquare_fill_count(long s1, long s2, long t1, long t2) {
    if (s1 < 0 || s2 < 0 || t1 < 0 || t2 < 0 || s1 + s2 != t1 + t2)
        throw InvalidArgumentError("subsquare margins must be nonnegative with equal sums");
    const long long k = std::min(static_cast<long long>(s1), static_cast<long long>(t1)) -
                        std::max(0LL, static_cast<long long>(t1) - s2) + 1;
    const long long k2 = std::min(std::min<long long>(s1, s2), std::min<long long>(t1, t2)) + 1;
    if (k != k2) throw Error("fill count identity violated");
    return k;
}

std::vector<std::string> enumerate_tables(const Margins& margins, long max_states) {
    margins.validate();
    const std::size_t m = margins.m(), n = margins.n();
    std::vector<std::string> out;
    ContingencyTable table(m, n);
    std::vector<long> colsum(n, 0);

    // Fill row by row; within a row, column by column; the last cell of a row
    // and the whole last row are forced.
    auto fill_row = [&](auto&& self, std::size_t i, std::size_t j, long row_left) -> void {
        if (i == m - 1) {
            for (std::size_t jj = 0; jj < n; ++jj) {
                const long forced = margins.cols[jj] - colsum[jj];
                if (forced < 0) return;
                table.at(m - 1, jj) = forced;
            }
            out.push_back(table.encoding());
            if (static_cast<long>(out.size()) > max_states)
                throw StateCapError("contingency instance exceeds the state cap " +
                                    std::to_string(max_states));
            return;
        }
        if (j == n - 1) {
            if (row_left + colsum[j] > margins.cols[j]) return;
            table.at(i, j) = row_left;
            colsum[j] += row_left;
            self(self, i + 1, 0, margins.rows[i + 1]);
            colsum[j] -= row_left;
            return;
        }
        const long cap = std::min<long>(row_left, margins.cols[j] - colsum[j]);
        for (long v = 0; v <= cap; ++v) {
            table.at(i, j) = v;
            colsum[j] += v;
            self(self, i, j + 1, row_left - v);
            colsum[j] -= v;
        }
        table.at(i, j) = 0;
    };
    fill_row(fill_row, 0, 0, margins.rows[0]);

    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<ContingencyTable, Rational>> heatbath_kernel_row(const ContingencyTable& x,
                                                                       const Margins& margins) {
    x.validate(margins);
    const long long m = static_cast<long long>(margins.m());
    const long long n = static_cast<long long>(margins.n());
    const long long pair_choices = (m * (m - 1) / 2) * (n * (n - 1) / 2);

    std::map<std::string, Rational> row;
    for (std::size_t i1 = 0; i1 < margins.m(); ++i1)
        for (std::size_t i2 = i1 + 1; i2 < margins.m(); ++i2)
            for (std::size_t j1 = 0; j1 < margins.n(); ++j1)
                for (std::size_t j2 = j1 + 1; j2 < margins.n(); ++j2) {
                    const long a = x.at(i1, j1), b = x.at(i1, j2);
                    const long c = x.at(i2, j1), d = x.at(i2, j2);
                    const long s1 = a + b, s2 = c + d, t1 = a + c, t2 = b + d;
                    const long long k = subsquare_fill_count(s1, s2, t1, t2);
                    const Rational p(1, pair_choices * k);
                    const long lo = std::max(0L, t1 - s2);
                    const long hi = std::min(s1, t1);
                    for (long v = lo; v <= hi; ++v) {
                        ContingencyTable y = x;
                        y.at(i1, j1) = v;
                        y.at(i1, j2) = s1 - v;
                        y.at(i2, j1) = t1 - v;
                        y.at(i2, j2) = t2 - (s1 - v);
                        row[y.encoding()] += p;
                    }
                }

    std::vector<std::pair<ContingencyTable, Rational>> out;
    out.reserve(row.size());
    for (const auto& [enc, p] : row)
        out.emplace_back(ContingencyTable::from_encoding(margins, enc), p);
    return out;
}

namespace {

ContingencyTable northwest_corner_table(const Margins& margins) {
    ContingencyTable t(margins.m(), margins.n());
    std::vector<long> r = margins.rows, c = margins.cols;
    for (std::size_t i = 0; i < margins.m(); ++i)
        for (std::size_t j = 0; j < margins.n(); ++j) {
            const long v = std::min(r[i], c[j]);
            t.at(i, j) = v;
            r[i] -= v;
            c[j] -= v;
        }
    t.validate(margins);
    return t;
}

std::string margins_param(const std::vector<long>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

Chain build_contingency_chain(const Margins& margins, long max_states) {
    auto encodings = enumerate_tables(margins, max_states);

    Chain chain;
    chain.space = StateSpace::from_encodings(std::move(encodings));
    chain.kernel.rows.resize(chain.space.size());
    for (StateIndex xi = 0; xi < chain.space.size(); ++xi) {
        auto table = ContingencyTable::from_encoding(margins, chain.space.encoding(xi));
        auto raw = heatbath_kernel_row(table, margins);
        auto& out = chain.kernel.rows[xi];
        out.reserve(raw.size());
        for (auto& [target, p] : raw)
            out.push_back({chain.space.index_of(target.encoding()), p});
        std::sort(out.begin(), out.end(),
                  [](const auto& lhs, const auto& rhs) { return lhs.target < rhs.target; });
    }
    chain.kernel.validate();

    // The heat-bath moves must reach every enumerated table from the
    // north-west-corner table; a mismatch means the enumeration and the
    // kernel disagree.
    {
        const StateIndex start = chain.space.index_of(northwest_corner_table(margins).encoding());
        std::vector<bool> seen(chain.space.size(), false);
        std::deque<StateIndex> frontier{start};
        seen[start] = true;
        std::size_t reached = 1;
        while (!frontier.empty()) {
            const StateIndex v = frontier.front();
            frontier.pop_front();
            for (const auto& entry : chain.kernel.rows[v])
                if (!seen[entry.target]) {
                    seen[entry.target] = true;
                    ++reached;
                    frontier.push_back(entry.target);
                }
        }
        if (reached != chain.space.size())
            throw Error("heat-bath closure reaches " + std::to_string(reached) + " of " +
                        std::to_string(chain.space.size()) + " enumerated tables");
    }

    chain.pi = uniform_distribution(chain.space.size());
    chain.descriptor = {ChainFamily::Contingency,
                        {{"rows", margins_param(margins.rows)},
                         {"cols", margins_param(margins.cols)}},
                        chain.space.size()};
    return chain;
}

const char* table_class_name(TableClassKind kind) {
    switch (kind) {
        case TableClassKind::RowGood: return "row_good";
        case TableClassKind::ColumnGood: return "column_good";
        case TableClassKind::Bad: return "bad";
    }
    return "unknown";
}

namespace {

// Lexicographically least (i1,i2,i3,j1,j2), 1-based, with distinct rows,
// distinct columns and x[i1,j1], x[i2,j1], x[i3,j2] positive.
bool find_row_good_tuple(const ContingencyTable& x, std::array<int, 6>& tuple) {
    const std::size_t m = x.m(), n = x.n();
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = 0; i2 < m; ++i2) {
            if (i2 == i1) continue;
            for (std::size_t i3 = 0; i3 < m; ++i3) {
                if (i3 == i1 || i3 == i2) continue;
                for (std::size_t j1 = 0; j1 < n; ++j1)
                    for (std::size_t j2 = 0; j2 < n; ++j2) {
                        if (j2 == j1) continue;
                        if (x.at(i1, j1) > 0 && x.at(i2, j1) > 0 && x.at(i3, j2) > 0) {
                            tuple = {static_cast<int>(i1 + 1), static_cast<int>(i2 + 1),
                                     static_cast<int>(i3 + 1), static_cast<int>(j1 + 1),
                                     static_cast<int>(j2 + 1), 0};
                            return true;
                        }
                    }
            }
        }
    return false;
}

}  // namespace

TableClass classify_table(const ContingencyTable& x) {
    std::array<int, 6> tuple{};
    if (find_row_good_tuple(x, tuple)) return {TableClassKind::RowGood, tuple};

    if (find_row_good_tuple(x.transposed(), tuple)) {
        // The transpose's (j1,j2,j3,i1,i2) reordered for display.
        return {TableClassKind::ColumnGood,
                {tuple[3], tuple[4], tuple[0], tuple[1], tuple[2], 0}};
    }

    const std::size_t m = x.m(), n = x.n();
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = 0; i2 < m; ++i2) {
            if (i2 == i1) continue;
            for (std::size_t i3 = 0; i3 < m; ++i3) {
                if (i3 == i1 || i3 == i2) continue;
                for (std::size_t j1 = 0; j1 < n; ++j1)
                    for (std::size_t j2 = 0; j2 < n; ++j2) {
                        if (j2 == j1) continue;
                        for (std::size_t j3 = 0; j3 < n; ++j3) {
                            if (j3 == j1 || j3 == j2) continue;
                            if (x.at(i1, j1) >= 2 && x.at(i2, j2) > 0 && x.at(i3, j3) > 0)
                                return {TableClassKind::Bad,
                                        {static_cast<int>(i1 + 1), static_cast<int>(i2 + 1),
                                         static_cast<int>(i3 + 1), static_cast<int>(j1 + 1),
                                         static_cast<int>(j2 + 1), static_cast<int>(j3 + 1)}};
                        }
                    }
            }
        }
    throw InfeasibleError("table admits no odd walk: the construction needs a row sum >= 2, a "
                          "column sum >= 2 and at least 3 rows or columns");
}

namespace {

ContingencyTable shifted(const ContingencyTable& x,
                         std::initializer_list<std::tuple<int, int, long>> deltas) {
    ContingencyTable y = x;
    for (auto [i, j, d] : deltas) y.at(i, j) += d;
    return y;
}

}  // namespace

std::vector<ContingencyTable> canonical_odd_walk_tables(const ContingencyTable& x) {
    const TableClass cls = classify_table(x);

    if (cls.kind == TableClassKind::ColumnGood) {
        auto transposed_walk = canonical_odd_walk_tables(x.transposed());
        std::vector<ContingencyTable> walk;
        walk.reserve(transposed_walk.size());
        for (const auto& t : transposed_walk) walk.push_back(t.transposed());
        return walk;
    }

    if (cls.kind == TableClassKind::RowGood) {
        const int i1 = cls.tuple[0] - 1, i2 = cls.tuple[1] - 1, i3 = cls.tuple[2] - 1;
        const int j1 = cls.tuple[3] - 1, j2 = cls.tuple[4] - 1;
        ContingencyTable x1 =
            shifted(x, {{i1, j1, -1}, {i1, j2, +1}, {i3, j1, +1}, {i3, j2, -1}});
        ContingencyTable x2 =
            shifted(x, {{i2, j1, -1}, {i2, j2, +1}, {i3, j1, +1}, {i3, j2, -1}});
        return {x, x1, x2, x};
    }

    const int i1 = cls.tuple[0] - 1, i2 = cls.tuple[1] - 1, i3 = cls.tuple[2] - 1;
    const int j1 = cls.tuple[3] - 1, j2 = cls.tuple[4] - 1, j3 = cls.tuple[5] - 1;
    ContingencyTable w1 = shifted(x, {{i1, j1, -1}, {i1, j2, +1}, {i2, j1, +1}, {i2, j2, -1}});
    ContingencyTable w2 = shifted(w1, {{i2, j1, -1}, {i2, j3, +1}, {i3, j1, +1}, {i3, j3, -1}});
    ContingencyTable w3 = shifted(w2, {{i1, j1, -1}, {i1, j3, +1}, {i2, j1, +1}, {i2, j3, -1}});
    ContingencyTable w4 = shifted(w3, {{i1, j1, +1}, {i1, j2, -1}, {i2, j1, -1}, {i2, j2, +1}});
    return {x, w1, w2, w3, w4, x};
}

WalkSet contingency_walkset(const Chain& chain, const Margins& margins) {
    WalkSet walks;
    walks.walks.reserve(chain.space.size());
    for (StateIndex xi = 0; xi < chain.space.size(); ++xi) {
        auto tables =
            canonical_odd_walk_tables(ContingencyTable::from_encoding(margins, chain.space.encoding(xi)));
        OddWalk walk;
        walk.vertices.reserve(tables.size());
        for (auto& t : tables) {
            t.validate(margins);
            walk.vertices.push_back(chain.space.index_of(t.encoding()));
        }
        walks.walks.push_back(std::move(walk));
    }
    return walks;
}

std::vector<TableClassKind> classify_all_states(const Chain& chain, const Margins& margins) {
    std::vector<TableClassKind> classes;
    classes.reserve(chain.space.size());
    for (StateIndex xi = 0; xi < chain.space.size(); ++xi)
        classes.push_back(
            classify_table(ContingencyTable::from_encoding(margins, chain.space.encoding(xi)))
                .kind);
    return classes;
}

std::map<DirectedEdge, EdgeClassCounts> edge_class_counts(
    const WalkSet& walks, const std::vector<TableClassKind>& classes) {
    if (walks.walks.size() != classes.size())
        throw InvalidArgumentError("walk set and classification sizes differ");
    std::map<DirectedEdge, EdgeClassCounts> counts;
    for (std::size_t x = 0; x < walks.walks.size(); ++x) {
        const auto& verts = walks.walks[x].vertices;
        for (std::size_t t = 0; t + 1 < verts.size(); ++t) {
            auto& c = counts[{verts[t], verts[t + 1]}];
            switch (classes[x]) {
                case TableClassKind::RowGood: ++c.row_good; break;
                case TableClassKind::ColumnGood: ++c.column_good; break;
                case TableClassKind::Bad: ++c.bad; break;
            }
        }
    }
    return counts;
}

EdgeClassCounts count_walks_through_edge(const WalkSet& walks,
                                         const std::vector<TableClassKind>& classes,
                                         DirectedEdge e) {
    if (walks.walks.size() != classes.size())
        throw InvalidArgumentError("walk set and classification sizes differ");
    EdgeClassCounts counts;
    for (std::size_t x = 0; x < walks.walks.size(); ++x) {
        const auto& verts = walks.walks[x].vertices;
        for (std::size_t t = 0; t + 1 < verts.size(); ++t) {
            if (verts[t] != e.first || verts[t + 1] != e.second) continue;
            switch (classes[x]) {
                case TableClassKind::RowGood: ++counts.row_good; break;
                case TableClassKind::ColumnGood: ++counts.column_good; break;
                case TableClassKind::Bad: ++counts.bad; break;
            }
        }
    }
    return counts;
}

}  // namespace oddwalks
