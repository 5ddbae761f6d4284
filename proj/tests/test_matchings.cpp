#include <doctest.h>

#include <sstream>

#include "oddwalks/errors.hpp"
#include "oddwalks/matchings_chain.hpp"
#include "oddwalks/oracle.hpp"
#include "oddwalks/spectral.hpp"
#include "oddwalks/walks.hpp"

using namespace oddwalks;

namespace {

HostGraph parse_text(const std::string& text) {
    std::istringstream in(text);
    return HostGraph::parse(in);
}

const char* kP4 = "4 3\n1 2\n2 3\n3 4\n";
const char* kC6 = "6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";

}  // namespace

TEST_CASE("host graph parsing") {
    const auto g = parse_text("# comment\n\n4 3\n1 2\n2 3\n3 4\n");
    CHECK(g.n == 4);
    REQUIRE(g.edge_count() == 3);
    CHECK(g.edges[0] == std::pair{0, 1});
    CHECK(g.edges[2] == std::pair{2, 3});

    CHECK_THROWS_AS(parse_text(""), InvalidArgumentError);
    CHECK_THROWS_AS(parse_text("4\n"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_text("4 2\n1 2\n"), InvalidArgumentError);      // edge count
    CHECK_THROWS_AS(parse_text("4 1\n1 5\n"), InvalidArgumentError);      // out of range
    CHECK_THROWS_AS(parse_text("4 1\n2 2\n"), InvalidArgumentError);      // loop
    CHECK_THROWS_AS(parse_text("4 2\n1 2\n2 1\n"), InvalidArgumentError); // duplicate
    CHECK_THROWS_AS(parse_text("5 1\n1 2\n"), InfeasibleError);           // odd n
    CHECK_THROWS_AS(HostGraph::parse_file("/nonexistent/graph.txt"), InvalidArgumentError);
}

TEST_CASE("matching encode/decode and validation") {
    const auto g = parse_text(kP4);
    Matching m;
    m.edges = ByteBits(g.edge_count());
    m.edges.set(0);
    m.edges.set(2);  // {12, 34}: perfect
    CHECK(m.size() == 2);
    CHECK_NOTHROW(m.validate(g));
    const auto back = Matching::from_encoding(g, m.encoding());
    CHECK(back.edges == m.edges);

    Matching adjacent;
    adjacent.edges = ByteBits(g.edge_count());
    adjacent.edges.set(0);
    adjacent.edges.set(1);  // edges 12 and 23 share vertex 2
    CHECK_THROWS_AS(adjacent.validate(g), Error);
}

TEST_CASE("kernel row cases on the path") {
    const auto g = parse_text(kP4);
    Matching m;  // {e1} = {23}: both outer vertices free
    m.edges = ByteBits(g.edge_count());
    m.edges.set(1);
    const auto row = matchings_kernel_row(m, g);
    // e0 slides 23 -> 12, e1 holds, e2 slides 23 -> 34.
    Rational sum(0), holding(0);
    for (const auto& [target, p] : row) {
        sum += p;
        if (target.encoding() == m.encoding()) holding = p;
    }
    CHECK(sum == Rational(1));
    CHECK(holding == Rational(1, 3));
    CHECK(row.size() == 3);
}

TEST_CASE("path chain is the 4-cycle with spectrum {1, 1/3, 1/3, -1/3}") {
    const auto chain = build_matchings_chain(parse_text(kP4));
    REQUIRE(chain.space.size() == 4);
    CHECK(chain.descriptor.family == ChainFamily::Matchings);

    const auto spectrum = eigenvalues(chain.kernel, chain.pi);
    CHECK(spectrum.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(spectrum.eigenvalues[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(spectrum.eigenvalues[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(spectrum.eigenvalues[3] == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));

    // lambda_min = -1 + 2/|E| exactly: the |E|/2 inverse-gap bound is tight.
    const auto walks = self_loop_walkset(chain.kernel);
    CHECK(congestion(chain.kernel, chain.pi, walks) == Rational(3));
}

TEST_CASE("matching state counts match the recursion oracle") {
    const auto p4 = parse_text(kP4);
    CHECK(oracle::count_matchings(p4, 2) == 1);
    CHECK(oracle::count_matchings(p4, 1) == 3);
    CHECK(build_matchings_chain(p4).space.size() == 4);

    const auto c6 = parse_text(kC6);
    CHECK(oracle::count_matchings(c6, 3) == 2);
    CHECK(oracle::count_matchings(c6, 2) == 9);
    CHECK(build_matchings_chain(c6).space.size() == 11);
}

TEST_CASE("hosts the chain cannot run on") {
    // A host that is itself a perfect matching: every move is forced.
    CHECK_THROWS_AS(build_matchings_chain(parse_text("4 2\n1 2\n3 4\n")), InfeasibleError);
    // Disconnected host with a perfect matching.
    CHECK_THROWS_AS(build_matchings_chain(parse_text("6 4\n1 2\n2 3\n3 1\n4 5\n")),
                    InfeasibleError);
    // Connected host with no perfect matching: a star on 4 vertices.
    CHECK_THROWS_AS(build_matchings_chain(parse_text("4 3\n1 2\n1 3\n1 4\n")), InfeasibleError);
}

TEST_CASE("holding probability is at least 1/|E|") {
    const auto chain = build_matchings_chain(parse_text(kC6));
    for (StateIndex x = 0; x < chain.space.size(); ++x)
        CHECK(chain.kernel.prob(x, x) >= Rational(1, 6));
}
