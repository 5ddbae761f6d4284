#include <doctest.h>

#include <algorithm>

#include "oddwalks/errors.hpp"
#include "oddwalks/oracle.hpp"
#include "oddwalks/spectral.hpp"
#include "oddwalks/switch_chain.hpp"
#include "oddwalks/walks.hpp"

using namespace oddwalks;

TEST_CASE("regular graph encoding round-trips") {
    auto g = RegularGraph::empty(4, 1);
    g.set_edge(0, 1);
    g.set_edge(3, 2);  // order-normalized
    CHECK(g.has_edge(1, 0));
    CHECK(g.has_edge(2, 3));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.degree(0) == 1);
    CHECK_NOTHROW(g.validate());

    const auto back = RegularGraph::from_encoding(4, 1, g.encoding());
    CHECK(back.edge_list() == g.edge_list());

    g.clear_edge(0, 1);
    CHECK_THROWS_AS(g.validate(), Error);  // no longer 1-regular
}

TEST_CASE("infeasible degree sequences are rejected") {
    CHECK_THROWS_AS(RegularGraph::empty(4, 4), InfeasibleError);   // d >= n
    CHECK_THROWS_AS(RegularGraph::empty(5, 3), InfeasibleError);   // nd odd
    CHECK_THROWS_AS(RegularGraph::empty(1, 1), InvalidArgumentError);
    CHECK_THROWS_AS(build_switch_chain(5, 3), InfeasibleError);
}

TEST_CASE("circulant seed is d-regular") {
    for (auto [n, d] : {std::pair{4, 1}, {5, 2}, {6, 3}, {8, 4}, {7, 4}}) {
        const auto seed = circulant_seed(n, d);
        CHECK_NOTHROW(seed.validate());
    }
}

TEST_CASE("non-incident pair count matches the closed form") {
    const auto seed = circulant_seed(6, 3);
    // C(nd/2, 2) - n C(d, 2) = C(9,2) - 6*3 = 36 - 18 = 18.
    CHECK(nonincident_pair_count(seed) == 18);
    CHECK(nonincident_pair_count(circulant_seed(4, 1)) == 1);
}

TEST_CASE("switch kernel row is a distribution with holding >= 1/3") {
    const auto seed = circulant_seed(6, 3);
    const auto row = switch_kernel_row(seed);
    Rational sum(0);
    Rational holding(0);
    for (const auto& [g, p] : row) {
        sum += p;
        if (g.encoding() == seed.encoding()) holding = p;
    }
    CHECK(sum == Rational(1));
    CHECK(holding >= Rational(1, 3));
}

TEST_CASE("switch chain on (4,1) is the rank-one kernel on 3 matchings") {
    const auto chain = build_switch_chain(4, 1);
    REQUIRE(chain.space.size() == 3);
    CHECK(chain.descriptor.family == ChainFamily::Switch);
    for (StateIndex x = 0; x < 3; ++x)
        for (StateIndex y = 0; y < 3; ++y) CHECK(chain.kernel.prob(x, y) == Rational(1, 3));

    const auto spectrum = eigenvalues(chain.kernel, chain.pi);
    CHECK(spectrum.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(spectrum.eigenvalues[1] == doctest::Approx(0.0));
    CHECK(spectrum.eigenvalues[2] == doctest::Approx(0.0));

    const auto walks = self_loop_walkset(chain.kernel);
    CHECK(congestion(chain.kernel, chain.pi, walks) == Rational(3));
}

TEST_CASE("switch chain state counts match the brute-force filter") {
    CHECK(oracle::count_regular_graphs(4, 1) == 3);
    CHECK(oracle::count_regular_graphs(5, 2) == 12);
    CHECK(oracle::count_regular_graphs(6, 3) == 70);
    CHECK(build_switch_chain(5, 2).space.size() == 12);
    CHECK(build_switch_chain(6, 3).space.size() == 70);
}

TEST_CASE("switch chain is reversible and ergodic with uniform pi") {
    const auto chain = build_switch_chain(5, 2);
    CHECK_NOTHROW(chain.kernel.validate());
    CHECK(chain.pi.min() == Rational(1, 12));
    CHECK(check_detailed_balance(chain.kernel, chain.pi).ok);
    const auto ergodic = check_ergodicity(chain.kernel);
    CHECK(ergodic.irreducible);
    CHECK(ergodic.aperiodic);
}

TEST_CASE("state cap aborts enumeration") {
    CHECK_THROWS_AS(build_switch_chain(6, 3, 10), StateCapError);
}
