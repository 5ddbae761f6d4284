#include <doctest.h>

#include <cmath>

#include "oddwalks/errors.hpp"
#include "oddwalks/oracle.hpp"
#include "oddwalks/spectral.hpp"
#include "oddwalks/walks.hpp"

using namespace oddwalks;

TEST_CASE("splitmix64 reference vectors") {
    oracle::SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);

    oracle::SplitMix64 other(1234567);
    CHECK(other.next() == 0x599ED017FB08FC85ULL);
    CHECK(other.next() == 0x2C73F08458540FA5ULL);
    CHECK(other.next() == 0x883EBCE5A3F27C77ULL);

    CHECK(oracle::SplitMix64(7).below(10) < 10);
}

TEST_CASE("tv mixing time on hand chains") {
    // p(stay) = 3/4: worst-start TV after t steps is (1/2)^(t+1).
    TransitionKernel kernel;
    kernel.rows = {{{0, Rational(3, 4)}, {1, Rational(1, 4)}},
                   {{0, Rational(1, 4)}, {1, Rational(3, 4)}}};
    const auto pi = uniform_distribution(2);
    CHECK(oracle::tv_mixing_time(kernel, pi, 0.25) == 1);
    CHECK(oracle::tv_mixing_time(kernel, pi, 0.01) == 6);
    CHECK(oracle::tv_mixing_time(kernel, pi, 0.6) == 0);

    CHECK_THROWS_AS(oracle::tv_mixing_time(kernel, pi, 0.0), InvalidArgumentError);
    CHECK_THROWS_AS(oracle::tv_mixing_time(kernel, pi, 1.0), InvalidArgumentError);
    CHECK_THROWS_AS(oracle::tv_mixing_time(kernel, pi, 0.25, 1), StateCapError);

    TransitionKernel flip;  // periodic: never mixes
    flip.rows = {{{1, Rational(1)}}, {{0, Rational(1)}}};
    CHECK_THROWS_AS(oracle::tv_mixing_time(flip, pi, 0.25), Error);
}

TEST_CASE("power iteration matches the full solver") {
    TransitionKernel kernel;
    kernel.rows = {{{0, Rational(1, 2)}, {1, Rational(1, 2)}},
                   {{0, Rational(1, 4)}, {1, Rational(3, 4)}}};
    StationaryDistribution pi;
    pi.pi = {Rational(1, 3), Rational(2, 3)};
    const double dominant = oracle::power_iteration_dominant(kernel, pi);
    CHECK(dominant == doctest::Approx(0.25).epsilon(1e-8));

    // Rank-one kernel: the deflated matrix is zero.
    TransitionKernel rank_one;
    rank_one.rows = {{{0, Rational(1, 2)}, {1, Rational(1, 2)}},
                     {{0, Rational(1, 2)}, {1, Rational(1, 2)}}};
    CHECK(oracle::power_iteration_dominant(rank_one, uniform_distribution(2)) ==
          doctest::Approx(0.0));

    // Deterministic flip: after deflating sqrt(pi) only -1 remains.
    TransitionKernel flip;
    flip.rows = {{{1, Rational(1)}}, {{0, Rational(1)}}};
    CHECK(oracle::power_iteration_dominant(flip, uniform_distribution(2)) ==
          doctest::Approx(-1.0).epsilon(1e-8));

    // Flip plus a rank-one block: deflated spectrum {1, -1, 0} has a tie.
    TransitionKernel tied;
    tied.rows = {{{1, Rational(1)}},
                 {{0, Rational(1)}},
                 {{2, Rational(1, 2)}, {3, Rational(1, 2)}},
                 {{2, Rational(1, 2)}, {3, Rational(1, 2)}}};
    CHECK_THROWS_AS(oracle::power_iteration_dominant(tied, uniform_distribution(4), 200),
                    NumericError);
}

TEST_CASE("random chains are reversible, ergodic and reproducible") {
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        oracle::RandomChainSpec spec;
        spec.n_states = 8;
        spec.seed = seed;
        const auto chain = oracle::random_reversible_chain(spec);
        REQUIRE(chain.space.size() == 8);
        CHECK_NOTHROW(chain.kernel.validate());
        CHECK_NOTHROW(chain.pi.validate());
        CHECK(check_detailed_balance(chain.kernel, chain.pi).ok);
        const auto ergodic = check_ergodicity(chain.kernel);
        CHECK(ergodic.irreducible);
        CHECK(ergodic.aperiodic);

        const auto again = oracle::random_reversible_chain(spec);
        for (StateIndex x = 0; x < 8; ++x)
            for (const auto& entry : chain.kernel.rows[x])
                CHECK(again.kernel.prob(x, entry.target) == entry.prob);
    }
    CHECK_THROWS_AS(oracle::random_reversible_chain({1, 0, Rational(1, 4)}),
                    InvalidArgumentError);
}

TEST_CASE("random walksets validate against their chain") {
    oracle::RandomChainSpec spec;
    spec.n_states = 12;
    spec.seed = 5;
    const auto chain = oracle::random_reversible_chain(spec);
    const auto walks = oracle::random_odd_walkset(chain.kernel, 77);
    REQUIRE(walks.size() == 12);
    for (std::size_t x = 0; x < walks.size(); ++x) {
        CHECK(validate_walk(chain.kernel, walks.walks[x]).ok);
        CHECK(walks.walks[x].vertices.front() == x);
    }
    // Same seed, same walks.
    const auto again = oracle::random_odd_walkset(chain.kernel, 77);
    for (std::size_t x = 0; x < walks.size(); ++x)
        CHECK(again.walks[x].vertices == walks.walks[x].vertices);
}

TEST_CASE("congestion bound holds on a random batch") {
    oracle::SplitMix64 seeds(2026);
    for (int trial = 0; trial < 10; ++trial) {
        oracle::RandomChainSpec spec;
        spec.n_states = 2 + static_cast<int>(seeds.below(14));
        spec.seed = seeds.next();
        const auto chain = oracle::random_reversible_chain(spec);
        const auto walks = oracle::random_odd_walkset(chain.kernel, seeds.next());
        const auto eta = congestion(chain.kernel, chain.pi, walks);
        const auto bound = lemma1_bound(eta);
        const auto summary = summarize(eigenvalues(chain.kernel, chain.pi));
        CHECK(summary.lambda_min >= bound.lambda_min_lower.to_double() - 1e-8);
    }
}

TEST_CASE("count_regular_graphs guards its range") {
    CHECK_THROWS_AS(oracle::count_regular_graphs(8, 3), InvalidArgumentError);
    CHECK(oracle::count_regular_graphs(2, 1) == 1);
}
