#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "oddwalks/chain.hpp"
#include "oddwalks/errors.hpp"
#include "oddwalks/spectral.hpp"

using namespace oddwalks;

namespace {

Chain two_state_chain() {
    Chain chain;
    chain.kernel.rows = {{{0, Rational(1, 2)}, {1, Rational(1, 2)}},
                         {{0, Rational(1, 4)}, {1, Rational(3, 4)}}};
    chain.pi.pi = {Rational(1, 3), Rational(2, 3)};
    return chain;
}

}  // namespace

TEST_CASE("jacobi diagonalizes hand matrices") {
    // The raw decomposition reports values in diagonal order; sort here.
    SUBCASE("2x2") {
        DenseMatrix s(2);
        s.at(0, 0) = 2;
        s.at(0, 1) = s.at(1, 0) = 1;
        s.at(1, 1) = 2;
        std::vector<double> values;
        DenseMatrix vectors;
        jacobi_eigendecomposition(s, values, vectors);
        REQUIRE(values.size() == 2);
        std::sort(values.begin(), values.end(), std::greater<>());
        CHECK(values[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(values[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("3x3 block") {
        // Block diag(2, [[3,4],[4,9]]) has eigenvalues 11, 2, 1.
        DenseMatrix s(3);
        s.at(0, 0) = 2;
        s.at(1, 1) = 3;
        s.at(1, 2) = s.at(2, 1) = 4;
        s.at(2, 2) = 9;
        std::vector<double> values;
        DenseMatrix vectors;
        jacobi_eigendecomposition(s, values, vectors);
        REQUIRE(values.size() == 3);
        std::sort(values.begin(), values.end(), std::greater<>());
        CHECK(values[0] == doctest::Approx(11.0).epsilon(1e-12));
        CHECK(values[1] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(values[2] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("symmetrize produces a bitwise symmetric matrix") {
    const auto chain = two_state_chain();
    const auto s = symmetrize(chain.kernel, chain.pi);
    REQUIRE(s.n == 2);
    CHECK(s.at(0, 1) == s.at(1, 0));
    CHECK(s.at(0, 0) == doctest::Approx(0.5));
    // Off-diagonal: Q(0,1)/sqrt(pi0 pi1) = (1/6)/sqrt(2/9).
    CHECK(s.at(0, 1) == doctest::Approx((1.0 / 6.0) / std::sqrt(2.0 / 9.0)));
}

TEST_CASE("two-state spectrum is {1, 1/4}") {
    const auto chain = two_state_chain();
    const auto spectrum = eigenvalues(chain.kernel, chain.pi);
    REQUIRE(spectrum.eigenvalues.size() == 2);
    CHECK(spectrum.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(spectrum.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(spectrum.max_residual <= 1e-8);

    const auto summary = summarize(spectrum);
    CHECK(summary.lambda_1 == doctest::Approx(0.25));
    CHECK(summary.lambda_min == doctest::Approx(0.25));
    CHECK(summary.lambda_star == doctest::Approx(0.25));
    CHECK(summary.relaxation_time_star == doctest::Approx(4.0 / 3.0));
    CHECK(summary.gap_upper_inverse == doctest::Approx(0.8));
}

TEST_CASE("deterministic flip has eigenvalue -1") {
    TransitionKernel flip;
    flip.rows = {{{1, Rational(1)}}, {{0, Rational(1)}}};
    const auto pi = uniform_distribution(2);
    const auto spectrum = eigenvalues(flip, pi);
    CHECK(spectrum.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(spectrum.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-10));
    const auto summary = summarize(spectrum);
    CHECK(std::isinf(summary.gap_upper_inverse));
}

TEST_CASE("trace equals the eigenvalue sum") {
    const auto chain = two_state_chain();
    const auto spectrum = eigenvalues(chain.kernel, chain.pi);
    double trace = 0.0, sum = 0.0;
    for (StateIndex x = 0; x < 2; ++x) trace += chain.kernel.prob(x, x).to_double();
    for (double v : spectrum.eigenvalues) sum += v;
    CHECK(std::fabs(trace - sum) <= 1e-6 * 2);
}

TEST_CASE("lazy transform halves the spectrum towards one") {
    const auto chain = two_state_chain();
    const auto lazy = lazy_transform(chain.kernel);
    CHECK_NOTHROW(lazy.validate());
    CHECK(lazy.prob(0, 0) == Rational(3, 4));
    CHECK(lazy.prob(0, 1) == Rational(1, 4));
    CHECK(lazy.prob(1, 1) == Rational(7, 8));
    CHECK(check_detailed_balance(lazy, chain.pi).ok);

    const auto spectrum = eigenvalues(lazy, chain.pi);
    CHECK(spectrum.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(spectrum.eigenvalues[1] == doctest::Approx(0.625).epsilon(1e-10));
}

TEST_CASE("mixing time bound formula") {
    SpectralSummary summary;
    summary.lambda_star = 0.5;
    StationaryDistribution pi;
    pi.pi = {Rational(1, 4), Rational(3, 4)};
    CHECK(mixing_time_bound(summary, pi, 0.25) ==
          doctest::Approx(2.0 * std::log(16.0)).epsilon(1e-12));
    CHECK_THROWS_AS(mixing_time_bound(summary, pi, 0.0), Error);
    CHECK_THROWS_AS(mixing_time_bound(summary, pi, 1.0), Error);
}

TEST_CASE("eigenvalues respects the state cap") {
    const auto chain = two_state_chain();
    CHECK_THROWS_AS(eigenvalues(chain.kernel, chain.pi, 1), StateCapError);
}
