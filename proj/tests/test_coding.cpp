#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "guesswork/coding.hpp"
#include "guesswork/property_suite.hpp"
#include "guesswork/sources.hpp"

using namespace guesswork;

TEST_CASE("exponential cost evaluates the defining sum") {
    CHECK(exponential_cost(Pmf({0.5, 0.5}), LengthFunction({1, 1}), 1.0) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(exponential_cost(Pmf({0.5, 0.25, 0.25}), LengthFunction({1, 2, 2}), 1.0) ==
          doctest::Approx(3.0).epsilon(1e-15));
    CHECK(exponential_cost(Pmf({0.5, 0.5}), LengthFunction({1, 2}), 2.0) ==
          doctest::Approx(0.5 * 4.0 + 0.5 * 16.0).epsilon(1e-15));
    CHECK_THROWS_AS(exponential_cost(Pmf({0.5, 0.5}), LengthFunction({1, 2, 2}), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(exponential_cost(Pmf({0.5, 0.5}), LengthFunction({1, 1}), 0.0),
                    std::invalid_argument);
}

TEST_CASE("tilted ceiling lengths round the tilted pmf up") {
    // tilt((0.75,0.25), 1/2) = (0.634, 0.366): -log2 gives 0.658 and 1.45.
    const LengthFunction l = tilted_lengths(Pmf({0.75, 0.25}), 1.0);
    CHECK(l.lengths() == std::vector<int>{1, 2});

    // A uniform pmf tilts to itself exactly, so the snap window keeps
    // -log2(2^-k) from rounding up to k+1.
    CHECK(tilted_lengths(Pmf({0.5, 0.5}), 0.7).lengths() == std::vector<int>{1, 1});
    CHECK(tilted_lengths(Pmf({0.25, 0.25, 0.25, 0.25}), 2.0).lengths() ==
          std::vector<int>{2, 2, 2, 2});

    CHECK(l.kraft_sum() <= 1.0 + 1e-12);
}

TEST_CASE("zero-mass symbols get parked past the support without breaking Kraft") {
    const Pmf p({0.5, 0.5, 0.0, 0.0, 0.0});
    const LengthFunction l = tilted_lengths(p, 1.0);
    CHECK(l[0] == 1);
    CHECK(l[1] == 1);
    // Support uses the whole Kraft budget, so the three spare words need
    // 3*2^-len <= 1e-12.
    CHECK(l[2] >= 42);
    CHECK(l[2] == l[3]);
    CHECK(l[3] == l[4]);
    CHECK(l.kraft_sum() <= 1.0 + 1e-12);
    // The spare words cost nothing.
    CHECK(exponential_cost(p, l, 1.0) == doctest::Approx(2.0).epsilon(1e-12));

    // With spare budget they sit just past the longest support word.
    const LengthFunction roomy = tilted_lengths(Pmf({0.6, 0.3, 0.1, 0.0}), 1.0);
    CHECK(roomy.lengths() == std::vector<int>{2, 2, 3, 4});
    CHECK(roomy.kraft_sum() <= 1.0 + 1e-12);
}

TEST_CASE("the merge rule builds the minimum-cost code") {
    const CodingReport r = exponential_huffman(Pmf({0.5, 0.25, 0.25}), 1.0);
    CHECK(r.lengths == std::vector<int>{1, 2, 2});
    CHECK(r.cost == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(r.exponent_bits == doctest::Approx(std::log2(3.0)).epsilon(1e-14));

    // Single symbol still needs one bit.
    const CodingReport one = exponential_huffman(Pmf({1.0}), 2.0);
    CHECK(one.lengths == std::vector<int>{1});
    CHECK(one.cost == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(one.exponent_bits == doctest::Approx(1.0).epsilon(1e-14));

    // Lengths always form a full Kraft tree for m >= 2.
    const CodingReport full = exponential_huffman(Pmf({0.4, 0.3, 0.2, 0.1}), 0.7);
    CHECK(LengthFunction(full.lengths).kraft_sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("merge cost agrees with the exhaustive oracle on fixed and random cases") {
    for (double rho : {0.5, 1.0, 2.0}) {
        const Pmf p({0.55, 0.25, 0.1, 0.06, 0.04});
        const double merge = exponential_huffman(p, rho).cost;
        const double oracle = exhaustive_min_cost(p, rho, 10);
        CHECK(merge == doctest::Approx(oracle).epsilon(1e-12));
    }
    // Heavier tilt changes the optimal tree shape but not the agreement.
    const Pmf skew({0.9, 0.05, 0.03, 0.02});
    CHECK(exponential_huffman(skew, 3.0).cost ==
          doctest::Approx(exhaustive_min_cost(skew, 3.0, 8)).epsilon(1e-12));
}

TEST_CASE("exhaustive search validates its inputs") {
    CHECK_THROWS_AS(exhaustive_min_cost(Pmf({0.25, 0.25, 0.25, 0.25}), 1.0, 1),
                    std::invalid_argument);  // no feasible code
    CHECK_THROWS_AS(exhaustive_min_cost(Pmf({0.5, 0.5}), 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_min_cost(Pmf({0.5, 0.5}), 1.0, 31), std::invalid_argument);
    CHECK(exhaustive_min_cost(Pmf({0.5, 0.5}), 1.0, 1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("cost-only merge matches the tree-building merge") {
    const Pmf p({0.4, 0.3, 0.2, 0.1});
    for (double rho : {0.3, 1.0, 2.5}) {
        CHECK(exponential_huffman_cost(p.masses(), rho) ==
              doctest::Approx(exponential_huffman(p, rho).cost).epsilon(1e-12));
    }
    CHECK(exponential_huffman_cost({0.7}, 1.0) == doctest::Approx(1.4).epsilon(1e-15));
    CHECK_THROWS_AS(exponential_huffman_cost({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(exponential_huffman_cost({0.5, -0.1}, 1.0), std::invalid_argument);

    // Unnormalized weights scale the cost linearly.
    const double base = exponential_huffman_cost({0.4, 0.3, 0.3}, 1.0);
    CHECK(exponential_huffman_cost({0.8, 0.6, 0.6}, 1.0) ==
          doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("block coding exponent respects the one-bit envelope") {
    const SourceSpec uniform = SourceSpec::iid(Pmf({0.5, 0.5}));
    CHECK(campbell_exponent_finite(uniform, 4, 1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));

    for (const SourceSpec& src :
         {SourceSpec::iid(Pmf({0.75, 0.25})),
          SourceSpec::markov({Pmf({0.9, 0.1}), Pmf({0.2, 0.8})}, Pmf({1.0, 0.0}))}) {
        for (double rho : {0.5, 1.0, 2.0}) {
            const RhoParams params(rho);
            for (int n : {1, 4, 8}) {
                const double exponent = campbell_exponent_finite(src, n, rho);
                // In bits at block level: (1/rho) log2 E[2^{rho L*}].
                const double block_bits = exponent * n / (rho * std::log(2.0));
                double sum_alpha = 0.0;
                for_each_string(src, n, [&](std::span<const int>, double p) {
                    if (p > 0.0) sum_alpha += std::pow(p, params.alpha);
                });
                const double h_alpha_bits = std::log(sum_alpha) / (1.0 - params.alpha) /
                                            std::log(2.0);
                CHECK(block_bits >= h_alpha_bits - 1e-9);
                CHECK(block_bits <= h_alpha_bits + 1.0 + 1e-9);
            }
        }
    }
}

TEST_CASE("randomized coding property suite is clean") {
    const SuiteResult r = run_coding_property_suite(11, 40);
    for (const PropertyFailure& f : r.failures) {
        FAIL_CHECK((f.property + ": " + f.detail));
    }
    CHECK(r.ok());
    CHECK(r.checks_run == 40 * 4);
}
