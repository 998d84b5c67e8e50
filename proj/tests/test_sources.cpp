#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "guesswork/pmf.hpp"
#include "guesswork/sources.hpp"

using namespace guesswork;

namespace {

SourceSpec example_markov() {
    return SourceSpec::markov({Pmf({0.9, 0.1}), Pmf({0.2, 0.8})}, Pmf({1.0, 0.0}));
}

SourceSpec example_unifilar() {
    // Two states, successor state = current xor symbol.
    return SourceSpec::unifilar({Pmf({0.7, 0.3}), Pmf({0.4, 0.6})}, {{0, 1}, {1, 0}}, 0);
}

SourceSpec example_mixture() {
    return SourceSpec::mixture(0.4, Pmf({0.9, 0.1}), Pmf({0.5, 0.5}));
}

}  // namespace

TEST_CASE("factories validate their structural invariants") {
    CHECK(SourceSpec::iid(Pmf({0.75, 0.25})).alphabet_size() == 2);

    // Markov: square, matching initial, strongly connected.
    CHECK_THROWS_AS(SourceSpec::markov({}, Pmf({1.0})), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::markov({Pmf({0.5, 0.5})}, Pmf({1.0})), std::invalid_argument);
    CHECK_THROWS_AS(
        SourceSpec::markov({Pmf({0.9, 0.1}), Pmf({0.2, 0.8})}, Pmf({1.0, 0.0, 0.0})),
        std::invalid_argument);
    CHECK_THROWS_AS(  // two absorbing states: reducible
        SourceSpec::markov({Pmf({1.0, 0.0}), Pmf({0.0, 1.0})}, Pmf({0.5, 0.5})),
        std::invalid_argument);
    CHECK_THROWS_AS(  // one absorbing state: still reducible
        SourceSpec::markov({Pmf({1.0, 0.0}), Pmf({0.5, 0.5})}, Pmf({0.5, 0.5})),
        std::invalid_argument);
    CHECK(example_markov().alphabet_size() == 2);
    // A periodic but irreducible chain is legal.
    CHECK(SourceSpec::markov({Pmf({0.0, 1.0}), Pmf({1.0, 0.0})}, Pmf({0.5, 0.5}))
              .alphabet_size() == 2);

    // Unifilar: per-state bijection on states, ranges in bounds.
    CHECK_THROWS_AS(SourceSpec::unifilar({Pmf({0.7, 0.3}), Pmf({0.4, 0.6})}, {{0, 0}, {1, 0}}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::unifilar({Pmf({0.7, 0.3}), Pmf({0.4, 0.6})}, {{0, 2}, {1, 0}}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::unifilar({Pmf({0.7, 0.3}), Pmf({0.4, 0.6})}, {{0, 1}}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::unifilar({Pmf({0.7, 0.3}), Pmf({0.4, 0.6})}, {{0, 1}, {1, 0}}, 2),
                    std::invalid_argument);
    CHECK(example_unifilar().alphabet_size() == 2);

    // Mixture: weight strictly inside (0,1), shared alphabet.
    CHECK_THROWS_AS(SourceSpec::mixture(0.0, Pmf({0.5, 0.5}), Pmf({0.5, 0.5})),
                    std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::mixture(1.0, Pmf({0.5, 0.5}), Pmf({0.5, 0.5})),
                    std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::mixture(0.4, Pmf({0.5, 0.5}), Pmf({0.5, 0.25, 0.25})),
                    std::invalid_argument);
    CHECK(example_mixture().alphabet_size() == 2);
}

TEST_CASE("sequence probability is the exact product/blend") {
    const SourceSpec iid = SourceSpec::iid(Pmf({0.75, 0.25}));
    const std::vector<int> x010{0, 1, 0};
    CHECK(sequence_probability(iid, x010) == doctest::Approx(9.0 / 64.0).epsilon(1e-15));

    const SourceSpec markov = example_markov();
    const std::vector<int> x01{0, 1};
    CHECK(sequence_probability(markov, x01) == doctest::Approx(0.1).epsilon(1e-15));
    const std::vector<int> x011{0, 1, 1};
    CHECK(sequence_probability(markov, x011) == doctest::Approx(0.1 * 0.8).epsilon(1e-15));

    const SourceSpec unifilar = example_unifilar();
    // State path 0 ->(emit 0, stay)-> 0 ->(emit 1, flip)-> 1 ->(emit 1, flip)-> 0.
    CHECK(sequence_probability(unifilar, x011) ==
          doctest::Approx(0.7 * 0.3 * 0.6).epsilon(1e-15));

    const SourceSpec mixture = example_mixture();
    const std::vector<int> x0{0};
    CHECK(sequence_probability(mixture, x0) ==
          doctest::Approx(0.4 * 0.9 + 0.6 * 0.5).epsilon(1e-15));

    const std::vector<int> bad{0, 2};
    CHECK_THROWS_AS(sequence_probability(iid, bad), std::invalid_argument);
    CHECK_THROWS_AS(sequence_probability(iid, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("long sequences agree with direct powers through the log-domain path") {
    const SourceSpec iid = SourceSpec::iid(Pmf({0.75, 0.25}));
    const std::vector<int> zeros(40, 0);
    CHECK(sequence_probability(iid, zeros) ==
          doctest::Approx(std::pow(0.75, 40)).epsilon(1e-12));

    const std::vector<int> deep(1200, 1);  // far below double range as a plain product
    CHECK(sequence_probability(iid, deep) == 0.0);  // underflows cleanly, not NaN

    const SourceSpec mixture = example_mixture();
    const std::vector<int> ones(40, 1);
    const double expect = 0.4 * std::pow(0.1, 40) + 0.6 * std::pow(0.5, 40);
    CHECK(sequence_probability(mixture, ones) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("string enumeration is lexicographic, complete, and consistent") {
    for (const SourceSpec& src :
         {SourceSpec::iid(Pmf({0.75, 0.25})), example_markov(), example_unifilar(),
          example_mixture()}) {
        std::vector<std::vector<int>> seen;
        double total = 0.0;
        bool consistent = true;
        for_each_string(src, 3, [&](std::span<const int> xs, double p) {
            seen.emplace_back(xs.begin(), xs.end());
            total += p;
            if (std::abs(p - sequence_probability(src, xs)) > 1e-15) consistent = false;
        });
        REQUIRE(seen.size() == 8);
        CHECK(seen.front() == std::vector<int>{0, 0, 0});
        CHECK(seen[1] == std::vector<int>{0, 0, 1});
        CHECK(seen.back() == std::vector<int>{1, 1, 1});
        CHECK(std::is_sorted(seen.begin(), seen.end()));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(consistent);
    }
}

TEST_CASE("the enumeration guard rejects oversized jobs up front") {
    const SourceSpec iid = SourceSpec::iid(Pmf({0.5, 0.5}));
    CHECK(checked_string_count(iid, 24, kDefaultEnumerationGuard) == (1u << 24));
    CHECK_THROWS_AS(checked_string_count(iid, 25, kDefaultEnumerationGuard), GuardExceededError);
    CHECK(checked_string_count(iid, 25, std::uint64_t{1} << 25) == (std::uint64_t{1} << 25));
    CHECK_THROWS_AS(checked_string_count(iid, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(checked_string_count(iid, 1, kGuardCeiling + 1), std::invalid_argument);
    CHECK_THROWS_AS(checked_string_count(iid, 0, kDefaultEnumerationGuard),
                    std::invalid_argument);

    // Overflow-proof: 3^64 strings cannot wrap around 2^64.
    const SourceSpec ternary = SourceSpec::iid(Pmf({0.4, 0.3, 0.3}));
    CHECK_THROWS_AS(checked_string_count(ternary, 64, kDefaultEnumerationGuard),
                    GuardExceededError);

    bool ran = false;
    CHECK_THROWS_AS(for_each_string(iid, 25, [&](std::span<const int>, double) { ran = true; }),
                    GuardExceededError);
    CHECK_FALSE(ran);
}

TEST_CASE("information spectrum merges equal points and keeps total mass") {
    // Uniform: every string has t = ln 2, one atom of mass 1.
    const SpectrumDistribution uniform =
        information_spectrum(SourceSpec::iid(Pmf({0.5, 0.5})), 3);
    REQUIRE(uniform.atoms.size() == 1);
    CHECK(uniform.atoms[0].t == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(uniform.atoms[0].mass == doctest::Approx(1.0).epsilon(1e-14));

    // Binomial: n+1 atoms with binomial masses, t increasing.
    const SpectrumDistribution spec =
        information_spectrum(SourceSpec::iid(Pmf({0.75, 0.25})), 2);
    REQUIRE(spec.atoms.size() == 3);
    CHECK(spec.atoms[0].t == doctest::Approx(-0.5 * std::log(9.0 / 16.0)).epsilon(1e-14));
    CHECK(spec.atoms[0].mass == doctest::Approx(9.0 / 16.0).epsilon(1e-14));
    CHECK(spec.atoms[1].mass == doctest::Approx(6.0 / 16.0).epsilon(1e-14));
    CHECK(spec.atoms[2].t == doctest::Approx(std::log(4.0)).epsilon(1e-14));  // -(1/2)ln(1/16)
    CHECK(spec.atoms[2].mass == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    for (std::size_t i = 1; i < spec.atoms.size(); ++i) {
        CHECK(spec.atoms[i].t > spec.atoms[i - 1].t);
    }

    // Zero-mass strings are dropped; the remaining masses still sum to 1.
    const SpectrumDistribution zeros =
        information_spectrum(SourceSpec::iid(Pmf({0.5, 0.5, 0.0})), 2);
    double total = 0.0;
    for (const SpectrumAtom& a : zeros.atoms) total += a.mass;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    REQUIRE(zeros.atoms.size() == 1);  // the four surviving strings share one t
}

TEST_CASE("spectrum cumulant equals beta times the enumerated renyi rate") {
    // The cumulant of -(1/n) ln P_n at n*beta is (1/n) ln sum P_n^alpha.
    for (const SourceSpec& src :
         {SourceSpec::iid(Pmf({0.75, 0.25})), example_markov(), example_unifilar(),
          example_mixture()}) {
        for (double rho : {0.5, 1.0, 2.0}) {
            const RhoParams params(rho);
            for (int n : {1, 3, 6}) {
                double sum_alpha = 0.0;
                for_each_string(src, n, [&](std::span<const int>, double p) {
                    if (p > 0.0) sum_alpha += std::pow(p, params.alpha);
                });
                const double expect = std::log(sum_alpha) / n;
                CHECK(spectrum_cumulant(src, n, params) ==
                      doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }
}
