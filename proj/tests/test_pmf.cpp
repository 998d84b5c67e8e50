#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "guesswork/pmf.hpp"

using namespace guesswork;

namespace {
// Reference values computed with 40-digit arithmetic and frozen here.
constexpr double kShannon75 = 0.56233514461880835;
constexpr double kRenyiHalf75 = 0.62381071636487140;
constexpr double kRenyiThird75 = 0.64623217385448345;
constexpr double kRenyiTwoThirds75 = 0.60228171343545803;
constexpr double kKlUniformVs75 = 0.14384103622589046;
constexpr double kTiltHalf75Hi = 0.63397459621556135;
constexpr double kTiltHalf75Lo = 0.36602540378443865;
}  // namespace

TEST_CASE("pmf construction enforces the invariants") {
    CHECK_THROWS_AS(Pmf(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(Pmf({0.5, -0.1, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Pmf({0.5, 0.4}), std::invalid_argument);         // sum 0.9
    CHECK_THROWS_AS(Pmf({0.5, 0.5 + 1e-6}), std::invalid_argument);  // drift past 1e-9

    const Pmf drifted({0.5, 0.5 + 1e-10});  // small drift renormalizes
    CHECK(drifted[0] + drifted[1] == doctest::Approx(1.0).epsilon(1e-15));

    const Pmf p({0.75, 0.25});
    CHECK(p.size() == 2);
    CHECK(p[0] == 0.75);
    CHECK(p.masses() == std::vector<double>{0.75, 0.25});

    const Pmf with_zero({0.5, 0.0, 0.5});
    CHECK(with_zero[1] == 0.0);
}

TEST_CASE("make_pmf normalizes arbitrary weights") {
    const Pmf p = make_pmf({3.0, 1.0});
    CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(make_pmf({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_pmf({1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("rho params expose exact alpha/beta complements") {
    const RhoParams p(1.0);
    CHECK(p.alpha == 0.5);
    CHECK(p.beta == 0.5);
    CHECK(p.alpha + p.beta == 1.0);

    const RhoParams q(0.5);
    CHECK(q.alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
    CHECK(q.alpha + q.beta == 1.0);

    CHECK_THROWS_AS(RhoParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(RhoParams(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(RhoParams(std::nan("")), std::invalid_argument);
}

TEST_CASE("shannon entropy matches the frozen reference") {
    CHECK(shannon_entropy(Pmf({0.75, 0.25})) == doctest::Approx(kShannon75).epsilon(1e-14));
    CHECK(shannon_entropy(Pmf({0.5, 0.5})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(shannon_entropy(Pmf({1.0})) == 0.0);
    CHECK(shannon_entropy(Pmf({0.5, 0.5, 0.0})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("renyi entropy matches frozen references and limits") {
    const Pmf p({0.75, 0.25});
    CHECK(renyi_entropy(p, 0.5) == doctest::Approx(kRenyiHalf75).epsilon(1e-14));
    CHECK(renyi_entropy(p, 1.0 / 3.0) == doctest::Approx(kRenyiThird75).epsilon(1e-14));
    CHECK(renyi_entropy(p, 2.0 / 3.0) == doctest::Approx(kRenyiTwoThirds75).epsilon(1e-14));
    CHECK(renyi_entropy(p, 1.0) == shannon_entropy(p));

    // Uniform pmfs have entropy ln m at every order.
    for (double a : {0.25, 0.5, 1.0, 2.0}) {
        CHECK(renyi_entropy(Pmf({0.25, 0.25, 0.25, 0.25}), a) ==
              doctest::Approx(std::log(4.0)).epsilon(1e-14));
    }

    // Nonincreasing in the order.
    double prev = renyi_entropy(p, 0.1);
    for (double a : {0.3, 0.7, 1.0, 1.5, 3.0}) {
        const double cur = renyi_entropy(p, a);
        CHECK(cur <= prev + 1e-13);
        prev = cur;
    }
    CHECK_THROWS_AS(renyi_entropy(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(renyi_entropy(p, -0.5), std::invalid_argument);
}

TEST_CASE("kl divergence matches the frozen reference and support rules") {
    const Pmf u({0.5, 0.5});
    const Pmf p({0.75, 0.25});
    CHECK(kl_divergence(u, p) == doctest::Approx(kKlUniformVs75).epsilon(1e-14));
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kl_divergence(u, u) == 0.0);
    CHECK(std::isinf(kl_divergence(u, Pmf({1.0, 0.0}))));
    CHECK(kl_divergence(Pmf({1.0, 0.0}), u) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("tilt produces the normalized alpha power") {
    const Pmf p({0.75, 0.25});
    const Pmf q = tilt(p, 0.5);
    CHECK(q[0] == doctest::Approx(kTiltHalf75Hi).epsilon(1e-14));
    CHECK(q[1] == doctest::Approx(kTiltHalf75Lo).epsilon(1e-14));

    const Pmf same = tilt(p, 1.0);
    CHECK(same[0] == doctest::Approx(0.75).epsilon(1e-15));

    const Pmf z = tilt(Pmf({0.5, 0.0, 0.5}), 0.7);
    CHECK(z[1] == 0.0);
    CHECK(z[0] == doctest::Approx(0.5).epsilon(1e-14));

    // Tiny masses survive the log-domain path.
    const Pmf tiny = tilt(make_pmf({1.0, 1e-280}), 0.5);
    CHECK(tiny[1] > 0.0);
    CHECK(tiny[0] + tiny[1] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(tilt(p, 0.0), std::invalid_argument);
}
