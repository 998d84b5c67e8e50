#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace guesswork {

struct PropertyFailure {
    std::string property;
    std::string detail;
};

struct SuiteResult {
    int checks_run = 0;
    std::vector<PropertyFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Randomized checks of the guessing inequalities: the moment sandwich, the
/// rank/pmf/length identities of the associate maps, the level-set
/// inclusions, Kraft feasibility of induced lengths, optimality of the
/// probability-ordered guess against all m! orders (m <= 6), and moment
/// invariance under permutations of equal-mass symbols.
SuiteResult run_guessing_property_suite(std::uint64_t seed, int cases);

/// Randomized checks of the coding routines: merge-rule minimality against
/// the exhaustive oracle (m <= 5), cost dominance over the tilted ceiling
/// code, the one-extra-bit envelope around the Renyi entropy, and agreement
/// with the classical merge as rho -> 0.
SuiteResult run_coding_property_suite(std::uint64_t seed, int cases);

}  // namespace guesswork
