#pragma once

#include <cstdint>
#include <vector>

#include "guesswork/guessing.hpp"
#include "guesswork/pmf.hpp"
#include "guesswork/sources.hpp"

namespace guesswork {

/// E[2^{rho L}] = Σ p(x)·2^{rho·L(x)}.
double exponential_cost(const Pmf& p, const LengthFunction& l, double rho);

/// Ceiling lengths of the tilted pmf Q* ∝ p^{1/(1+rho)}: the near-optimal
/// non-integer solution rounded up, floored at 1 bit. Zero-mass symbols get
/// the shortest length past the support maximum that keeps the Kraft sum
/// at or below 1 (they never contribute to cost).
LengthFunction tilted_lengths(const Pmf& p, double rho);

struct CodingReport {
    std::vector<int> lengths;
    double cost;           // E[2^{rho L}]
    double exponent_bits;  // (1/rho)·log2 cost
};

/// Exact minimizer of E[2^{rho L}] over integer Kraft length functions:
/// repeatedly merges the two smallest weights w_i, w_j into
/// 2^rho·(w_i + w_j); leaf depths are the lengths and the final weight is
/// the cost. A single-symbol alphabet gets the forced length 1.
CodingReport exponential_huffman(const Pmf& p, double rho);

/// Cost-only variant of the same merge for a raw weight vector (weights
/// >= 0, not validated as a pmf) — used on enumerated joint distributions
/// where materializing the code tree is pointless.
double exponential_huffman_cost(const std::vector<double>& weights, double rho);

/// Reference oracle: exhaustive search over all nondecreasing integer
/// length vectors with max length <= max_len that satisfy Kraft, each
/// assigned greedily (shortest length to most probable symbol). Exponential
/// in m; intended for m <= 8.
double exhaustive_min_cost(const Pmf& p, double rho, int max_len);

/// (1/n)·ln of the minimum E[2^{rho L_n}] over codes for the enumerated
/// n-fold source distribution, in nats.
double campbell_exponent_finite(const SourceSpec& src, int n, double rho,
                                std::uint64_t guard = kDefaultEnumerationGuard);

}  // namespace guesswork
