#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guesswork/pmf.hpp"

namespace guesswork {

/// A guessing function: rank(x) is the position (1-based) at which symbol x
/// is tried. Ranks form a permutation of 1..m.
class GuessingOrder {
public:
    explicit GuessingOrder(std::vector<int> ranks);

    std::size_t size() const { return ranks_.size(); }
    int rank(std::size_t symbol) const { return ranks_[symbol]; }
    const std::vector<int>& ranks() const { return ranks_; }

private:
    std::vector<int> ranks_;
};

/// Integer codeword lengths in bits, every length >= 1, Kraft sum
/// Σ 2^-L(x) <= 1 + 1e-12.
class LengthFunction {
public:
    explicit LengthFunction(std::vector<int> lengths);

    std::size_t size() const { return lengths_.size(); }
    int operator[](std::size_t symbol) const { return lengths_[symbol]; }
    const std::vector<int>& lengths() const { return lengths_; }
    double kraft_sum() const;

private:
    std::vector<int> lengths_;
};

/// Ranks symbols by decreasing probability, ties broken by ascending
/// symbol id. Minimizes E[G^rho] for every rho > 0.
GuessingOrder optimal_guessing_order(const Pmf& p);

/// E[G^rho] = Σ p(x)·rank(x)^rho.
double guessing_moment(const Pmf& p, const GuessingOrder& g, double rho);

/// Σ_{i=1..m} 1/i. Never exceeds 1 + ln m.
double harmonic_constant(std::uint64_t m);

/// The pmf and length function a guessing order induces:
/// pmf(x) = 1/(c·rank(x)) with c the harmonic constant, and
/// lengths(x) = max(1, ceil(-log2 pmf(x))).
struct GuessingAssociates {
    Pmf pmf;
    LengthFunction lengths;
};
GuessingAssociates associates_of_guessing(const GuessingOrder& g);

/// The guessing order and pmf a length function induces: guess in order of
/// ascending length (ties by ascending symbol id), pmf(x) ∝ 2^-L(x).
struct LengthAssociates {
    GuessingOrder order;
    Pmf pmf;
};
LengthAssociates guessing_of_length(const LengthFunction& l);

/// One verified inequality: pass iff lhs <= rhs within 1e-12 relative
/// slack; margin = rhs - lhs.
struct InequalityCheck {
    std::string id;
    double lhs;
    double rhs;
    double margin;
    bool pass;
};

/// The four-term moment chain tying a length function's exponential cost
/// to guessing moments:
///   E[2^{rho L}] >= E[G_L^rho] >= E[G*^rho] >= E[2^{rho L_{G*}}]·2^{-rho(1+log2 c)}.
struct SandwichReport {
    double cost;        // E[2^{rho L}]
    double moment_gl;   // E[G_L^rho], G_L induced by L
    double moment_opt;  // E[G*^rho], optimal order
    double lower;       // E[2^{rho L_{G*}}]·2^{-rho(1+log2 c)}
    std::vector<InequalityCheck> checks;
    bool all_pass;
};
SandwichReport verify_sandwich(const Pmf& p, const LengthFunction& l, double rho);

/// Level-set inclusions for threshold b >= 1:
///   {L_G >= b + 1 + log2 c} ⊆ {G >= 2^b} ⊆ {L_G >= b}.
/// Sets are reported as ascending symbol-id lists.
struct InclusionReport {
    std::vector<int> long_codewords;
    std::vector<int> late_guesses;
    std::vector<int> at_least_b;
    std::vector<InequalityCheck> checks;
    bool all_pass;
};
InclusionReport verify_inclusions(const GuessingOrder& g, double b);

/// {G_L >= 2^b} ⊆ {L >= b} for a supplied length function, b >= 1.
struct LengthInclusionReport {
    std::vector<int> late_guesses;
    std::vector<int> at_least_b;
    InequalityCheck check;
};
LengthInclusionReport verify_length_inclusion(const LengthFunction& l, double b);

}  // namespace guesswork
