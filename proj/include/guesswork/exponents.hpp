#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "guesswork/pmf.hpp"
#include "guesswork/sources.hpp"

namespace guesswork {

enum class ExponentMethod {
    ClosedFormIid,
    PerronFrobenius,
    TransferMatrixUnifilar,
    MixtureMax,
    Variational,
    LegendreDual,
    FiniteN,
};

std::string_view to_string(ExponentMethod m);

/// E(rho) = lim (1/n) ln E[G_n*^rho] together with how it was computed.
/// Always inside [0, rho·ln|X|] and nondecreasing in rho.
struct ExponentReport {
    double rho;
    double alpha;
    double beta;
    double e_rho;
    ExponentMethod method;
};

/// Limiting guessing exponent of the source:
///  - iid: rho·H_{1/(1+rho)}(P1)
///  - markov: (1+rho)·ln λ of the elementwise alpha-power of the
///    transition matrix (λ = Perron-Frobenius eigenvalue)
///  - unifilar: (1+rho)·ln λ of the state transfer matrix
///    M(s,s') = Σ_{x: next(s,x)=s'} emission(x|s)^alpha
///  - mixture: max of the two component exponents
ExponentReport guessing_exponent(const SourceSpec& src, double rho);

/// Perron-Frobenius data of a square nonnegative irreducible matrix via
/// power iteration (ℓ∞ normalization, residual |Mv - λv|∞ <= 1e-12·|v|∞,
/// cap 1e5 iterations). Reducible or non-square input is rejected.
/// λ always lies between the min and max row sums.
struct PerronFrobenius {
    double value;
    std::vector<double> right;
    std::vector<double> left;
    int iterations;
};
PerronFrobenius perron_frobenius(const std::vector<std::vector<double>>& m);

/// Large-deviations rate function sampled on a t-grid. t strictly
/// increasing; rate[i] is meaningless where infinite[i] is set (the +inf
/// flag is a flag, never a large float).
struct RateFunctionGrid {
    std::vector<double> t;
    std::vector<double> rate;
    std::vector<bool> infinite;
    std::string label;
    int resolution;
};

/// Rate function I(t) = sup_beta { beta·t - ln Σ p(x)^{1-beta} } of the
/// information-spectrum variable -ln p(X), sampled on `resolution` evenly
/// spaced points spanning [min -ln p, max -ln p]. The 1-D sup runs
/// golden-section on a window that starts at [-50, 50] and doubles while
/// the boundary derivative says the maximizer is outside (cap ±4096).
RateFunctionGrid cramer_rate_function(const Pmf& p1, int resolution = 512);

/// sup over grid points of beta·t - I(t), skipping infinite-rate points.
double legendre_transform(const RateFunctionGrid& grid, double beta);

/// E(rho) recovered from a rate function: (1+rho)·sup_t { beta·t - I(t) }
/// with beta = rho/(1+rho).
ExponentReport exponent_from_rate(const RateFunctionGrid& grid, double rho);

/// Value and maximizer of sup_Q { rho·H(Q) - D(Q||p1) }. The closed-form
/// maximizer is the tilt Q* ∝ p1^{1/(1+rho)} and the value equals
/// rho·H_{1/(1+rho)}(p1).
struct VariationalReport {
    double value;
    Pmf maximizer;
};
VariationalReport variational_exponent(const Pmf& p1, double rho);

/// Brute-force check of the same sup over a step-spaced simplex grid.
/// Restricted to alphabets of two or three symbols.
VariationalReport variational_simplex_search(const Pmf& p1, double rho, double step = 1e-3);

/// (1/n)·ln E[G_n*^rho] of the enumerated n-fold distribution.
double finite_n_guessing_exponent(const SourceSpec& src, int n, double rho,
                                  std::uint64_t guard = kDefaultEnumerationGuard);

/// Same value wrapped as a report tagged FINITE_N.
ExponentReport finite_n_exponent_report(const SourceSpec& src, int n, double rho,
                                        std::uint64_t guard = kDefaultEnumerationGuard);

/// (1/n)·H_alpha(P_n) of the enumerated n-fold distribution, in nats.
double finite_n_renyi_rate(const SourceSpec& src, int n, double alpha,
                           std::uint64_t guard = kDefaultEnumerationGuard);

}  // namespace guesswork
