#pragma once

#include <cstddef>
#include <vector>

namespace guesswork {

/// Probability mass function over a finite alphabet {0, ..., m-1}.
///
/// Invariants: at least one symbol, every mass >= 0, masses sum to 1
/// within 1e-12. Construction renormalizes drift up to 1e-9 and rejects
/// anything worse; use make_pmf to build from unnormalized weights.
class Pmf {
public:
    explicit Pmf(std::vector<double> masses);

    std::size_t size() const { return masses_.size(); }
    double operator[](std::size_t i) const { return masses_[i]; }
    const std::vector<double>& masses() const { return masses_; }

private:
    std::vector<double> masses_;
};

/// Normalizes arbitrary nonnegative weights (positive total) into a Pmf.
Pmf make_pmf(const std::vector<double>& weights);

/// Guessing-moment order parameter rho > 0 and its derived exponents
/// alpha = 1/(1+rho), beta = rho/(1+rho). alpha + beta == 1.
struct RhoParams {
    double rho;
    double alpha;
    double beta;

    explicit RhoParams(double rho_value);
};

/// Shannon entropy in nats; 0*ln 0 := 0.
double shannon_entropy(const Pmf& p);

/// Renyi entropy of order alpha > 0 in nats. alpha == 1 falls back to
/// Shannon (the continuity extension).
double renyi_entropy(const Pmf& p, double alpha);

/// KL divergence D(q || p) in nats; +infinity when q is not absolutely
/// continuous w.r.t. p.
double kl_divergence(const Pmf& q, const Pmf& p);

/// The tilted pmf proportional to p(x)^alpha on the support of p.
/// Zero-mass symbols stay at zero. Requires alpha > 0.
Pmf tilt(const Pmf& p, double alpha);

}  // namespace guesswork
