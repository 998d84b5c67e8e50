#include "guesswork/pmf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "compensated.hpp"

namespace guesswork {

namespace {

// Validates masses and returns their compensated sum.
double checked_total(const std::vector<double>& masses) {
    if (masses.empty()) {
        throw std::invalid_argument("pmf needs at least one symbol");
    }
    detail::CompensatedSum acc;
    for (double m : masses) {
        if (!std::isfinite(m) || m < 0.0) {
            throw std::invalid_argument("pmf mass must be finite and nonnegative, got " +
                                        std::to_string(m));
        }
        acc.add(m);
    }
    return acc.value();
}

}  // namespace

Pmf::Pmf(std::vector<double> masses) : masses_(std::move(masses)) {
    const double total = checked_total(masses_);
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("pmf masses sum to " + std::to_string(total) +
                                    ", more than 1e-9 from 1; normalize with make_pmf");
    }
    // Renormalize drift away. Dividing positive terms by their own sum leaves
    // the new compensated sum within ~1 ulp of 1 for any alphabet size.
    for (double& m : masses_) m /= total;
}

Pmf make_pmf(const std::vector<double>& weights) {
    const double total = checked_total(weights);
    if (total <= 0.0) {
        throw std::invalid_argument("pmf weights must have positive total");
    }
    std::vector<double> masses(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) masses[i] = weights[i] / total;
    return Pmf(std::move(masses));
}

RhoParams::RhoParams(double rho_value) : rho(rho_value) {
    if (!std::isfinite(rho) || rho <= 0.0) {
        throw std::invalid_argument("rho must be finite and positive, got " + std::to_string(rho));
    }
    alpha = 1.0 / (1.0 + rho);
    beta = 1.0 - alpha;  // == rho/(1+rho), phrased so alpha + beta is exactly 1
}

double shannon_entropy(const Pmf& p) {
    detail::CompensatedSum acc;
    for (double m : p.masses()) {
        if (m > 0.0) acc.add(-m * std::log(m));
    }
    return acc.value();
}

double renyi_entropy(const Pmf& p, double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw std::invalid_argument("renyi order must be finite and positive, got " +
                                    std::to_string(alpha));
    }
    if (alpha == 1.0) return shannon_entropy(p);  // continuity extension
    detail::CompensatedSum acc;
    for (double m : p.masses()) {
        if (m > 0.0) acc.add(std::pow(m, alpha));
    }
    return std::log(acc.value()) / (1.0 - alpha);
}

double kl_divergence(const Pmf& q, const Pmf& p) {
    if (q.size() != p.size()) {
        throw std::invalid_argument("kl_divergence needs matching alphabets");
    }
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] > 0.0) {
            if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
            acc.add(q[i] * std::log(q[i] / p[i]));
        }
    }
    return acc.value();
}

Pmf tilt(const Pmf& p, double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw std::invalid_argument("tilt exponent must be finite and positive, got " +
                                    std::to_string(alpha));
    }
    // Work with exp(alpha*ln p - shift): normalization-invariant and immune
    // to p^alpha under/overflow at extreme alpha.
    double shift = -std::numeric_limits<double>::infinity();
    for (double m : p.masses()) {
        if (m > 0.0) shift = std::max(shift, alpha * std::log(m));
    }
    std::vector<double> w(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) w[i] = std::exp(alpha * std::log(p[i]) - shift);
    }
    return make_pmf(w);
}

}  // namespace guesswork
