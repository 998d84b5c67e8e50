#include "guesswork/guessing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "compensated.hpp"
#include "rounding.hpp"

namespace guesswork {

namespace {

constexpr double kRelTol = 1e-12;

using detail::snapped_ceil_bits;

void require_positive_rho(double rho) {
    if (!std::isfinite(rho) || rho <= 0.0) {
        throw std::invalid_argument("rho must be finite and positive, got " + std::to_string(rho));
    }
}

InequalityCheck make_check(std::string id, double lhs, double rhs) {
    const double margin = rhs - lhs;
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return InequalityCheck{std::move(id), lhs, rhs, margin, margin >= -kRelTol * scale};
}

double exp2_cost(const Pmf& p, const LengthFunction& l, double rho) {
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < p.size(); ++i) acc.add(p[i] * std::exp2(rho * l[i]));
    return acc.value();
}

}  // namespace

GuessingOrder::GuessingOrder(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    const int m = static_cast<int>(ranks_.size());
    if (m == 0) throw std::invalid_argument("guessing order needs at least one symbol");
    std::vector<bool> seen(ranks_.size(), false);
    for (int r : ranks_) {
        if (r < 1 || r > m || seen[r - 1]) {
            throw std::invalid_argument("guessing ranks must be a permutation of 1.." +
                                        std::to_string(m));
        }
        seen[r - 1] = true;
    }
}

LengthFunction::LengthFunction(std::vector<int> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty()) throw std::invalid_argument("length function needs at least one symbol");
    for (int l : lengths_) {
        if (l < 1) throw std::invalid_argument("codeword lengths must be >= 1 bits");
    }
    const double k = kraft_sum();
    if (k > 1.0 + 1e-12) {
        throw std::invalid_argument("Kraft sum " + std::to_string(k) + " exceeds 1");
    }
}

double LengthFunction::kraft_sum() const {
    detail::CompensatedSum acc;
    for (int l : lengths_) acc.add(std::ldexp(1.0, -l));
    return acc.value();
}

GuessingOrder optimal_guessing_order(const Pmf& p) {
    std::vector<int> idx(p.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (p[a] != p[b]) return p[a] > p[b];
        return a < b;  // ties: ascending symbol id
    });
    std::vector<int> ranks(p.size());
    for (std::size_t pos = 0; pos < idx.size(); ++pos) ranks[idx[pos]] = static_cast<int>(pos) + 1;
    return GuessingOrder(std::move(ranks));
}

double guessing_moment(const Pmf& p, const GuessingOrder& g, double rho) {
    require_positive_rho(rho);
    if (p.size() != g.size()) throw std::invalid_argument("pmf/order size mismatch");
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc.add(p[i] * std::pow(static_cast<double>(g.rank(i)), rho));
    }
    return acc.value();
}

double harmonic_constant(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("harmonic_constant needs m >= 1");
    // Smallest terms first keeps the tail from being swallowed.
    detail::CompensatedSum acc;
    for (std::uint64_t i = m; i >= 1; --i) acc.add(1.0 / static_cast<double>(i));
    return acc.value();
}

GuessingAssociates associates_of_guessing(const GuessingOrder& g) {
    const std::size_t m = g.size();
    const double c = harmonic_constant(m);
    std::vector<double> q(m);
    for (std::size_t i = 0; i < m; ++i) q[i] = 1.0 / (c * g.rank(i));
    Pmf pmf(std::move(q));
    std::vector<int> lengths(m);
    for (std::size_t i = 0; i < m; ++i) lengths[i] = snapped_ceil_bits(-std::log2(pmf[i]));
    return GuessingAssociates{std::move(pmf), LengthFunction(std::move(lengths))};
}

LengthAssociates guessing_of_length(const LengthFunction& l) {
    const std::size_t m = l.size();
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (l[a] != l[b]) return l[a] < l[b];  // shortest first
        return a < b;
    });
    std::vector<int> ranks(m);
    for (std::size_t pos = 0; pos < m; ++pos) ranks[idx[pos]] = static_cast<int>(pos) + 1;
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = std::ldexp(1.0, -l[i]);
    return LengthAssociates{GuessingOrder(std::move(ranks)), make_pmf(w)};
}

SandwichReport verify_sandwich(const Pmf& p, const LengthFunction& l, double rho) {
    require_positive_rho(rho);
    if (p.size() != l.size()) throw std::invalid_argument("pmf/length size mismatch");

    const double cost = exp2_cost(p, l, rho);
    const LengthAssociates by_length = guessing_of_length(l);
    const double moment_gl = guessing_moment(p, by_length.order, rho);
    const GuessingOrder best = optimal_guessing_order(p);
    const double moment_opt = guessing_moment(p, best, rho);
    const GuessingAssociates assoc = associates_of_guessing(best);
    const double c = harmonic_constant(p.size());
    const double lower =
        exp2_cost(p, assoc.lengths, rho) * std::exp2(-rho * (1.0 + std::log2(c)));

    SandwichReport r{cost, moment_gl, moment_opt, lower, {}, true};
    r.checks.push_back(make_check("induced_order_moment_le_cost", moment_gl, cost));
    r.checks.push_back(make_check("optimal_moment_le_induced_order_moment", moment_opt, moment_gl));
    r.checks.push_back(make_check("discounted_associate_cost_le_optimal_moment", lower, moment_opt));
    for (const auto& ck : r.checks) r.all_pass = r.all_pass && ck.pass;
    return r;
}

InclusionReport verify_inclusions(const GuessingOrder& g, double b) {
    if (!std::isfinite(b) || b < 1.0) {
        throw std::invalid_argument("inclusion threshold must satisfy b >= 1");
    }
    const std::size_t m = g.size();
    const double c = harmonic_constant(m);
    const GuessingAssociates assoc = associates_of_guessing(g);
    const double pow2b = std::exp2(b);

    InclusionReport r;
    for (std::size_t x = 0; x < m; ++x) {
        const int lg = assoc.lengths[x];
        if (lg >= b + 1.0 + std::log2(c)) r.long_codewords.push_back(static_cast<int>(x));
        if (g.rank(x) >= pow2b) r.late_guesses.push_back(static_cast<int>(x));
        if (lg >= b) r.at_least_b.push_back(static_cast<int>(x));
    }
    auto count_missing = [](const std::vector<int>& sub, const std::vector<int>& super) {
        int missing = 0;
        for (int x : sub) {
            if (!std::binary_search(super.begin(), super.end(), x)) ++missing;
        }
        return missing;
    };
    r.checks.push_back(make_check("long_codewords_subset_late_guesses",
                                  count_missing(r.long_codewords, r.late_guesses), 0.0));
    r.checks.push_back(make_check("late_guesses_subset_at_least_b",
                                  count_missing(r.late_guesses, r.at_least_b), 0.0));
    r.all_pass = r.checks[0].pass && r.checks[1].pass;
    return r;
}

LengthInclusionReport verify_length_inclusion(const LengthFunction& l, double b) {
    if (!std::isfinite(b) || b < 1.0) {
        throw std::invalid_argument("inclusion threshold must satisfy b >= 1");
    }
    const LengthAssociates assoc = guessing_of_length(l);
    const double pow2b = std::exp2(b);
    LengthInclusionReport r;
    for (std::size_t x = 0; x < l.size(); ++x) {
        if (assoc.order.rank(x) >= pow2b) r.late_guesses.push_back(static_cast<int>(x));
        if (l[x] >= b) r.at_least_b.push_back(static_cast<int>(x));
    }
    int missing = 0;
    for (int x : r.late_guesses) {
        if (!std::binary_search(r.at_least_b.begin(), r.at_least_b.end(), x)) ++missing;
    }
    r.check = make_check("late_guesses_subset_min_length", missing, 0.0);
    return r;
}

}  // namespace guesswork
