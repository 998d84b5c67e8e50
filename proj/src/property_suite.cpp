#include "guesswork/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <vector>

#include "guesswork/coding.hpp"
#include "guesswork/guessing.hpp"
#include "guesswork/pmf.hpp"

namespace guesswork {

namespace {

// Uniform doubles built by hand from mt19937_64 words so streams are
// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

Pmf random_pmf(Rng& rng, int m, double w_lo, double w_hi, bool plant_tie) {
    std::vector<double> w(m);
    for (double& x : w) x = rng.uniform(w_lo, w_hi);
    if (plant_tie && m >= 2) {
        // Duplicate one weight so tie-breaking paths actually run.
        const int src = rng.uniform_int(0, m - 1);
        int dst = rng.uniform_int(0, m - 1);
        if (dst == src) dst = (dst + 1) % m;
        w[dst] = w[src];
    }
    return make_pmf(w);
}

LengthFunction random_length_function(Rng& rng, int m) {
    // Feasible by construction: ceiling lengths of a random pmf, with some
    // entries stretched (stretching only loosens Kraft).
    const Pmf p = random_pmf(rng, m, 0.05, 1.0, false);
    std::vector<int> lengths(m);
    for (int i = 0; i < m; ++i) {
        lengths[i] = std::max(1, static_cast<int>(std::ceil(-std::log2(p[i]))));
        if (rng.uniform() < 0.3) lengths[i] += rng.uniform_int(1, 3);
    }
    return LengthFunction(std::move(lengths));
}

class Harness {
public:
    explicit Harness(SuiteResult& out) : out_(out) {}

    void check(bool ok, const std::string& property, const std::string& detail) {
        ++out_.checks_run;
        if (!ok) out_.failures.push_back(PropertyFailure{property, detail});
    }

private:
    SuiteResult& out_;
};

double direct_moment(const Pmf& p, const std::vector<int>& ranks, double rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * std::pow(ranks[i], rho);
    return s;
}

// Optimal E[L] for a binary prefix code, via the identity that the expected
// length equals the sum of all merged-pair weights in the classical scheme.
double classical_expected_length(const Pmf& p) {
    std::priority_queue<double, std::vector<double>, std::greater<>> q(p.masses().begin(),
                                                                       p.masses().end());
    double total = 0.0;
    while (q.size() > 1) {
        const double a = q.top();
        q.pop();
        const double b = q.top();
        q.pop();
        total += a + b;
        q.push(a + b);
    }
    return total;
}

}  // namespace

SuiteResult run_guessing_property_suite(std::uint64_t seed, int cases) {
    SuiteResult result;
    Harness h(result);
    Rng rng(seed);

    for (int c = 0; c < cases; ++c) {
        const int m = rng.uniform_int(2, 8);
        const double rho = rng.uniform(0.1, 3.0);
        const Pmf p = random_pmf(rng, m, 1e-6, 1.0, rng.uniform() < 0.3);
        const LengthFunction l = random_length_function(rng, m);

        const SandwichReport sandwich = verify_sandwich(p, l, rho);
        for (const InequalityCheck& chk : sandwich.checks) {
            h.check(chk.pass, "sandwich/" + chk.id,
                    "m=" + std::to_string(m) + " rho=" + fmt(rho) + " lhs=" + fmt(chk.lhs) +
                        " rhs=" + fmt(chk.rhs));
        }

        const GuessingOrder g = optimal_guessing_order(p);

        // Optimal order ranks heavier symbols earlier; equal masses keep
        // ascending symbol order.
        bool order_ok = true;
        for (int i = 0; i < m && order_ok; ++i) {
            for (int j = 0; j < m && order_ok; ++j) {
                if (p[i] > p[j] && g.rank(i) > g.rank(j)) order_ok = false;
                if (p[i] == p[j] && i < j && g.rank(i) > g.rank(j)) order_ok = false;
            }
        }
        h.check(order_ok, "optimal_order/sorted_by_mass", "case " + std::to_string(c));

        // Associate maps: pmf of the order is 1/(c*rank); the order induced
        // by its own associate lengths guesses in the original rank order.
        const GuessingAssociates assoc = associates_of_guessing(g);
        const double c_m = harmonic_constant(static_cast<std::uint64_t>(m));
        bool assoc_ok = true;
        for (int i = 0; i < m; ++i) {
            if (std::abs(assoc.pmf[i] * c_m * g.rank(i) - 1.0) > 1e-9) assoc_ok = false;
        }
        h.check(assoc_ok, "associates/pmf_is_inverse_rank", "case " + std::to_string(c));
        h.check(assoc.lengths.kraft_sum() <= 1.0 + 1e-12, "associates/kraft_feasible",
                "kraft=" + fmt(assoc.lengths.kraft_sum()));

        const LengthAssociates la = guessing_of_length(l);
        bool la_ok = true;
        for (int i = 0; i < m && la_ok; ++i) {
            for (int j = 0; j < m && la_ok; ++j) {
                if (l[i] < l[j] && la.order.rank(i) > la.order.rank(j)) la_ok = false;
                if (l[i] == l[j] && i < j && la.order.rank(i) > la.order.rank(j)) la_ok = false;
            }
        }
        h.check(la_ok, "length_associates/sorted_by_length", "case " + std::to_string(c));
        bool la_pmf_ok = true;
        for (int i = 0; i < m; ++i) {
            const double expect = std::ldexp(1.0, -l[i]) / l.kraft_sum();
            if (std::abs(la.pmf[i] - expect) > 1e-12) la_pmf_ok = false;
        }
        h.check(la_pmf_ok, "length_associates/pmf_proportional_to_2_pow_neg_l",
                "case " + std::to_string(c));

        for (double b : {1.0, 1.5, 2.25}) {
            const InclusionReport inc = verify_inclusions(g, b);
            h.check(inc.all_pass, "inclusions/levels_nested",
                    "b=" + fmt(b) + " case " + std::to_string(c));
            const LengthInclusionReport linc = verify_length_inclusion(l, b);
            h.check(linc.check.pass, "inclusions/length_level_contains_late_guesses",
                    "b=" + fmt(b) + " case " + std::to_string(c));
        }

        // For small alphabets, compare against every possible order.
        if (m <= 6) {
            const double opt = guessing_moment(p, g, rho);
            std::vector<int> perm(m);
            std::iota(perm.begin(), perm.end(), 1);
            bool minimal = true;
            double best_other = std::numeric_limits<double>::infinity();
            do {
                best_other = std::min(best_other, direct_moment(p, perm, rho));
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (opt > best_other * (1.0 + 1e-12)) minimal = false;
            h.check(minimal, "optimal_order/beats_all_permutations",
                    "opt=" + fmt(opt) + " best=" + fmt(best_other));
        }

        // Swapping two equal-mass symbols must not change the moment.
        std::vector<double> masses = p.masses();
        int a = -1, bsym = -1;
        for (int i = 0; i < m && a < 0; ++i)
            for (int j = i + 1; j < m && a < 0; ++j)
                if (masses[i] == masses[j]) {
                    a = i;
                    bsym = j;
                }
        if (a >= 0) {
            std::swap(masses[a], masses[bsym]);
            const Pmf swapped(masses);
            const double m1 = guessing_moment(p, optimal_guessing_order(p), rho);
            const double m2 = guessing_moment(swapped, optimal_guessing_order(swapped), rho);
            h.check(std::abs(m1 - m2) <= 1e-12 * std::max(1.0, std::abs(m1)),
                    "optimal_order/tie_swap_invariant", "m1=" + fmt(m1) + " m2=" + fmt(m2));
        }
    }
    return result;
}

SuiteResult run_coding_property_suite(std::uint64_t seed, int cases) {
    SuiteResult result;
    Harness h(result);
    Rng rng(seed);

    for (int c = 0; c < cases; ++c) {
        const int m = rng.uniform_int(2, 5);
        const double rho = rng.uniform(0.1, 3.0);
        const Pmf p = random_pmf(rng, m, 0.05, 1.0, rng.uniform() < 0.3);

        const CodingReport huff = exponential_huffman(p, rho);
        const double oracle = exhaustive_min_cost(p, rho, 2 * m);
        h.check(std::abs(huff.cost - oracle) <= 1e-9 * std::max(1.0, oracle),
                "merge_rule/matches_exhaustive_minimum",
                "m=" + std::to_string(m) + " rho=" + fmt(rho) + " merge=" + fmt(huff.cost) +
                    " oracle=" + fmt(oracle));

        // No code does better than the optimum, and the tilted ceiling code
        // is a valid competitor.
        const LengthFunction tilted = tilted_lengths(p, rho);
        const double tilted_cost = exponential_cost(p, tilted, rho);
        h.check(huff.cost <= tilted_cost * (1.0 + 1e-12), "optimal_cost/dominates_tilted_ceiling",
                "opt=" + fmt(huff.cost) + " tilted=" + fmt(tilted_cost));

        // One-extra-bit envelope: H_alpha <= (1/rho) log2 cost* <= H_alpha + 1.
        const RhoParams params(rho);
        const double h_alpha_bits = renyi_entropy(p, params.alpha) / std::log(2.0);
        h.check(huff.exponent_bits >= h_alpha_bits - 1e-9 &&
                    huff.exponent_bits <= h_alpha_bits + 1.0 + 1e-9,
                "optimal_cost/within_one_bit_of_renyi",
                "exp_bits=" + fmt(huff.exponent_bits) + " h_alpha=" + fmt(h_alpha_bits));

        // As rho -> 0 the merge degenerates to the classical one. At
        // rho = 1e-6 the cost expansion 1 + rho*ln2*E[L] + O(rho^2) says the
        // optimal tree's expected length can exceed the classical optimum by
        // at most O(rho*E[L^2]), far below 1e-4 for these alphabets.
        const CodingReport near_zero = exponential_huffman(p, 1e-6);
        double near_zero_expected_len = 0.0;
        for (int i = 0; i < m; ++i) near_zero_expected_len += p[i] * near_zero.lengths[i];
        const double classical_opt = classical_expected_length(p);
        h.check(near_zero_expected_len >= classical_opt - 1e-12 &&
                    near_zero_expected_len <= classical_opt + 1e-4,
                "merge_rule/degenerates_to_classical",
                "E[L]=" + fmt(near_zero_expected_len) + " classical=" + fmt(classical_opt));
    }
    return result;
}

}  // namespace guesswork
