#include "guesswork/coding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "compensated.hpp"
#include "guesswork/errors.hpp"
#include "rounding.hpp"

namespace guesswork {

namespace {

void require_positive_rho(double rho) {
    if (!std::isfinite(rho) || rho <= 0.0) {
        throw std::invalid_argument("rho must be finite and positive, got " + std::to_string(rho));
    }
}

// Merge loop shared by the tree-building and cost-only paths. Weights must
// arrive sorted ascending; `on_merge(i, j, w)` is told which two node ids
// merged into the new weight w. Node ids: leaves keep their position in the
// sorted input, merged nodes continue counting upward.
template <typename OnMerge>
double run_merge_queue(const std::vector<double>& sorted_weights, double rho, OnMerge on_merge) {
    const std::size_t m = sorted_weights.size();
    const double factor = std::exp2(rho);
    if (m == 1) return factor * sorted_weights[0];

    // Two-queue scheme: merged weights come out nondecreasing, so a FIFO of
    // merged nodes plus a cursor over the sorted leaves replaces a heap.
    std::vector<double> merged;
    merged.reserve(m - 1);
    std::size_t leaf = 0, node = 0;
    auto pop_min = [&]() -> std::pair<std::size_t, double> {
        // Prefer leaves on ties so equal-weight leaves merge before nodes.
        if (leaf < m && (node == merged.size() || sorted_weights[leaf] <= merged[node])) {
            const std::size_t id = leaf;
            return {id, sorted_weights[leaf++]};
        }
        const std::size_t id = m + node;
        return {id, merged[node++]};
    };
    for (std::size_t step = 0; step + 1 < m; ++step) {
        const auto [ia, wa] = pop_min();
        const auto [ib, wb] = pop_min();
        const double w = factor * (wa + wb);
        on_merge(ia, ib, w);
        merged.push_back(w);
    }
    return merged.back();
}

}  // namespace

double exponential_cost(const Pmf& p, const LengthFunction& l, double rho) {
    require_positive_rho(rho);
    if (p.size() != l.size()) {
        throw std::invalid_argument("pmf and length function must share one alphabet");
    }
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < p.size(); ++i) acc.add(p[i] * std::exp2(rho * l[i]));
    return acc.value();
}

LengthFunction tilted_lengths(const Pmf& p, double rho) {
    require_positive_rho(rho);
    const RhoParams params(rho);
    const Pmf q = tilt(p, params.alpha);
    const std::size_t m = p.size();
    std::vector<int> lengths(m, 0);
    int max_support_len = 0;
    std::size_t zero_count = 0;
    detail::CompensatedSum kraft_used;
    for (std::size_t i = 0; i < m; ++i) {
        if (p[i] > 0.0) {
            lengths[i] = detail::snapped_ceil_bits(-std::log2(q[i]));
            max_support_len = std::max(max_support_len, lengths[i]);
            kraft_used.add(std::ldexp(1.0, -lengths[i]));
        } else {
            ++zero_count;
        }
    }
    if (zero_count > 0) {
        // Zero-mass symbols never contribute to cost; park them all at the
        // shortest length past the support maximum that fits the remaining
        // Kraft budget.
        const double budget = (1.0 + 1e-12) - kraft_used.value();
        int len = std::max(max_support_len + 1, 1);
        while (std::ldexp(static_cast<double>(zero_count), -len) > budget) {
            if (len > 1074) {
                throw NumericError("no Kraft room left for zero-mass codewords");
            }
            ++len;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (p[i] <= 0.0) lengths[i] = len;
        }
    }
    return LengthFunction(std::move(lengths));
}

CodingReport exponential_huffman(const Pmf& p, double rho) {
    require_positive_rho(rho);
    const std::size_t m = p.size();
    if (m == 1) {
        LengthFunction l(std::vector<int>{1});
        const double cost = exponential_cost(p, l, rho);
        return CodingReport{{1}, cost, std::log2(cost) / rho};
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    std::vector<double> sorted(m);
    for (std::size_t pos = 0; pos < m; ++pos) sorted[pos] = p[order[pos]];

    // parent[] is indexed by merge-queue node id; parents are always created
    // after their children, so one reverse sweep resolves all depths.
    std::vector<std::size_t> parent(2 * m - 1, 0);
    std::size_t next_id = m;
    run_merge_queue(sorted, rho, [&](std::size_t ia, std::size_t ib, double) {
        parent[ia] = next_id;
        parent[ib] = next_id;
        ++next_id;
    });

    std::vector<int> depth(2 * m - 1, 0);
    for (std::size_t k = 2 * m - 2; k-- > 0;) depth[k] = depth[parent[k]] + 1;

    std::vector<int> lengths(m);
    for (std::size_t pos = 0; pos < m; ++pos) lengths[order[pos]] = depth[pos];

    LengthFunction l(std::move(lengths));
    // Recompute the cost from the final lengths rather than trusting the
    // accumulated root weight; the direct sum is the quantity reported.
    const double cost = exponential_cost(p, l, rho);
    return CodingReport{l.lengths(), cost, std::log2(cost) / rho};
}

double exponential_huffman_cost(const std::vector<double>& weights, double rho) {
    require_positive_rho(rho);
    if (weights.empty()) throw std::invalid_argument("weight vector must be nonempty");
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::invalid_argument("weights must be finite and nonnegative");
        }
    }
    std::vector<double> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    return run_merge_queue(sorted, rho, [](std::size_t, std::size_t, double) {});
}

double exhaustive_min_cost(const Pmf& p, double rho, int max_len) {
    require_positive_rho(rho);
    if (max_len < 1 || max_len > 30) {
        throw std::invalid_argument("exhaustive search needs max_len in [1, 30]");
    }
    const std::size_t m = p.size();

    std::vector<double> desc = p.masses();
    std::sort(desc.begin(), desc.end(), std::greater<>());

    // Kraft budget in integer units of 2^-max_len, so feasibility is exact.
    const std::uint64_t capacity = std::uint64_t{1} << max_len;
    std::vector<double> term(static_cast<std::size_t>(max_len) + 1);
    for (int l = 1; l <= max_len; ++l) term[l] = std::exp2(rho * l);

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> lens(m);
    // Nondecreasing lengths assigned to probabilities sorted descending: for
    // any fixed multiset of lengths that pairing minimizes the cost, so the
    // search over multisets covers every code.
    std::function<void(std::size_t, int, std::uint64_t, double)> dfs =
        [&](std::size_t i, int min_len, std::uint64_t units_left, double partial) {
            if (partial >= best) return;
            if (i == m) {
                best = partial;
                return;
            }
            const std::uint64_t others = static_cast<std::uint64_t>(m - i - 1);
            for (int l = min_len; l <= max_len; ++l) {
                const std::uint64_t need = std::uint64_t{1} << (max_len - l);
                if (need > units_left || units_left - need < others) continue;
                lens[i] = l;
                dfs(i + 1, l, units_left - need, partial + desc[i] * term[l]);
            }
        };
    dfs(0, 1, capacity, 0.0);
    if (!std::isfinite(best)) {
        throw std::invalid_argument("no feasible code: max_len too small for the alphabet");
    }
    return best;
}

double campbell_exponent_finite(const SourceSpec& src, int n, double rho, std::uint64_t guard) {
    require_positive_rho(rho);
    const std::uint64_t count = checked_string_count(src, n, guard);
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(count));
    for_each_string(
        src, n, [&](std::span<const int>, double prob) { weights.push_back(prob); }, guard);
    return std::log(exponential_huffman_cost(weights, rho)) / n;
}

}  // namespace guesswork
