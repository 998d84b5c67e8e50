#include "guesswork/sources.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "compensated.hpp"

namespace guesswork {

namespace {

// Strong connectivity of the positive-entry digraph: forward and backward
// reachability from vertex 0 must both cover every vertex.
bool strongly_connected(const std::vector<Pmf>& rows) {
    const std::size_t n = rows.size();
    auto reaches_all = [&](bool forward) {
        std::vector<bool> seen(n, false);
        std::queue<std::size_t> q;
        seen[0] = true;
        q.push(0);
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t v = 0; v < n; ++v) {
                const double edge = forward ? rows[u][v] : rows[v][u];
                if (edge > 0.0 && !seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    return reaches_all(true) && reaches_all(false);
}

double log_sum_exp2(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

SourceSpec SourceSpec::iid(Pmf p1) {
    const int m = static_cast<int>(p1.size());
    return SourceSpec(IidSource{std::move(p1)}, m);
}

SourceSpec SourceSpec::markov(std::vector<Pmf> rows, Pmf initial) {
    const std::size_t m = rows.size();
    if (m == 0) throw std::invalid_argument("markov source needs at least one row");
    for (const Pmf& row : rows) {
        if (row.size() != m) {
            throw std::invalid_argument("markov transition matrix must be square");
        }
    }
    if (initial.size() != m) {
        throw std::invalid_argument("markov initial pmf must match the alphabet");
    }
    if (!strongly_connected(rows)) {
        throw std::invalid_argument("markov transition matrix is reducible");
    }
    return SourceSpec(MarkovSource{std::move(rows), std::move(initial)}, static_cast<int>(m));
}

SourceSpec SourceSpec::unifilar(std::vector<Pmf> emission, std::vector<std::vector<int>> next_state,
                                int initial_state) {
    const std::size_t s_count = emission.size();
    if (s_count == 0) throw std::invalid_argument("unifilar source needs at least one state");
    const std::size_t m = emission[0].size();
    for (const Pmf& row : emission) {
        if (row.size() != m) {
            throw std::invalid_argument("unifilar emission rows must share one alphabet");
        }
    }
    if (next_state.size() != s_count) {
        throw std::invalid_argument("unifilar next-state table must have one row per state");
    }
    for (std::size_t s = 0; s < s_count; ++s) {
        if (next_state[s].size() != m) {
            throw std::invalid_argument("unifilar next-state rows must span the alphabet");
        }
        std::vector<bool> hit(s_count, false);
        for (int ns : next_state[s]) {
            if (ns < 0 || static_cast<std::size_t>(ns) >= s_count) {
                throw std::invalid_argument("unifilar next-state entry out of range");
            }
            if (hit[ns]) {
                throw std::invalid_argument(
                    "unifilar next-state map must be one-to-one per state");
            }
            hit[ns] = true;
        }
    }
    if (initial_state < 0 || static_cast<std::size_t>(initial_state) >= s_count) {
        throw std::invalid_argument("unifilar initial state out of range");
    }
    return SourceSpec(UnifilarSource{std::move(emission), std::move(next_state), initial_state},
                      static_cast<int>(m));
}

SourceSpec SourceSpec::mixture(double weight, Pmf first, Pmf second) {
    if (!std::isfinite(weight) || weight <= 0.0 || weight >= 1.0) {
        throw std::invalid_argument("mixture weight must lie strictly inside (0,1)");
    }
    if (first.size() != second.size()) {
        throw std::invalid_argument("mixture components must share one alphabet");
    }
    const int m = static_cast<int>(first.size());
    return SourceSpec(MixtureSource{weight, std::move(first), std::move(second)}, m);
}

std::uint64_t checked_string_count(const SourceSpec& src, int n, std::uint64_t guard) {
    if (n < 1) throw std::invalid_argument("string length n must be >= 1");
    if (guard == 0 || guard > kGuardCeiling) {
        throw std::invalid_argument("enumeration guard must lie in [1, 2^28]");
    }
    const std::uint64_t m = static_cast<std::uint64_t>(src.alphabet_size());
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) {
        if (count > guard / m) {
            throw GuardExceededError("enumerating " + std::to_string(src.alphabet_size()) + "^" +
                                     std::to_string(n) + " strings exceeds the guard of " +
                                     std::to_string(guard) + " strings");
        }
        count *= m;
    }
    if (count > guard) {
        throw GuardExceededError("enumerating " + std::to_string(count) +
                                 " strings exceeds the guard of " + std::to_string(guard) +
                                 " strings");
    }
    return count;
}

double sequence_probability(const SourceSpec& src, std::span<const int> xn) {
    const int n = static_cast<int>(xn.size());
    if (n < 1) throw std::invalid_argument("sequence must have at least one symbol");
    const int m = src.alphabet_size();
    for (int x : xn) {
        if (x < 0 || x >= m) throw std::invalid_argument("sequence symbol out of range");
    }
    // Plain products are exact enough up to 30 factors; past that, log-domain
    // accumulation avoids underflow on long strings.
    const bool log_domain = n > 30;
    return std::visit(
        [&](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, IidSource>) {
                if (!log_domain) {
                    double p = 1.0;
                    for (int x : xn) p *= s.p1[x];
                    return p;
                }
                double lp = 0.0;
                for (int x : xn) lp += std::log(s.p1[x]);
                return std::exp(lp);
            } else if constexpr (std::is_same_v<S, MarkovSource>) {
                if (!log_domain) {
                    double p = s.initial[xn[0]];
                    for (int i = 1; i < n; ++i) p *= s.rows[xn[i - 1]][xn[i]];
                    return p;
                }
                double lp = std::log(s.initial[xn[0]]);
                for (int i = 1; i < n; ++i) lp += std::log(s.rows[xn[i - 1]][xn[i]]);
                return std::exp(lp);
            } else if constexpr (std::is_same_v<S, UnifilarSource>) {
                if (!log_domain) {
                    double p = 1.0;
                    int st = s.initial_state;
                    for (int x : xn) {
                        p *= s.emission[st][x];
                        st = s.next_state[st][x];
                    }
                    return p;
                }
                double lp = 0.0;
                int st = s.initial_state;
                for (int x : xn) {
                    lp += std::log(s.emission[st][x]);
                    st = s.next_state[st][x];
                }
                return std::exp(lp);
            } else {
                if (!log_domain) {
                    double a = 1.0, b = 1.0;
                    for (int x : xn) {
                        a *= s.first[x];
                        b *= s.second[x];
                    }
                    return s.weight * a + (1.0 - s.weight) * b;
                }
                double la = std::log(s.weight), lb = std::log1p(-s.weight);
                for (int x : xn) {
                    la += std::log(s.first[x]);
                    lb += std::log(s.second[x]);
                }
                const double lse = log_sum_exp2(la, lb);
                return lse == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(lse);
            }
        },
        src.value());
}

SpectrumDistribution information_spectrum(const SourceSpec& src, int n, std::uint64_t guard) {
    std::vector<SpectrumAtom> points;
    points.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(checked_string_count(src, n, guard), 1u << 20)));
    for_each_string(
        src, n,
        [&](std::span<const int>, double p) {
            if (p > 0.0) {
                points.push_back(SpectrumAtom{std::max(0.0, -std::log(p) / n), p});
            }
        },
        guard);
    std::sort(points.begin(), points.end(),
              [](const SpectrumAtom& a, const SpectrumAtom& b) { return a.t < b.t; });

    // Merge t values within 1e-12*n of the running cluster edge; the merged
    // atom sits at the mass-weighted mean so spectrum moments are preserved.
    const double tol = 1e-12 * n;
    SpectrumDistribution out{n, {}};
    std::size_t i = 0;
    detail::CompensatedSum total_mass;
    while (i < points.size()) {
        double last_t = points[i].t;
        detail::CompensatedSum mass;
        detail::CompensatedSum weighted_t;
        std::size_t j = i;
        while (j < points.size() && points[j].t - last_t <= tol) {
            last_t = points[j].t;
            mass.add(points[j].mass);
            weighted_t.add(points[j].t * points[j].mass);
            ++j;
        }
        const double m = mass.value();
        out.atoms.push_back(SpectrumAtom{weighted_t.value() / m, m});
        total_mass.add(m);
        i = j;
    }
    if (std::abs(total_mass.value() - 1.0) > 1e-10) {
        throw NumericError("spectrum masses sum to " + std::to_string(total_mass.value()) +
                           ", drifted beyond 1e-10 from 1");
    }
    return out;
}

double spectrum_cumulant(const SourceSpec& src, int n, const RhoParams& params,
                         std::uint64_t guard) {
    const SpectrumDistribution spec = information_spectrum(src, n, guard);
    double shift = -std::numeric_limits<double>::infinity();
    for (const SpectrumAtom& a : spec.atoms) shift = std::max(shift, n * params.beta * a.t);
    detail::CompensatedSum acc;
    for (const SpectrumAtom& a : spec.atoms) {
        acc.add(a.mass * std::exp(n * params.beta * a.t - shift));
    }
    return (shift + std::log(acc.value())) / n;
}

}  // namespace guesswork
