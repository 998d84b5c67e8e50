#include "guesswork/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "compensated.hpp"
#include "guesswork/errors.hpp"

namespace guesswork {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Matrix = std::vector<std::vector<double>>;

void require_square_nonnegative(const Matrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("matrix must be nonempty");
    for (const auto& row : m) {
        if (row.size() != n) throw std::invalid_argument("matrix must be square");
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("matrix entries must be finite and nonnegative");
            }
        }
    }
}

bool matrix_strongly_connected(const Matrix& m) {
    const std::size_t n = m.size();
    auto reaches_all = [&](bool forward) {
        std::vector<bool> seen(n, false);
        std::queue<std::size_t> q;
        seen[0] = true;
        q.push(0);
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t v = 0; v < n; ++v) {
                const double edge = forward ? m[u][v] : m[v][u];
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

Matrix transpose(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix t(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[j][i] = m[i][j];
    return t;
}

std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& v) {
    const std::size_t n = m.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        detail::CompensatedSum acc;
        for (std::size_t j = 0; j < n; ++j) acc.add(m[i][j] * v[j]);
        out[i] = acc.value();
    }
    return out;
}

// Power iteration on M + sigma*I. The shift leaves the Perron vector alone
// and adds sigma to every eigenvalue, which turns periodic irreducible
// matrices (pure rotations under plain iteration) into convergent ones.
// Returns the dominant eigenvalue of the *unshifted* M plus its positive
// eigenvector, infinity-normalized.
struct PowerResult {
    double value;
    std::vector<double> vec;
    int iterations;
};

PowerResult power_iterate(const Matrix& m) {
    const std::size_t n = m.size();
    double max_row_sum = 0.0;
    for (const auto& row : m) {
        max_row_sum = std::max(max_row_sum, std::accumulate(row.begin(), row.end(), 0.0));
    }
    const double sigma = 0.5 * max_row_sum;

    std::vector<double> v(n, 1.0);
    const int cap = 100000;
    for (int it = 1; it <= cap; ++it) {
        std::vector<double> shifted = mat_vec(m, v);
        for (std::size_t i = 0; i < n; ++i) shifted[i] += sigma * v[i];
        double norm = 0.0;
        for (double x : shifted) norm = std::max(norm, std::abs(x));
        if (!(norm > 0.0)) throw NumericError("power iteration collapsed to zero");
        for (double& x : shifted) x /= norm;
        v = std::move(shifted);

        // Rayleigh quotient and residual against the original matrix.
        const std::vector<double> w = mat_vec(m, v);
        double num = 0.0, den = 0.0, residual_scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num += v[i] * w[i];
            den += v[i] * v[i];
            residual_scale = std::max(residual_scale, std::abs(v[i]));
        }
        const double lambda = num / den;
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(w[i] - lambda * v[i]));
        }
        if (residual <= 1e-12 * residual_scale) {
            return PowerResult{lambda, std::move(v), it};
        }
    }
    throw NumericError("power iteration did not converge within 100000 steps");
}

double objective_entropy_minus_divergence(const std::vector<double>& q, const Pmf& p, double rho) {
    // rho*H(q) - D(q||p) = -(1+rho)*sum q ln q + sum q ln p, with 0 ln 0 = 0.
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        if (p[i] <= 0.0) return -kInf;
        acc.add(-(1.0 + rho) * q[i] * std::log(q[i]));
        acc.add(q[i] * std::log(p[i]));
    }
    return acc.value();
}

// ln sum_x p(x)^{1-b} = ln E[e^{b*(-ln p(X))}], evaluated with a max shift
// so huge |b| stays representable.
double log_mgf(const std::vector<double>& log_p, double b) {
    double shift = -kInf;
    for (double lp : log_p) shift = std::max(shift, (1.0 - b) * lp);
    detail::CompensatedSum acc;
    for (double lp : log_p) acc.add(std::exp((1.0 - b) * lp - shift));
    return shift + std::log(acc.value());
}

// d/db of (b*t - log_mgf(b)) = t - tilted mean of -ln p under the b-tilt.
double dual_derivative(const std::vector<double>& log_p, double b, double t) {
    double shift = -kInf;
    for (double lp : log_p) shift = std::max(shift, (1.0 - b) * lp);
    detail::CompensatedSum mass, moment;
    for (double lp : log_p) {
        const double w = std::exp((1.0 - b) * lp - shift);
        mass.add(w);
        moment.add(w * (-lp));
    }
    return t - moment.value() / mass.value();
}

double rate_at(const std::vector<double>& log_p, double t) {
    const auto g = [&](double b) { return b * t - log_mgf(log_p, b); };

    // Grow the search window until the concave objective's derivative says
    // the maximizer is inside, capped at +-4096 (far beyond any tilt the
    // sampled t range can demand).
    double lo = -50.0, hi = 50.0;
    while (lo > -4096.0 && dual_derivative(log_p, lo, t) < 0.0) lo = std::max(lo * 2.0, -4096.0);
    while (hi < 4096.0 && dual_derivative(log_p, hi, t) > 0.0) hi = std::min(hi * 2.0, 4096.0);

    constexpr double kGolden = 0.6180339887498949;
    double a = lo, d = hi;
    double b = d - kGolden * (d - a);
    double c = a + kGolden * (d - a);
    double gb = g(b), gc = g(c);
    for (int it = 0; it < 300 && d - a > 1e-11 * std::max({1.0, std::abs(a), std::abs(d)}); ++it) {
        if (gb >= gc) {
            d = c;
            c = b;
            gc = gb;
            b = d - kGolden * (d - a);
            gb = g(b);
        } else {
            a = b;
            b = c;
            gb = gc;
            c = a + kGolden * (d - a);
            gc = g(c);
        }
    }
    return std::max(0.0, g(0.5 * (a + d)));
}

}  // namespace

std::string_view to_string(ExponentMethod m) {
    switch (m) {
        case ExponentMethod::ClosedFormIid: return "closed_form_iid";
        case ExponentMethod::PerronFrobenius: return "perron_frobenius";
        case ExponentMethod::TransferMatrixUnifilar: return "transfer_matrix_unifilar";
        case ExponentMethod::MixtureMax: return "mixture_max";
        case ExponentMethod::Variational: return "variational";
        case ExponentMethod::LegendreDual: return "legendre_dual";
        case ExponentMethod::FiniteN: return "finite_n";
    }
    return "unknown";
}

PerronFrobenius perron_frobenius(const Matrix& m) {
    require_square_nonnegative(m);
    if (m.size() == 1) {
        if (m[0][0] <= 0.0) throw std::invalid_argument("1x1 matrix must have a positive entry");
        return PerronFrobenius{m[0][0], {1.0}, {1.0}, 0};
    }
    if (!matrix_strongly_connected(m)) {
        throw std::invalid_argument("matrix is reducible; the dominant eigenvalue may be defective");
    }
    PowerResult right = power_iterate(m);
    PowerResult left = power_iterate(transpose(m));
    return PerronFrobenius{right.value, std::move(right.vec), std::move(left.vec),
                           right.iterations + left.iterations};
}

ExponentReport guessing_exponent(const SourceSpec& src, double rho) {
    const RhoParams params(rho);
    const double alpha = params.alpha;
    return std::visit(
        [&](const auto& s) -> ExponentReport {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, IidSource>) {
                const double e = rho * renyi_entropy(s.p1, alpha);
                return ExponentReport{rho, alpha, params.beta, e, ExponentMethod::ClosedFormIid};
            } else if constexpr (std::is_same_v<S, MarkovSource>) {
                const std::size_t k = s.rows.size();
                Matrix a(k, std::vector<double>(k, 0.0));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        if (s.rows[i][j] > 0.0) a[i][j] = std::pow(s.rows[i][j], alpha);
                const double lambda = perron_frobenius(a).value;
                return ExponentReport{rho, alpha, params.beta, (1.0 + rho) * std::log(lambda),
                                      ExponentMethod::PerronFrobenius};
            } else if constexpr (std::is_same_v<S, UnifilarSource>) {
                const std::size_t k = s.emission.size();
                const std::size_t msz = s.emission[0].size();
                Matrix a(k, std::vector<double>(k, 0.0));
                for (std::size_t st = 0; st < k; ++st)
                    for (std::size_t x = 0; x < msz; ++x)
                        if (s.emission[st][x] > 0.0)
                            a[st][s.next_state[st][x]] += std::pow(s.emission[st][x], alpha);
                const double lambda = perron_frobenius(a).value;
                return ExponentReport{rho, alpha, params.beta, (1.0 + rho) * std::log(lambda),
                                      ExponentMethod::TransferMatrixUnifilar};
            } else {
                // A mixture's string exponents are dominated by whichever
                // component decays slower, so the limit is the larger of the
                // component exponents.
                const double e = rho * std::max(renyi_entropy(s.first, alpha),
                                                renyi_entropy(s.second, alpha));
                return ExponentReport{rho, alpha, params.beta, e, ExponentMethod::MixtureMax};
            }
        },
        src.value());
}

RateFunctionGrid cramer_rate_function(const Pmf& p1, int resolution) {
    if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
    std::vector<double> log_p;
    log_p.reserve(p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (p1[i] > 0.0) log_p.push_back(std::log(p1[i]));
    }
    const auto [lo_it, hi_it] = std::minmax_element(log_p.begin(), log_p.end());
    const double t_min = -*hi_it;
    const double t_max = -*lo_it;

    RateFunctionGrid grid;
    grid.label = "cramer_rate";
    if (t_max - t_min <= 1e-12 * std::max(1.0, std::abs(t_max)) || resolution == 1) {
        grid.t = {t_min};
        grid.rate = {0.0};
        grid.infinite = {false};
        grid.resolution = 1;
        return grid;
    }
    grid.resolution = resolution;
    grid.t.resize(resolution);
    grid.rate.resize(resolution);
    grid.infinite.assign(resolution, false);
    for (int i = 0; i < resolution; ++i) {
        const double frac = static_cast<double>(i) / (resolution - 1);
        grid.t[i] = t_min + frac * (t_max - t_min);
        grid.rate[i] = rate_at(log_p, grid.t[i]);
    }
    return grid;
}

double legendre_transform(const RateFunctionGrid& grid, double beta) {
    if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
    double best = -kInf;
    for (std::size_t i = 0; i < grid.t.size(); ++i) {
        if (grid.infinite[i]) continue;
        best = std::max(best, beta * grid.t[i] - grid.rate[i]);
    }
    if (best == -kInf) throw NumericError("rate grid has no finite points");
    return best;
}

ExponentReport exponent_from_rate(const RateFunctionGrid& grid, double rho) {
    const RhoParams params(rho);
    const double e = std::max(0.0, (1.0 + rho) * legendre_transform(grid, params.beta));
    return ExponentReport{rho, params.alpha, params.beta, e, ExponentMethod::LegendreDual};
}

VariationalReport variational_exponent(const Pmf& p1, double rho) {
    const RhoParams params(rho);
    Pmf maximizer = tilt(p1, params.alpha);
    const double value = objective_entropy_minus_divergence(maximizer.masses(), p1, rho);
    return VariationalReport{value, std::move(maximizer)};
}

VariationalReport variational_simplex_search(const Pmf& p1, double rho, double step) {
    [[maybe_unused]] const RhoParams validated(rho);
    const std::size_t m = p1.size();
    if (m != 2 && m != 3) {
        throw std::invalid_argument("simplex search is limited to 2- or 3-symbol alphabets");
    }
    if (!(step > 0.0) || step > 0.5) throw std::invalid_argument("step must lie in (0, 0.5]");
    const int k_max = static_cast<int>(std::lround(1.0 / step));

    // q ln q at grid multiples k/K, shared across all grid points.
    std::vector<double> q_ln_q(k_max + 1, 0.0);
    const double ln_k_max = std::log(static_cast<double>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        const double q = static_cast<double>(k) / k_max;
        q_ln_q[k] = q * (std::log(static_cast<double>(k)) - ln_k_max);
    }
    std::vector<double> ln_p(m, -kInf);
    for (std::size_t i = 0; i < m; ++i) {
        if (p1[i] > 0.0) ln_p[i] = std::log(p1[i]);
    }

    double best = -kInf;
    std::vector<int> best_k;
    auto consider = [&](const std::vector<int>& ks) {
        double val = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (ks[i] == 0) continue;
            if (ln_p[i] == -kInf) return;  // q outside the support of p
            const double q = static_cast<double>(ks[i]) / k_max;
            val += -(1.0 + rho) * q_ln_q[ks[i]] + q * ln_p[i];
        }
        if (val > best) {
            best = val;
            best_k = ks;
        }
    };

    if (m == 2) {
        for (int k = 0; k <= k_max; ++k) consider({k, k_max - k});
    } else {
        for (int i = 0; i <= k_max; ++i)
            for (int j = 0; j <= k_max - i; ++j) consider({i, j, k_max - i - j});
    }
    if (best == -kInf) throw NumericError("no grid point lies inside the support of p");

    std::vector<double> q(m);
    for (std::size_t i = 0; i < m; ++i) q[i] = static_cast<double>(best_k[i]) / k_max;
    return VariationalReport{best, Pmf(std::move(q))};
}

double finite_n_guessing_exponent(const SourceSpec& src, int n, double rho, std::uint64_t guard) {
    [[maybe_unused]] const RhoParams validated(rho);
    const std::uint64_t count = checked_string_count(src, n, guard);
    std::vector<double> masses;
    masses.reserve(static_cast<std::size_t>(count));
    for_each_string(
        src, n, [&](std::span<const int>, double p) { masses.push_back(p); }, guard);
    std::sort(masses.begin(), masses.end(), std::greater<>());

    detail::CompensatedSum moment;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        if (masses[i] <= 0.0) break;  // sorted: everything after is zero too
        const double rank = static_cast<double>(i + 1);
        moment.add(masses[i] * std::pow(rank, rho));
    }
    return std::log(moment.value()) / n;
}

ExponentReport finite_n_exponent_report(const SourceSpec& src, int n, double rho,
                                        std::uint64_t guard) {
    const RhoParams params(rho);
    return ExponentReport{rho, params.alpha, params.beta,
                          finite_n_guessing_exponent(src, n, rho, guard), ExponentMethod::FiniteN};
}

double finite_n_renyi_rate(const SourceSpec& src, int n, double alpha, std::uint64_t guard) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw std::invalid_argument("alpha must be finite and positive");
    }
    checked_string_count(src, n, guard);
    if (alpha == 1.0) {
        detail::CompensatedSum h;
        for_each_string(
            src, n,
            [&](std::span<const int>, double p) {
                if (p > 0.0) h.add(-p * std::log(p));
            },
            guard);
        return h.value() / n;
    }
    detail::CompensatedSum acc;
    for_each_string(
        src, n,
        [&](std::span<const int>, double p) {
            if (p > 0.0) acc.add(std::pow(p, alpha));
        },
        guard);
    return std::log(acc.value()) / (1.0 - alpha) / n;
}

}  // namespace guesswork
