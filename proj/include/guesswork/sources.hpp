#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "guesswork/errors.hpp"
#include "guesswork/pmf.hpp"

namespace guesswork {

// Default cap on |X|^n for any full enumeration, and the hard ceiling any
// override must respect.
inline constexpr std::uint64_t kDefaultEnumerationGuard = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kGuardCeiling = std::uint64_t{1} << 28;

struct IidSource {
    Pmf p1;
};

// Row-stochastic transition matrix (rows[a] = next-symbol pmf given a) plus
// an initial pmf; the first symbol's probability is part of P_n. The
// positive-entry digraph must be strongly connected.
struct MarkovSource {
    std::vector<Pmf> rows;
    Pmf initial;
};

// Finite-state source: emission[s] is the symbol pmf in state s, and
// next_state[s][x] the deterministic successor, one-to-one in x for fixed s.
struct UnifilarSource {
    std::vector<Pmf> emission;
    std::vector<std::vector<int>> next_state;
    int initial_state;
};

// Two-component blend lambda*first + (1-lambda)*second of product measures,
// weight strictly inside (0,1).
struct MixtureSource {
    double weight;
    Pmf first;
    Pmf second;
};

/// Tagged description of a finite-alphabet source. Build through the static
/// factories; each validates its variant's structural invariants.
class SourceSpec {
public:
    using Variant = std::variant<IidSource, MarkovSource, UnifilarSource, MixtureSource>;

    static SourceSpec iid(Pmf p1);
    static SourceSpec markov(std::vector<Pmf> rows, Pmf initial);
    static SourceSpec unifilar(std::vector<Pmf> emission, std::vector<std::vector<int>> next_state,
                               int initial_state);
    static SourceSpec mixture(double weight, Pmf first, Pmf second);

    int alphabet_size() const { return alphabet_size_; }
    const Variant& value() const { return v_; }

private:
    SourceSpec(Variant v, int alphabet_size) : v_(std::move(v)), alphabet_size_(alphabet_size) {}

    Variant v_;
    int alphabet_size_;
};

/// Exact P_n of one string. Products switch to log-domain accumulation past
/// 30 factors so arbitrarily long strings cannot underflow.
double sequence_probability(const SourceSpec& src, std::span<const int> xn);

/// Number of length-n strings, or throws GuardExceededError past `guard`.
std::uint64_t checked_string_count(const SourceSpec& src, int n, std::uint64_t guard);

namespace detail {

// Incremental prefix evaluators: current() is P(prefix), push/pop extend or
// retract one symbol. Guarded enumerations have at most 28 factors for any
// alphabet of two or more symbols, so plain products cannot underflow here.
class IidWalker {
public:
    explicit IidWalker(const IidSource& s, int n) : p_(&s.p1) { stack_.reserve(n + 1); stack_.push_back(1.0); }
    double current() const { return stack_.back(); }
    void push(int x) { stack_.push_back(stack_.back() * (*p_)[x]); }
    void pop() { stack_.pop_back(); }

private:
    const Pmf* p_;
    std::vector<double> stack_;
};

class MarkovWalker {
public:
    explicit MarkovWalker(const MarkovSource& s, int n) : s_(&s) {
        stack_.reserve(n + 1);
        prev_.reserve(n + 1);
        stack_.push_back(1.0);
        prev_.push_back(-1);
    }
    double current() const { return stack_.back(); }
    void push(int x) {
        const int a = prev_.back();
        const double f = a < 0 ? s_->initial[x] : s_->rows[a][x];
        stack_.push_back(stack_.back() * f);
        prev_.push_back(x);
    }
    void pop() { stack_.pop_back(); prev_.pop_back(); }

private:
    const MarkovSource* s_;
    std::vector<double> stack_;
    std::vector<int> prev_;
};

class UnifilarWalker {
public:
    explicit UnifilarWalker(const UnifilarSource& s, int n) : s_(&s) {
        stack_.reserve(n + 1);
        state_.reserve(n + 1);
        stack_.push_back(1.0);
        state_.push_back(s.initial_state);
    }
    double current() const { return stack_.back(); }
    void push(int x) {
        const int st = state_.back();
        stack_.push_back(stack_.back() * s_->emission[st][x]);
        state_.push_back(s_->next_state[st][x]);
    }
    void pop() { stack_.pop_back(); state_.pop_back(); }

private:
    const UnifilarSource* s_;
    std::vector<double> stack_;
    std::vector<int> state_;
};

class MixtureWalker {
public:
    explicit MixtureWalker(const MixtureSource& s, int n) : s_(&s) {
        a_.reserve(n + 1);
        b_.reserve(n + 1);
        a_.push_back(1.0);
        b_.push_back(1.0);
    }
    double current() const { return s_->weight * a_.back() + (1.0 - s_->weight) * b_.back(); }
    void push(int x) {
        a_.push_back(a_.back() * s_->first[x]);
        b_.push_back(b_.back() * s_->second[x]);
    }
    void pop() { a_.pop_back(); b_.pop_back(); }

private:
    const MixtureSource* s_;
    std::vector<double> a_;
    std::vector<double> b_;
};

template <class Walker, class Fn>
void walk_strings(Walker& w, int m, std::vector<int>& xs, int depth, Fn& fn) {
    const int n = static_cast<int>(xs.size());
    if (depth == n) {
        fn(std::span<const int>(xs), w.current());
        return;
    }
    for (int x = 0; x < m; ++x) {
        xs[depth] = x;
        w.push(x);
        walk_strings(w, m, xs, depth + 1, fn);
        w.pop();
    }
}

}  // namespace detail

/// Streams every length-n string in lexicographic order as
/// fn(span<const int>, P_n). Constant memory beyond the n-deep prefix
/// stacks; callers holding disjoint prefixes may run concurrently since
/// nothing here mutates the source.
template <class Fn>
void for_each_string(const SourceSpec& src, int n, Fn&& fn,
                     std::uint64_t guard = kDefaultEnumerationGuard) {
    checked_string_count(src, n, guard);
    std::vector<int> xs(static_cast<std::size_t>(n));
    const int m = src.alphabet_size();
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, IidSource>) {
                detail::IidWalker w(s, n);
                detail::walk_strings(w, m, xs, 0, fn);
            } else if constexpr (std::is_same_v<S, MarkovSource>) {
                detail::MarkovWalker w(s, n);
                detail::walk_strings(w, m, xs, 0, fn);
            } else if constexpr (std::is_same_v<S, UnifilarSource>) {
                detail::UnifilarWalker w(s, n);
                detail::walk_strings(w, m, xs, 0, fn);
            } else {
                detail::MixtureWalker w(s, n);
                detail::walk_strings(w, m, xs, 0, fn);
            }
        },
        src.value());
}

struct SpectrumAtom {
    double t;     // -(1/n) ln P_n at the atom
    double mass;  // total P_n-probability carried by the atom
};

/// Distribution of -(1/n) ln P_n(X^n) over the n-fold source. Atoms sorted
/// by strictly increasing t; zero-probability strings carry no mass and are
/// skipped. Masses sum to 1 within 1e-10.
struct SpectrumDistribution {
    int n;
    std::vector<SpectrumAtom> atoms;
};

SpectrumDistribution information_spectrum(const SourceSpec& src, int n,
                                          std::uint64_t guard = kDefaultEnumerationGuard);

/// Scaled cumulant (1/n) ln Σ_atoms exp(n·β·t)·mass of the spectrum. Equals
/// (β/n)·H_α(P_n) up to float roundoff; the test suites pin that identity.
double spectrum_cumulant(const SourceSpec& src, int n, const RhoParams& params,
                         std::uint64_t guard = kDefaultEnumerationGuard);

}  // namespace guesswork
