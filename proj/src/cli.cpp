#include "guesswork/cli.hpp"

#include <cmath>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "guesswork/coding.hpp"
#include "guesswork/errors.hpp"
#include "guesswork/exponents.hpp"
#include "guesswork/guessing.hpp"
#include "guesswork/json_io.hpp"
#include "guesswork/property_suite.hpp"

namespace guesswork {

namespace {

constexpr char kCrlf[] = "\r\n";

const SourceSpec& require_source(const JobConfig& config) {
    if (!config.source) throw std::invalid_argument("this command needs a source");
    return *config.source;
}

void require_rhos(const JobConfig& config) {
    if (config.rhos.empty()) throw std::invalid_argument("this command needs at least one --rho");
}

int single_n(const JobConfig& config, int fallback) {
    if (config.n_lo == 0) {
        if (fallback == 0) throw std::invalid_argument("this command needs --n");
        return fallback;
    }
    if (config.n_hi != 0 && config.n_hi != config.n_lo) {
        throw std::invalid_argument("this command takes a single n, not a range");
    }
    return config.n_lo;
}

void emit(const JobConfig& config, const std::string& payload, std::ostream& out) {
    if (config.output_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(config.output_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + config.output_path);
    f << payload;
    f.flush();
    if (!f.good()) throw std::invalid_argument("failed writing output file: " + config.output_path);
}

Pmf enumerated_pmf(const SourceSpec& src, int n, std::uint64_t guard) {
    const std::uint64_t count = checked_string_count(src, n, guard);
    std::vector<double> masses;
    masses.reserve(static_cast<std::size_t>(count));
    for_each_string(
        src, n, [&](std::span<const int>, double p) { masses.push_back(p); }, guard);
    return Pmf(std::move(masses));
}

std::string run_exponent(const JobConfig& config) {
    const SourceSpec& src = require_source(config);
    require_rhos(config);
    if (config.grid_resolution < 1) {
        throw std::invalid_argument("grid resolution must be >= 1");
    }

    // One report per rho; for memoryless sources a second report recovers
    // the same exponent through the sampled rate function as a cross-check.
    std::vector<ExponentReport> reports;
    for (double rho : config.rhos) reports.push_back(guessing_exponent(src, rho));
    if (const auto* iid = std::get_if<IidSource>(&src.value())) {
        const RateFunctionGrid grid = cramer_rate_function(iid->p1, config.grid_resolution);
        for (double rho : config.rhos) reports.push_back(exponent_from_rate(grid, rho));
    }

    std::string payload;
    if (config.format == JobConfig::Format::Json) {
        payload = "{\"source\":" + to_json(src) + ",\"reports\":[";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i) payload += ',';
            payload += to_json(reports[i]);
        }
        payload += "]}\n";
    } else {
        payload = std::string("rho,alpha,beta,exponent,method") + kCrlf;
        for (const ExponentReport& r : reports) {
            payload += fmt17(r.rho) + "," + fmt17(r.alpha) + "," + fmt17(r.beta) + "," +
                       fmt17(r.e_rho) + "," + std::string(to_string(r.method)) + kCrlf;
        }
    }
    return payload;
}

std::string run_converge(const JobConfig& config) {
    const SourceSpec& src = require_source(config);
    if (config.rhos.size() != 1) {
        throw std::invalid_argument("convergence tables take exactly one --rho");
    }
    const double rho = config.rhos[0];
    if (config.n_lo < 1) throw std::invalid_argument("convergence tables need --n with n >= 1");
    const int n_lo = config.n_lo;
    const int n_hi = config.n_hi == 0 ? config.n_lo : config.n_hi;
    if (n_hi < n_lo) throw std::invalid_argument("n range must be nondecreasing");

    const double closed = guessing_exponent(src, rho).e_rho;
    struct Row {
        int n;
        double finite, campbell, gap, bound;
    };
    std::vector<Row> rows;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double finite = finite_n_guessing_exponent(src, n, rho, config.guard);
        const double campbell = campbell_exponent_finite(src, n, rho, config.guard);
        const std::uint64_t strings = checked_string_count(src, n, config.guard);
        const double c_n = harmonic_constant(strings);
        const double bound = rho * std::log(2.0) * (2.0 + std::log2(c_n)) / n;
        rows.push_back(Row{n, finite, campbell, std::abs(finite - closed), bound});
    }

    std::string payload;
    if (config.format == JobConfig::Format::Json) {
        payload = "{\"source\":" + to_json(src) + ",\"rho\":" + fmt17(rho) +
                  ",\"limit_exponent\":" + fmt17(closed) + ",\"rows\":[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) payload += ',';
            payload += "{\"n\":" + std::to_string(rows[i].n) +
                       ",\"finite_n_guess_exp\":" + fmt17(rows[i].finite) +
                       ",\"campbell_exp\":" + fmt17(rows[i].campbell) +
                       ",\"closed_form\":" + fmt17(closed) +
                       ",\"abs_gap\":" + fmt17(rows[i].gap) +
                       ",\"sandwich_bound\":" + fmt17(rows[i].bound) + "}";
        }
        payload += "]}\n";
    } else {
        payload = std::string("n,finite_n_guess_exp,campbell_exp,closed_form,abs_gap,sandwich_bound") +
                  kCrlf;
        for (const Row& r : rows) {
            payload += std::to_string(r.n) + "," + fmt17(r.finite) + "," + fmt17(r.campbell) +
                       "," + fmt17(closed) + "," + fmt17(r.gap) + "," + fmt17(r.bound) + kCrlf;
        }
    }
    return payload;
}

std::string run_spectrum(const JobConfig& config, std::ostream& err) {
    const SourceSpec& src = require_source(config);
    const int n = single_n(config, 0);
    const SpectrumDistribution spec = information_spectrum(src, n, config.guard);
    double mass = 0.0;
    for (const SpectrumAtom& a : spec.atoms) mass += a.mass;
    err << "spectrum atoms: " << spec.atoms.size() << ", mass residual: " << fmt17(mass - 1.0)
        << "\n";
    if (config.format == JobConfig::Format::Json) {
        return "{\"source\":" + to_json(src) + ",\"spectrum\":" + to_json(spec) + "}\n";
    }
    std::string payload = std::string("t,mass") + kCrlf;
    for (const SpectrumAtom& a : spec.atoms) {
        payload += fmt17(a.t) + "," + fmt17(a.mass) + kCrlf;
    }
    return payload;
}

std::string run_code(const JobConfig& config) {
    const SourceSpec& src = require_source(config);
    require_rhos(config);
    const int n = single_n(config, 1);
    const Pmf block = enumerated_pmf(src, n, config.guard);

    std::string payload;
    if (config.format == JobConfig::Format::Json) {
        payload = "{\"source\":" + to_json(src) + ",\"n\":" + std::to_string(n) + ",\"reports\":[";
        for (std::size_t i = 0; i < config.rhos.size(); ++i) {
            if (i) payload += ',';
            payload += "{\"rho\":" + fmt17(config.rhos[i]) +
                       ",\"coding\":" + to_json(exponential_huffman(block, config.rhos[i])) + "}";
        }
        payload += "]}\n";
    } else {
        payload = std::string("rho,cost,exponent_bits") + kCrlf;
        for (double rho : config.rhos) {
            const CodingReport r = exponential_huffman(block, rho);
            payload += fmt17(rho) + "," + fmt17(r.cost) + "," + fmt17(r.exponent_bits) + kCrlf;
        }
    }
    return payload;
}

}  // namespace

int run_job(const JobConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.guard == 0 || config.guard > kGuardCeiling) {
            throw std::invalid_argument("guard must lie in [1, 2^28]");
        }
        switch (config.command) {
            case JobConfig::Command::Exponent:
                emit(config, run_exponent(config), out);
                return kExitOk;
            case JobConfig::Command::Converge:
                emit(config, run_converge(config), out);
                return kExitOk;
            case JobConfig::Command::Spectrum:
                emit(config, run_spectrum(config, err), out);
                return kExitOk;
            case JobConfig::Command::Code:
                emit(config, run_code(config), out);
                return kExitOk;
            case JobConfig::Command::Verify: {
                if (config.cases < 1) throw std::invalid_argument("--cases must be >= 1");
                const SuiteResult guessing = run_guessing_property_suite(config.seed, config.cases);
                const SuiteResult coding = run_coding_property_suite(config.seed, config.cases);
                for (const PropertyFailure& f : guessing.failures) {
                    err << "error: property_failure: " << f.property << ": " << f.detail << "\n";
                }
                for (const PropertyFailure& f : coding.failures) {
                    err << "error: property_failure: " << f.property << ": " << f.detail << "\n";
                }
                if (!guessing.ok() || !coding.ok()) return kExitPropertyFailure;
                emit(config,
                     "all " + std::to_string(guessing.checks_run + coding.checks_run) +
                         " property checks passed\n",
                     out);
                return kExitOk;
            }
        }
        throw std::invalid_argument("unknown command");
    } catch (const GuardExceededError& e) {
        err << "error: guard_exceeded: " << e.what() << "\n";
        return kExitGuardExceeded;
    } catch (const NumericError& e) {
        err << "error: numeric_failure: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: config_error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace guesswork
