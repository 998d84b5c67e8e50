#include <cstdint>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "guesswork/cli.hpp"
#include "guesswork/json_io.hpp"
#include "guesswork/pmf.hpp"
#include "guesswork/sources.hpp"

namespace {

using guesswork::JobConfig;

struct RawOptions {
    std::string source_path;
    int uniform_m = 0;
    std::vector<double> rhos;
    std::string n_spec;
    std::string out_path;
    std::string format = "json";
    std::uint64_t guard = guesswork::kDefaultEnumerationGuard;
    int grid = 512;
    std::uint64_t seed = 0;
    int cases = 100;
};

void add_source_options(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--source", raw.source_path, "Path to a source spec JSON file");
    cmd->add_option("--uniform", raw.uniform_m, "Uniform iid source over this many symbols")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--guard", raw.guard,
                    "Cap on |X|^n for full enumerations (hard ceiling 2^28)")
        ->envname("GUESSWORK_GUARD");
}

void add_output_options(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--out", raw.out_path, "Write the payload to this file instead of stdout");
    cmd->add_option("--format", raw.format, "Payload format")
        ->check(CLI::IsMember({"json", "csv"}));
}

// "--n 8" or "--n 2..12".
void parse_n(const std::string& text, JobConfig& config) {
    if (text.empty()) return;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            config.n_lo = config.n_hi = std::stoi(text);
        } else {
            config.n_lo = std::stoi(text.substr(0, dots));
            config.n_hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse n value: " + text);
    }
    if (config.n_lo < 1 || config.n_hi < config.n_lo) {
        throw std::invalid_argument("n range must satisfy 1 <= lo <= hi, got " + text);
    }
}

guesswork::SourceSpec resolve_source(const RawOptions& raw) {
    if (!raw.source_path.empty() && raw.uniform_m > 0) {
        throw std::invalid_argument("--source and --uniform are mutually exclusive");
    }
    if (!raw.source_path.empty()) return guesswork::load_source_spec(raw.source_path);
    const std::vector<double> w(static_cast<std::size_t>(raw.uniform_m), 1.0);
    return guesswork::SourceSpec::iid(guesswork::make_pmf(w));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Optimal guessing strategies, exponential-cost source codes, and guessing\n"
        "exponents for finite-alphabet sources."};
    app.require_subcommand(1);
    RawOptions raw;

    CLI::App* exponent = app.add_subcommand(
        "exponent", "Limiting guessing exponent E(rho), with a rate-function cross-check for iid");
    add_source_options(exponent, raw);
    add_output_options(exponent, raw);
    exponent->add_option("--rho", raw.rhos, "Moment order rho > 0 (repeatable)")->required();
    exponent->add_option("--grid", raw.grid, "Rate-function grid resolution")
        ->check(CLI::PositiveNumber);

    CLI::App* converge = app.add_subcommand(
        "converge", "Finite-n guessing and coding exponents against the limit, one row per n");
    add_source_options(converge, raw);
    add_output_options(converge, raw);
    converge->add_option("--rho", raw.rhos, "Moment order rho > 0 (exactly one)")->required();
    converge->add_option("--n", raw.n_spec, "Block length or range, e.g. 8 or 2..12")->required();

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Distribution of -(1/n) ln P_n over length-n strings");
    add_source_options(spectrum, raw);
    add_output_options(spectrum, raw);
    spectrum->add_option("--n", raw.n_spec, "Block length")->required();

    CLI::App* code = app.add_subcommand(
        "code", "Minimum-cost code for the n-fold distribution under E[2^{rho L}]");
    add_source_options(code, raw);
    add_output_options(code, raw);
    code->add_option("--rho", raw.rhos, "Moment order rho > 0 (repeatable)")->required();
    code->add_option("--n", raw.n_spec, "Block length (default 1)");

    CLI::App* verify =
        app.add_subcommand("verify", "Randomized property checks of the guessing/coding core");
    verify->add_option("--seed", raw.seed, "RNG seed");
    verify->add_option("--cases", raw.cases, "Random cases per suite")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code_ = app.exit(e);
        return code_ == 0 ? guesswork::kExitOk : guesswork::kExitConfigError;
    }

    JobConfig config;
    try {
        if (exponent->parsed()) config.command = JobConfig::Command::Exponent;
        if (converge->parsed()) config.command = JobConfig::Command::Converge;
        if (spectrum->parsed()) config.command = JobConfig::Command::Spectrum;
        if (code->parsed()) config.command = JobConfig::Command::Code;
        if (verify->parsed()) config.command = JobConfig::Command::Verify;

        if (!verify->parsed()) {
            if (raw.source_path.empty() && raw.uniform_m == 0) {
                throw std::invalid_argument("give a source with --source <file> or --uniform <m>");
            }
            config.source = resolve_source(raw);
        }
        config.rhos = raw.rhos;
        parse_n(raw.n_spec, config);
        config.output_path = raw.out_path;
        config.format =
            raw.format == "csv" ? JobConfig::Format::Csv : JobConfig::Format::Json;
        config.guard = raw.guard;
        config.grid_resolution = raw.grid;
        config.seed = raw.seed;
        config.cases = raw.cases;
    } catch (const std::exception& e) {
        std::cerr << "error: config_error: " << e.what() << "\n";
        return guesswork::kExitConfigError;
    }

    return guesswork::run_job(config, std::cout, std::cerr);
}
