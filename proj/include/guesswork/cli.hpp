#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "guesswork/sources.hpp"

namespace guesswork {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitGuardExceeded = 2;
inline constexpr int kExitNumericFailure = 3;
inline constexpr int kExitPropertyFailure = 4;

/// One fully-parsed job. Field validity (exactly one command, rho > 0,
/// n >= 1, guard within the hard ceiling) is checked by run_job.
struct JobConfig {
    enum class Command { Exponent, Converge, Spectrum, Code, Verify };
    enum class Format { Json, Csv };

    Command command = Command::Exponent;
    std::optional<SourceSpec> source;
    std::vector<double> rhos;
    int n_lo = 0;  // 0 = not given
    int n_hi = 0;
    std::string output_path;  // empty: write to `out`
    Format format = Format::Json;
    std::uint64_t guard = kDefaultEnumerationGuard;
    int grid_resolution = 512;
    std::uint64_t seed = 0;
    int cases = 100;
};

/// Runs the job, writing the payload to output_path (or `out` when no path
/// is set) and diagnostics to `err`. Returns one of the kExit* codes; every
/// failure emits a single line "error: <reason_code>: <detail>" on `err`.
int run_job(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace guesswork
