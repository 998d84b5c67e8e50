#pragma once

#include <string>

#include "guesswork/coding.hpp"
#include "guesswork/exponents.hpp"
#include "guesswork/guessing.hpp"
#include "guesswork/sources.hpp"

namespace guesswork {

/// Locale-free decimal rendering with 17 significant digits: enough to
/// round-trip any double exactly, and byte-stable across runs.
std::string fmt17(double v);

// Source-spec JSON schema (see README for field tables):
//   {"variant":"iid","p1":[...]}
//   {"variant":"markov","transition":[[...],...],"initial":[...]}
//   {"variant":"unifilar","emission":[[...],...],"next_state":[[...],...],
//    "initial_state":k}
//   {"variant":"mixture","weight":w,"components":[<iid>,<iid>]}
std::string to_json(const SourceSpec& src);
SourceSpec source_from_json_text(const std::string& text);
SourceSpec load_source_spec(const std::string& path);

std::string to_json(const ExponentReport& r);
std::string to_json(const CodingReport& r);
std::string to_json(const InequalityCheck& c);
std::string to_json(const SandwichReport& r);
std::string to_json(const InclusionReport& r);
std::string to_json(const SpectrumDistribution& s);

}  // namespace guesswork
