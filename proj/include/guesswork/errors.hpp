#pragma once

#include <stdexcept>
#include <string>

namespace guesswork {

/// Thrown when an enumeration would visit more strings than the guard
/// allows. The message names the guard value so callers can raise it.
class GuardExceededError : public std::runtime_error {
public:
    explicit GuardExceededError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an iterative numeric routine fails to converge
/// (e.g. the power iteration hits its iteration cap).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace guesswork
