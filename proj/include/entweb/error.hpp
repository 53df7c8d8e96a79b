#pragma once

#include <stdexcept>
#include <string>

namespace entweb {

/// Malformed input: bad shapes, out-of-range indices, unreadable files.
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string &what) : std::invalid_argument(what) {}
};

/// Input that is well-formed but numerically invalid (non-PSD, complex
/// spectrum where a real one is required, infeasible region point).
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace entweb
