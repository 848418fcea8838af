#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ladder {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: geometry, ladder, parameters, config files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// API misuse, e.g. mixing grid functions that live on different grids.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis required by a solver does not hold (contraction bound,
/// coercivity gate). Carries the violated inequality in its message.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: CG stagnation, line-search underflow, quadrature
/// non-convergence. Optionally carries the last iterate.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what,
                        std::optional<std::vector<double>> last_iterate = std::nullopt)
      : Error(what), last_iterate_(std::move(last_iterate)) {}

  const std::optional<std::vector<double>>& last_iterate() const noexcept {
    return last_iterate_;
  }

 private:
  std::optional<std::vector<double>> last_iterate_;
};

}  // namespace ladder
