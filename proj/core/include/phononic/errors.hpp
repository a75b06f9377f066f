// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_ERRORS_HPP
#define PHONONIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phononic {

// Invalid or inconsistent user configuration. The message names the
// offending field. Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (factorization breakdown, eigensolver non-convergence,
// unresolved interface). Maps to exit code 3 in the CLI.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace phononic

#endif  // PHONONIC_ERRORS_HPP
