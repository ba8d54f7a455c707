#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ebvariant {

// Invalid counts, probabilities or design parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Hyperparameters cannot be estimated from the data at hand.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The design is valid but the requested procedure does not support it
// (for example moment estimation with one haploid per pool).
class UnsupportedDesign : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ebvariant
