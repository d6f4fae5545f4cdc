#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmeta {

/// Input violates a documented precondition (empty graph, single class, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Non-finite value produced by an iterative solver.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, long iteration)
        : std::runtime_error(what + " at iteration " + std::to_string(iteration)),
          iteration_(iteration) {}

    long iteration() const noexcept { return iteration_; }

private:
    long iteration_;
};

} // namespace gmeta
