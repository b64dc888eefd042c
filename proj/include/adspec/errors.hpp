#pragma once

#include <stdexcept>
#include <string>

namespace adspec {

/// Malformed input file (DIMACS, config). Carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Invalid run configuration. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (solver non-convergence, scan diagnostics). Maps to CLI exit code 2.
class ComputeError : public std::runtime_error {
public:
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

/// Rejection sampling exhausted its try budget.
class GenerationError : public std::runtime_error {
public:
  GenerationError(const std::string& what, long long tries)
      : std::runtime_error(what), tries_(tries) {}
  long long tries() const { return tries_; }

private:
  long long tries_;
};

} // namespace adspec
