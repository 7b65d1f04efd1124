#pragma once

#include <stdexcept>
#include <string>

namespace macrocast {

// Error taxonomy, mapped to process exit codes by the CLI:
//   ConfigError -> 2, DataError -> 3, NumericError -> 4.
// StructuralError marks API misuse (stale caches, shape mismatches); the CLI
// treats it like a numerical failure rather than crashing.

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

class StructuralError : public std::runtime_error {
public:
  explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace macrocast
