#pragma once

#include <stdexcept>
#include <string>

namespace bcsim {

// Invalid configuration or input data (bad file, failed validation, missing
// table row). Maps to process exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Internal model inconsistency detected at run time, e.g. per-state event
// probabilities summing above 1. Maps to exit code 3.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure while reading inputs or writing reports. Exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kConfig = 2;
inline constexpr int kModel = 3;
inline constexpr int kIo = 4;
}  // namespace exit_code

}  // namespace bcsim
