#pragma once

#include <stdexcept>
#include <string>

namespace cnd {

// Capacity / sieve-range exhaustion. Never silently truncate.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A requested tolerance could not be met.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Checkpoint or report file failed an integrity check.
class CorruptionError : public std::runtime_error {
 public:
  explicit CorruptionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cnd
