#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace pixcode {

enum class ErrorKind {
  kDimension,
  kInvalidInput,
  kCapacity,
  kExhaustedSearch,
  kIo,
};

/// Base class for every error raised by the library. The kind drives the
/// CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorKind::kDimension, what) {}
};

class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what)
      : Error(ErrorKind::kInvalidInput, what) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what)
      : Error(ErrorKind::kCapacity, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

/// Thrown by the threshold sweep when the threshold passes -1 without the
/// target clique size being reached. Carries the best census seen.
class ExhaustedSearchError : public Error {
 public:
  ExhaustedSearchError(const std::string& what, double best_threshold,
                       std::map<std::size_t, std::uint64_t> best_census)
      : Error(ErrorKind::kExhaustedSearch, what),
        best_threshold_(best_threshold),
        best_census_(std::move(best_census)) {}

  double best_threshold() const noexcept { return best_threshold_; }
  const std::map<std::size_t, std::uint64_t>& best_census() const noexcept {
    return best_census_;
  }

 private:
  double best_threshold_;
  std::map<std::size_t, std::uint64_t> best_census_;
};

}  // namespace pixcode
