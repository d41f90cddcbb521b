#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace df {

/// Argument outside an operation's mathematical domain (x <= 0 for ln, odd
/// Bernoulli index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Result exponent outside the representable range.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Not enough precision (or a-priori accuracy) to certify the requested
/// output.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The approximation sits too close to a digit boundary to decide a digit.
class BoundaryHazard : public std::runtime_error {
 public:
  BoundaryHazard(const std::string& what, std::string fractional_part)
      : std::runtime_error(what), fractional_part_(std::move(fractional_part)) {}
  const std::string& fractional_part() const noexcept { return fractional_part_; }

 private:
  std::string fractional_part_;
};

/// Malformed or corrupted cache file.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::optional<std::int64_t> record_index = std::nullopt)
      : std::runtime_error(what), record_index_(record_index) {}
  std::optional<std::int64_t> record_index() const noexcept { return record_index_; }

 private:
  std::optional<std::int64_t> record_index_;
};

class KindMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Request exceeds an explicit resource cap.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two computations that must agree did not; always a bug.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace df
