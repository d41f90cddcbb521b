#pragma once

// The dfpi command line, as a library so tests can drive it in-process.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace df::cli {

inline constexpr const char* kSchema = "df-report/1";

/// One line of output: a digit, an approximation, a special number, a cache
/// file or a selftest check. Unused fields stay empty and are not emitted.
struct Record {
  std::string kind;
  std::optional<std::string> target;
  std::optional<std::string> method;
  std::optional<std::string> variant;
  std::optional<std::int64_t> index;
  std::optional<std::int64_t> terms;
  std::optional<std::int64_t> apriori_exponent;
  std::optional<std::int64_t> measured_exponent;
  std::optional<bool> below_certification_floor;
  std::optional<std::int64_t> position;
  std::optional<std::int64_t> base;
  std::optional<std::string> digit;
  std::optional<bool> stable;
  std::optional<std::string> value;
  std::optional<std::int64_t> precision_bits;
  std::optional<std::string> name;
  std::optional<bool> passed;
  std::optional<std::string> detail;

  friend bool operator==(const Record&, const Record&) = default;
};

struct Fit {
  std::string x_axis;  // "index", "2n+1", "log10(n)"
  double slope = 0;
  double intercept = 0;
  std::int64_t points = 0;

  friend bool operator==(const Fit&, const Fit&) = default;
};

struct ErrorInfo {
  std::string kind;
  std::string message;
  std::int64_t exit_code = 0;
  std::optional<std::string> fractional_part;

  friend bool operator==(const ErrorInfo&, const ErrorInfo&) = default;
};

struct Report {
  std::string schema = kSchema;
  std::string command;
  std::vector<std::string> arguments;
  std::vector<Record> records;
  std::optional<Fit> fit;
  std::vector<std::string> warnings;
  std::optional<ErrorInfo> error;
  std::optional<double> elapsed_seconds;

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::ordered_json to_json(const Report& report);
/// Throws std::runtime_error on schema violations.
Report report_from_json(const nlohmann::json& j);

struct Outcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one invocation; args exclude the program name.
Outcome run_cli(const std::vector<std::string>& args);

}  // namespace df::cli
