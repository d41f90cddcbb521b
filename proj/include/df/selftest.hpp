#pragma once

// Fast built-in consistency checks run by `dfpi selftest`.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace df {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  std::vector<std::string> warnings;

  bool passed() const;
};

struct SelftestOptions {
  std::optional<std::filesystem::path> cache_dir;
  /// Replaces the embedded pi string (fault injection in tests).
  std::optional<std::string> embedded_pi_override;
  std::uint64_t sandwich_max_n = 60;
  std::uint64_t digit_max_n = 100;
};

SelftestReport run_selftest(const SelftestOptions& options = {});

/// Checks the two-sided bounds
///   2 (2n)! / (2 pi)^2n < |B_2n| < 2 (2n)! / ((2 pi)^2n (1 - 2^(1-2n)))
///   4^(n+1) (2n)! (1 - 3^(-1-2n)) / pi^(2n+1) < |E_2n| < 4^(n+1) (2n)! / pi^(2n+1)
/// for n in [1, max_n], with pi only known to lie within 2 10^-pi_digits of the
/// reference. An inequality that holds for part of that interval and fails
/// for the rest is undecided rather than violated. Entries are "B<2n>" or
/// "E<2n>".
struct SandwichResult {
  std::vector<std::string> violations;
  std::vector<std::string> undecided;
};
SandwichResult check_sandwich_bounds(std::uint64_t max_n, std::uint64_t pi_digits);

}  // namespace df
