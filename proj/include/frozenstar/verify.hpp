#pragma once

#include <string>
#include <vector>

#include "frozenstar/io.hpp"

// Property checks run by `frozenstar_cli verify` against one configuration.
namespace frozenstar {

enum class PropertyStatus { Pass, Fail, Skip };
std::string_view to_string(PropertyStatus s) noexcept;

struct PropertyResult {
  std::string name;
  PropertyStatus status = PropertyStatus::Skip;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Scales every numeric tolerance; 1 keeps the documented defaults.
  double tolerance_scale = 1.0;
  Execution exec = Execution::Parallel;
  // Mesh step for the finite-difference consistency check; 0 picks one
  // giving about 48 cells on the shortest edge.
  double oracle_h = 0.0;
};

struct VerifySummary {
  std::vector<PropertyResult> results;
  std::size_t count(PropertyStatus s) const;
  bool passed() const { return count(PropertyStatus::Fail) == 0; }
};

// If the geometry itself is invalid, that property fails and all others are
// reported as skipped. Properties that only hold with every length equal to
// pi are skipped in Verbatim mode.
VerifySummary verify(const io::RawConfig& raw, const VerifyOptions& options = {});

io::json summary_to_json(const VerifySummary& s);

}  // namespace frozenstar
