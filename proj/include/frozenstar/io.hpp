#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "frozenstar/characteristic.hpp"
#include "frozenstar/fd_oracle.hpp"
#include "frozenstar/recovery.hpp"

namespace frozenstar::io {

using json = nlohmann::json;

// Parsed but not yet validated graph + potential descriptor:
//   {"m": 3,
//    "edges": [{"length": 1.0,
//               "potential": {"type": "coeffs", "values": [[re, im], ...]}}, ...],
//    "angles": [...],                      // optional for topology recovery
//    "mode": "verbatim" | "normalized",    // optional
//    "N": 8, "pole_window": 1e-6}          // optional
// A sampled potential is {"type": "samples", "grid": M, "values": [...]} with
// M + 1 entries, each a number or [re, im].
struct RawConfig {
  std::size_t m = 0;
  std::vector<double> lengths;
  std::optional<std::vector<double>> angles;
  PotentialCoeffs potentials;
  Mode mode = Mode::Verbatim;
  double pole_window = ModelConfig::kDefaultPoleWindow;
  std::vector<std::string> warnings;

  StarGraphSpec graph() const;  // validates; throws InvalidGeometry
  ModelConfig model() const;    // graph() + chords
};

/// `order_override` > 0 replaces the descriptor's N (coefficients are padded or truncated).
RawConfig parse_config(const json& doc, std::size_t order_override = 0);
RawConfig load_config(const std::string& path, std::size_t order_override = 0);
json config_to_json(const RawConfig& cfg);

/// Built-in configuration used by `verify` when no --config is given.
json default_config();

// Grid syntax: integers:A:B | resonant:J:K1:K2 | zeroset:J:LO:HI |
// uniform:LO:HI:COUNT | custom:z1;z2;... (real points). J is 1-based.
SampleGridSpec parse_grid(const std::string& text);

/// Shortest round-trip-exact form, 17 significant digits.
std::string format_number(double value);

void write_samples_csv(std::ostream& out, const PhiSampleSet& set);
json samples_to_json(const PhiSampleSet& set);
PhiSampleSet samples_from_json(const json& doc);
PhiSampleSet load_samples(const std::string& path);

json report_to_json(const TopologyReport& r);
json report_to_json(const PotentialReport& r);
json spectrum_to_json(const OracleSpectrum& s);
void write_spectrum_csv(std::ostream& out, const OracleSpectrum& s);
void write_zero_table_csv(std::ostream& out, const std::vector<ZeroComparison>& rows);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace frozenstar::io
