#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frozenstar/fourier.hpp"
#include "frozenstar/geometry.hpp"

namespace frozenstar {

// Verbatim evaluates every formula as written for arbitrary edge lengths.
// Normalized pins every l_j to pi, the regime in which the special solution
// satisfies the edge equation exactly.
enum class Mode { Verbatim, Normalized };

std::string_view to_string(Mode mode) noexcept;
Mode mode_from_string(std::string_view text);

/// 64-bit FNV-1a, used for config fingerprints.
class Fingerprint {
 public:
  Fingerprint& add(std::string_view text);
  Fingerprint& add(double value);
  Fingerprint& add(std::uint64_t value);
  std::uint64_t value() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 14695981039346656037ull;
};

// Everything z-independent the special solutions need: edge lengths, chord
// lengths of the closed extension, potentials and the pole window. Immutable
// once built.
class ModelConfig {
 public:
  static constexpr double kDefaultPoleWindow = 1e-6;

  /// Throws InvalidModel on inconsistent shapes, non-positive lengths, a pole
  /// window wider than half the pole spacing, or Normalized lengths != pi.
  ModelConfig(std::vector<double> lengths, std::vector<double> chords,
              PotentialCoeffs potentials, Mode mode,
              double pole_window = kDefaultPoleWindow);

  static ModelConfig from_graph(const StarGraphSpec& graph, PotentialCoeffs potentials,
                                Mode mode, double pole_window = kDefaultPoleWindow);

  std::size_t edge_count() const { return lengths_.size(); }
  std::size_t order() const { return potentials_.order; }
  const std::vector<double>& lengths() const { return lengths_; }
  const std::vector<double>& chords() const { return chords_; }
  const PotentialCoeffs& potentials() const { return potentials_; }
  Mode mode() const { return mode_; }
  double pole_window() const { return pole_window_; }
  double length(std::size_t j) const { return lengths_[j]; }
  double chord(std::size_t j) const { return chords_[j]; }

  ModelConfig with_chords(std::vector<double> chords) const;
  ModelConfig with_potentials(PotentialCoeffs potentials) const;

  std::string fingerprint() const;
  std::string lengths_fingerprint() const;
  std::string chords_fingerprint() const;
  std::string potentials_fingerprint() const;

 private:
  std::vector<double> lengths_;
  std::vector<double> chords_;
  PotentialCoeffs potentials_;
  Mode mode_;
  double pole_window_;
};

}  // namespace frozenstar
