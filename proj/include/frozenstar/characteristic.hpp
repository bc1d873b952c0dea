#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frozenstar/model.hpp"

namespace frozenstar {

enum class Execution { Serial, Parallel };

// The characteristic function split into its three sums, with the chord
// reciprocals of the third sum kept apart so the topology solver can use
// the rest as known data.
struct PhiBlocks {
  cplx nonlocal;    // sum_j (overlap_j + sum_n q conj(q) R_n) P_j
  cplx center;      // sum_j ((z pi/l_j) cos z pi + alternating_j) P_j
  cplx outer_edge;  // sum_j' (z pi/l_j' + plain_j') P_j'
  cplx outer_chord; // sum_j' z pi (1/lbar_{j'-1} + cos(z pi)/lbar_j') P_j'

  cplx total() const { return nonlocal + center + outer_edge + outer_chord; }
  cplx without_chords() const { return nonlocal + center + outer_edge; }
};

PhiBlocks phi_blocks(const ModelConfig& cfg, cplx z);

/// Phi(z): sum of all blocks.
cplx phi(const ModelConfig& cfg, cplx z);

/// d Phi / d(1/lbar_j) for every chord j; Phi is affine in these reciprocals.
std::vector<cplx> chord_design_row(const ModelConfig& cfg, cplx z);

// Phi as a function of the potential coefficients:
//   Phi = constant + sum_{j,n} conj_linear * conj(q) + quadratic * |q|^2 + linear * q
// with index j * order + (n - 1). The coefficients only depend on z and the
// geometry.
struct PhiFeatures {
  cplx constant;
  std::vector<cplx> conj_linear;
  std::vector<cplx> quadratic;
  std::vector<cplx> linear;
};

PhiFeatures phi_features(const ModelConfig& cfg, cplx z);

struct SampleGridSpec {
  enum class Kind { Integers, EdgeResonant, ZeroSet, Uniform, Custom };

  Kind kind = Kind::Uniform;
  std::size_t edge = 0;  // 0-based edge for EdgeResonant / ZeroSet
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  std::vector<cplx> points;
  bool allow_poles = false;

  static SampleGridSpec integers(int first, int last);
  /// z = k pi / l_edge for k = first..last
  static SampleGridSpec edge_resonant(std::size_t edge, int first, int last);
  /// zeros of sin(z pi) prod_{k != edge} sin(z l_k) in [lo, hi]
  static SampleGridSpec zero_set(std::size_t edge, double lo, double hi);
  /// count points lo + (hi - lo)(i + 1/2)/count
  static SampleGridSpec uniform(double lo, double hi, std::size_t count);
  static SampleGridSpec custom(std::vector<cplx> points, bool allow_poles = false);

  std::string describe() const;
};

/// Materializes the grid in ascending order. Custom points inside a pole
/// window raise PoleWindow unless allow_poles is set.
std::vector<cplx> build_grid(const ModelConfig& cfg, const SampleGridSpec& spec);

struct PhiSampleSet {
  std::vector<cplx> grid;
  std::vector<cplx> values;
  Mode mode = Mode::Verbatim;
  std::string fingerprint;
  std::string lengths_fingerprint;
  std::string chords_fingerprint;
  std::string potentials_fingerprint;
  std::string grid_description;
};

PhiSampleSet sample_phi(const ModelConfig& cfg, const SampleGridSpec& spec,
                        Execution exec = Execution::Parallel);
PhiSampleSet sample_phi(const ModelConfig& cfg, const std::vector<cplx>& grid,
                        Execution exec = Execution::Parallel);

/// Pointwise A - B. Throws GridMismatch unless grids and modes agree.
std::vector<cplx> phi_difference(const PhiSampleSet& a, const PhiSampleSet& b);

}  // namespace frozenstar
