#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frozenstar/characteristic.hpp"
#include "frozenstar/errors.hpp"

namespace frozenstar {

enum class RecoveryStatus {
  Ok,
  RankDeficient,
  NonPositiveReciprocal,
  TriangleViolation,
  ClosureViolation,
  MaxItersExceeded,
  AmbiguousSolution,
};

std::string_view to_string(RecoveryStatus s) noexcept;
ErrorCode error_code(RecoveryStatus s) noexcept;

/// Chord recovery: lengths and potentials known, chords (hence angles) unknown.
struct TopologyRecoveryProblem {
  std::vector<double> lengths;
  PotentialCoeffs potentials;
  Mode mode = Mode::Verbatim;
  double pole_window = ModelConfig::kDefaultPoleWindow;
  PhiSampleSet observed;
  double max_condition = 1e10;
  double closure_tolerance = 1e-6;
};

struct TopologyReport {
  RecoveryStatus status = RecoveryStatus::Ok;
  std::string message;
  std::vector<double> reciprocals;  // u_j = 1 / lbar_j as solved
  std::vector<double> chords;
  std::vector<double> angles;  // empty unless angles were requested and m >= 3
  double closure_defect = 0.0;
  double residual_norm = 0.0;  // ||Phi(recovered) - observed||_2, recomputed
  double data_norm = 0.0;      // ||observed - chord-free part||_2
  double condition = 0.0;      // 2-norm condition of the design matrix
  std::string method;          // "least-squares" or "resonant"

  bool ok() const { return status == RecoveryStatus::Ok; }
  // First-order bound on relative chord error under additive data noise of
  // 2-norm `noise`: condition * noise / data_norm.
  double relative_error_bound(double noise) const;
};

// Least squares for the chord reciprocals over the observed grid. The grid
// must avoid points where every product prod_{k != j} sin(z l_k) vanishes.
TopologyReport recover_chords(const TopologyRecoveryProblem& p,
                              Execution exec = Execution::Parallel);

// Closed-form alternative using only grid points resonant with one edge
// (z l_j' in pi Z): there every vertex sum but j' drops out and the data reads
// u_{j'-1} + u_j' cos(z pi), a line in cos(z pi). Each reciprocal is
// estimated from both of its vertices and averaged.
TopologyReport recover_chords_resonant(const TopologyRecoveryProblem& p);

/// recover_chords followed by the inverse law of cosines (m >= 3).
TopologyReport recover_angles(const TopologyRecoveryProblem& p,
                              Execution exec = Execution::Parallel);

/// Potential recovery: lengths and chords known, coefficients unknown.
struct PotentialRecoveryProblem {
  std::vector<double> lengths;
  std::vector<double> chords;
  Mode mode = Mode::Verbatim;
  double pole_window = ModelConfig::kDefaultPoleWindow;
  std::size_t order = 4;
  PhiSampleSet observed;
  int max_iterations = 50;
  double step_tolerance = 1e-12;
  double residual_tolerance = 1e-12;
  double max_condition = 1e10;  // on the Gauss-Newton normal matrix
};

struct PotentialReport {
  RecoveryStatus status = RecoveryStatus::Ok;
  std::string message;
  PotentialCoeffs coefficients;
  double residual_norm = 0.0;  // recomputed from the recovered model
  double condition = 0.0;      // normal-matrix condition at the final iterate
  int iterations = 0;
  std::vector<double> residual_history;  // one entry per accepted iterate

  bool ok() const { return status == RecoveryStatus::Ok; }
};

// Gauss-Newton on (Re q, Im q) with an analytic Jacobian and step halving,
// started from q = 0.
PotentialReport recover_potentials(const PotentialRecoveryProblem& p,
                                   Execution exec = Execution::Parallel);

// Stacked real residual [Re r_0, Im r_0, ...] and its Jacobian with respect to
// [Re q_{1,1}, Im q_{1,1}, Re q_{1,2}, ...], exposed for testing.
struct GaussNewtonSystem {
  std::vector<double> residual;
  std::vector<std::vector<double>> jacobian;  // rows x unknowns
};
GaussNewtonSystem potential_residual_system(const PotentialRecoveryProblem& p,
                                            const PotentialCoeffs& q,
                                            Execution exec = Execution::Parallel);

/// max_i |Phi_A(z_i) - Phi_B(z_i)| for configs sharing lengths and potentials.
double uniqueness_gap_topology(const ModelConfig& a, const ModelConfig& b,
                               const std::vector<cplx>& grid);
/// Same for configs sharing lengths and chords.
double uniqueness_gap_potential(const ModelConfig& a, const ModelConfig& b,
                                const std::vector<cplx>& grid);

}  // namespace frozenstar
