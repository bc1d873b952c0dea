#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "frozenstar/model.hpp"

// Second-order finite differences for the frozen-argument eigenproblem on
// the plain star (no chords):
//   -psi_j'' + q_j(x) psi(0) = lambda psi_j,   psi_j(l_j) = 0,
//   sum_j [psi_j'(0) - integral_0^{l_j} psi_j conj(q_j) dx] = 0,
// with one shared vertex unknown psi(0).
namespace frozenstar {

struct DiscretizedStar {
  // Unknown layout: edge 0 interior points, edge 1 interior points, ...,
  // then the vertex value last. Interior point i of edge j (1-based in i)
  // sits at x = i * steps[j].
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> interior;
  std::vector<double> steps;
  // Rows 0..n-1 are the edge equations (they carry lambda); row n is the
  // vertex condition, which does not.
  Eigen::MatrixXcd op;

  std::size_t interior_count() const { return static_cast<std::size_t>(op.rows()) - 1; }
  std::size_t vertex_index() const { return interior_count(); }
  bool is_real() const;
};

struct OracleSpectrum {
  std::vector<cplx> eigenvalues;  // sorted by real part, then imaginary part
  double h = 0.0;
  std::size_t count = 0;
};

/// Throws MeshTooCoarse unless every edge gets at least 16 interior points.
DiscretizedStar assemble(const ModelConfig& cfg, double h);

// The vertex row is solved for psi(0) and substituted into the edge rows,
// leaving a standard dense eigenproblem; returns the k eigenvalues of
// smallest modulus. Throws EigensolverFailure.
OracleSpectrum spectrum(const DiscretizedStar& d, std::size_t k);

// Same spectrum from the generalized problem op x = lambda diag(1,..,1,0) x
// without eliminating the vertex. Real operators only.
OracleSpectrum spectrum_generalized(const DiscretizedStar& d, std::size_t k);

struct ZeroComparison {
  double z = 0.0;
  double lambda = 0.0;          // (z pi / l_1)^2
  cplx nearest{};               // closest oracle eigenvalue
  double distance = 0.0;        // |lambda - nearest|
};

// Real zeros of Phi in [lo, hi] (sign changes of Re Phi refined by bisection,
// plus exact zeros on the scan grid and at integers), each converted to
// lambda and paired with the nearest oracle eigenvalue. A report only.
std::vector<ZeroComparison> compare_phi_zeros(const ModelConfig& cfg,
                                              const OracleSpectrum& spectrum, double lo,
                                              double hi, std::size_t scan_points = 2000);

}  // namespace frozenstar
