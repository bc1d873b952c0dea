#pragma once

#include <cstddef>
#include <vector>

#include "frozenstar/numeric.hpp"

namespace frozenstar {

// Per-edge Fourier-sine coefficients of the potentials against the basis
// sin[(n pi / l_j)(l_j - x)], n = 1..order. coeffs[j][n - 1] holds q_{j,n}.
struct PotentialCoeffs {
  std::vector<double> lengths;
  std::size_t order = 0;
  std::vector<std::vector<cplx>> coeffs;

  static PotentialCoeffs zeros(std::vector<double> lengths, std::size_t order);

  std::size_t edge_count() const { return lengths.size(); }
  cplx at(std::size_t j, std::size_t n) const { return coeffs[j][n - 1]; }
  bool is_real() const;
  bool is_zero() const;
  /// Throws InvalidModel on shape mismatch or non-finite entries.
  void validate() const;
};

/// Uniform samples f(x_i), x_i = i * l / M, i = 0..M.
struct SampledFunction {
  double length = 0.0;
  std::vector<cplx> values;

  std::size_t intervals() const { return values.empty() ? 0 : values.size() - 1; }
};

struct SineCoefficients {
  std::vector<cplx> values;  // q_1..q_N
  bool grid_too_coarse = false;  // M < 8N; values are still returned
};

/// sin[(n pi / l)(l - x)], structurally zero at x = l.
double sine_mode(std::size_t n, double length, double x);

/// q_n = (2/l) * integral f(x) sin[(n pi/l)(l - x)] dx by composite Simpson.
SineCoefficients sine_coefficients(const SampledFunction& f, std::size_t order);

/// Partial sum of the sine series on edge j. Throws OutOfDomain outside [0, l_j].
cplx sine_synthesis(const PotentialCoeffs& c, std::size_t j, double x);

/// (2/l_j) * integral q_j(x) sin[(z pi/l_j)(l_j - x)] dx, termwise closed form.
cplx sine_transform(const PotentialCoeffs& c, std::size_t j, cplx z);

// sin(z l) / (z^2 - (n pi / l)^2). Inside the window |z -+ n pi/l| < eps the
// sine is rewritten around its zero so the removable singularity costs no
// digits; the result is the exact value, not a truncated expansion.
cplx resonant_ratio(cplx z, std::size_t n, double length, double eps);

// Partial-fraction side of the sine-transform identity on edge j:
//   sin(z l) * sum (-1)^n (n pi / l) q_n / (z^2 - (n pi / l)^2).
cplx sine_identity_lhs(const PotentialCoeffs& c, std::size_t j, cplx z, double eps = 1e-6);

// Integral side, evaluated by quadrature of the synthesized potential:
//   (l/pi) * integral_0^pi q((l/pi)(pi - x)) sin(eta x) dx,  eta = z l / pi.
// With l = pi this is the identity exactly as usually stated; for other
// lengths the frequency rescaling and the l/pi factor are what make the two
// sides agree.
cplx sine_identity_rhs(const PotentialCoeffs& c, std::size_t j, cplx z, std::size_t panels = 32);

}  // namespace frozenstar
