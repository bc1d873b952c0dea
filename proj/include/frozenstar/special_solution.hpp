#pragma once

#include <cstddef>

#include "frozenstar/model.hpp"

// Special solutions of the frozen-argument problem on the extended star.
// Edge and chord indices are 0-based; chord j joins the tips of edges j and
// j+1 (cyclic). All functions are pure and safe to call concurrently.
namespace frozenstar {

/// prod_{k != j} sin(z l_k)
cplx edge_product(const ModelConfig& cfg, std::size_t j, cplx z);

// The z-dependent pieces of edge j that the vertex sums and the
// characteristic function are assembled from (R_n = sin(z l)/(z^2 - p_n^2),
// p_n = n pi / l):
struct EdgeTerms {
  cplx overlap;      // integral_0^l sin[z pi (1 - x/l)] conj(q(x)) dx
  cplx quadratic;    // sum q_n conj(q_n) R_n
  cplx alternating;  // sum (-1)^n p_n q_n R_n
  cplx plain;        // sum p_n q_n R_n
  cplx product;      // prod_{k != j} sin(z l_k)
};
EdgeTerms edge_terms(const ModelConfig& cfg, std::size_t j, cplx z);

// phi_j(x; z) = (sin[z pi (1 - x/l_j)]
//                + sin(z l_j) sum_n q_{j,n} sin[(n pi/l_j)(l_j - x)] / (z^2 - (n pi/l_j)^2))
//               * prod_{k != j} sin(z l_k)
// Exactly zero at x = l_j. Throws OutOfDomain for x outside [0, l_j].
cplx phi_edge(const ModelConfig& cfg, std::size_t j, double x, cplx z);
cplx phi_edge_derivative(const ModelConfig& cfg, std::size_t j, double x, cplx z);
cplx phi_edge_second_derivative(const ModelConfig& cfg, std::size_t j, double x, cplx z);

// Chord solution sin[z pi (1 - x/lbar_j)] * prod_{k != j} sin(z l_k), with x
// the arclength from tip j towards tip j+1.
cplx phi_chord(const ModelConfig& cfg, std::size_t j, double x, cplx z);
cplx phi_chord_derivative(const ModelConfig& cfg, std::size_t j, double x, cplx z);

/// Sum over edges of phi_j'(0; z), closed form.
cplx kirchhoff_center_sum(const ModelConfig& cfg, cplx z);

// Derivative sum prepared at tip v_{j'}:
//   -(z pi/l_j' + z pi/lbar_{j'-1} + (z pi/lbar_j') cos z pi
//     + sin(z l_j') sum (n pi/l_j') q_{j',n} / (z^2 - (n pi/l_j')^2)) prod_{k != j'} sin(z l_k)
// where lbar_{j'-1} wraps to the last chord for j' = 0.
cplx kirchhoff_outer_sum(const ModelConfig& cfg, std::size_t jp, cplx z);

/// integral_0^{l_j} phi_j(x; z) conj(q_j(x)) dx, termwise closed form.
cplx nonlocal_integral(const ModelConfig& cfg, std::size_t j, cplx z);

// -phi'' + q_j(x) phi_j(0) - (z pi / l_j)^2 phi. Only meaningful when all
// edges share the same spectral scale; throws ModeRequired outside
// Normalized mode.
cplx ode_residual(const ModelConfig& cfg, std::size_t j, double x, cplx z);

}  // namespace frozenstar
