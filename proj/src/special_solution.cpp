#include "frozenstar/special_solution.hpp"

#include <sstream>

#include "frozenstar/errors.hpp"

namespace frozenstar {
namespace {

void check_edge_point(const ModelConfig& cfg, std::size_t j, double x) {
  if (j >= cfg.edge_count()) throw Error(ErrorCode::OutOfDomain, "edge index out of range");
  if (!(x >= 0.0 && x <= cfg.length(j))) {
    std::ostringstream msg;
    msg << "x = " << x << " outside edge " << j + 1 << " [0, " << cfg.length(j) << "]";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
}

void check_chord_point(const ModelConfig& cfg, std::size_t j, double x) {
  if (j >= cfg.edge_count()) throw Error(ErrorCode::OutOfDomain, "chord index out of range");
  if (!(x >= 0.0 && x <= cfg.chord(j))) {
    std::ostringstream msg;
    msg << "x = " << x << " outside chord " << j + 1 << " [0, " << cfg.chord(j) << "]";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
}

double pole(std::size_t n, double l) { return static_cast<double>(n) * kPi / l; }

// sin(z l) * sum_n weight(n) * q_n / (z^2 - p_n^2), the removable poles
// handled inside resonant_ratio.
template <class Weight>
cplx edge_series(const ModelConfig& cfg, std::size_t j, cplx z, Weight weight) {
  const double l = cfg.length(j);
  const auto& q = cfg.potentials();
  cplx sum{};
  for (std::size_t n = 1; n <= q.order; ++n) {
    const cplx qn = q.at(j, n);
    if (qn == cplx{}) continue;
    sum += weight(n) * qn * resonant_ratio(z, n, l, cfg.pole_window());
  }
  return sum;
}

}  // namespace

cplx edge_product(const ModelConfig& cfg, std::size_t j, cplx z) {
  cplx prod{1.0, 0.0};
  for (std::size_t k = 0; k < cfg.edge_count(); ++k) {
    if (k != j) prod *= sin_pi(z * (cfg.length(k) / kPi));
  }
  return prod;
}

EdgeTerms edge_terms(const ModelConfig& cfg, std::size_t j, cplx z) {
  if (j >= cfg.edge_count()) throw Error(ErrorCode::OutOfDomain, "edge index out of range");
  const double l = cfg.length(j);
  const auto& q = cfg.potentials();
  EdgeTerms t{};
  for (std::size_t k = 1; k <= q.order; ++k) {
    t.overlap += std::conj(q.at(j, k)) * sine_overlap(z, static_cast<int>(k));
  }
  t.overlap *= l / kPi;
  t.quadratic = edge_series(cfg, j, z, [&](std::size_t n) { return std::conj(q.at(j, n)); });
  t.alternating = edge_series(cfg, j, z, [&](std::size_t n) {
    return (n % 2 == 0 ? 1.0 : -1.0) * pole(n, l);
  });
  t.plain = edge_series(cfg, j, z, [&](std::size_t n) { return pole(n, l); });
  t.product = edge_product(cfg, j, z);
  return t;
}

cplx phi_edge(const ModelConfig& cfg, std::size_t j, double x, cplx z) {
  check_edge_point(cfg, j, x);
  const double l = cfg.length(j);
  const cplx boundary = sin_pi(z * ((l - x) / l));
  const cplx series = edge_series(cfg, j, z, [&](std::size_t n) { return sine_mode(n, l, x); });
  return (boundary + series) * edge_product(cfg, j, z);
}

cplx phi_edge_derivative(const ModelConfig& cfg, std::size_t j, double x, cplx z) {
  check_edge_point(cfg, j, x);
  const double l = cfg.length(j);
  const cplx boundary = -(z * kPi / l) * cos_pi(z * ((l - x) / l));
  const cplx series = edge_series(cfg, j, z, [&](std::size_t n) {
    return pole(n, l) * cos_pi(static_cast<double>(n) * (l - x) / l);
  });
  return (boundary - series) * edge_product(cfg, j, z);
}

cplx phi_edge_second_derivative(const ModelConfig& cfg, std::size_t j, double x, cplx z) {
  check_edge_point(cfg, j, x);
  const double l = cfg.length(j);
  const cplx k = z * kPi / l;
  const cplx boundary = -(k * k) * sin_pi(z * ((l - x) / l));
  const cplx series = edge_series(cfg, j, z, [&](std::size_t n) {
    const double p = pole(n, l);
    return p * p * sine_mode(n, l, x);
  });
  return (boundary - series) * edge_product(cfg, j, z);
}

cplx phi_chord(const ModelConfig& cfg, std::size_t j, double x, cplx z) {
  check_chord_point(cfg, j, x);
  const double c = cfg.chord(j);
  return sin_pi(z * ((c - x) / c)) * edge_product(cfg, j, z);
}

cplx phi_chord_derivative(const ModelConfig& cfg, std::size_t j, double x, cplx z) {
  check_chord_point(cfg, j, x);
  const double c = cfg.chord(j);
  return -(z * kPi / c) * cos_pi(z * ((c - x) / c)) * edge_product(cfg, j, z);
}

cplx kirchhoff_center_sum(const ModelConfig& cfg, cplx z) {
  const cplx cos_z = cos_pi(z);
  cplx total{};
  for (std::size_t j = 0; j < cfg.edge_count(); ++j) {
    const double l = cfg.length(j);
    const cplx series = edge_series(cfg, j, z, [&](std::size_t n) {
      return (n % 2 == 0 ? 1.0 : -1.0) * pole(n, l);
    });
    total -= ((z * kPi / l) * cos_z + series) * edge_product(cfg, j, z);
  }
  return total;
}

cplx kirchhoff_outer_sum(const ModelConfig& cfg, std::size_t jp, cplx z) {
  const std::size_t m = cfg.edge_count();
  if (jp >= m) throw Error(ErrorCode::OutOfDomain, "vertex index out of range");
  const double l = cfg.length(jp);
  const double chord_before = cfg.chord((jp + m - 1) % m);
  const double chord_after = cfg.chord(jp);
  const cplx zpi = z * kPi;
  const cplx series = edge_series(cfg, jp, z, [&](std::size_t n) { return pole(n, l); });
  const cplx bracket = zpi / l + zpi / chord_before + zpi / chord_after * cos_pi(z) + series;
  return -bracket * edge_product(cfg, jp, z);
}

cplx nonlocal_integral(const ModelConfig& cfg, std::size_t j, cplx z) {
  // conj(q_j) expands in the same real sine basis; modes are orthogonal with
  // norm l/2, so the series part collapses onto q_n conj(q_n) l/2.
  const EdgeTerms t = edge_terms(cfg, j, z);
  return (t.overlap + 0.5 * cfg.length(j) * t.quadratic) * t.product;
}

cplx ode_residual(const ModelConfig& cfg, std::size_t j, double x, cplx z) {
  if (cfg.mode() != Mode::Normalized) {
    throw Error(ErrorCode::ModeRequired, "edge equation residual needs normalized mode");
  }
  const double l = cfg.length(j);
  const cplx k = z * kPi / l;
  const cplx qx = sine_synthesis(cfg.potentials(), j, x);
  return -phi_edge_second_derivative(cfg, j, x, z) + qx * phi_edge(cfg, j, 0.0, z) -
         k * k * phi_edge(cfg, j, x, z);
}

}  // namespace frozenstar
