#include "frozenstar/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frozenstar/errors.hpp"
#include "frozenstar/special_solution.hpp"

namespace frozenstar {

PhiBlocks phi_blocks(const ModelConfig& cfg, cplx z) {
  const std::size_t m = cfg.edge_count();
  const cplx cos_z = cos_pi(z);
  const cplx zpi = z * kPi;
  PhiBlocks b{};
  for (std::size_t j = 0; j < m; ++j) {
    const EdgeTerms t = edge_terms(cfg, j, z);
    const double l = cfg.length(j);
    b.nonlocal += (t.overlap + t.quadratic) * t.product;
    b.center += (zpi / l * cos_z + t.alternating) * t.product;
    b.outer_edge += (zpi / l + t.plain) * t.product;
    const double before = cfg.chord((j + m - 1) % m);
    const double after = cfg.chord(j);
    b.outer_chord += (zpi / before + zpi / after * cos_z) * t.product;
  }
  return b;
}

cplx phi(const ModelConfig& cfg, cplx z) { return phi_blocks(cfg, z).total(); }

std::vector<cplx> chord_design_row(const ModelConfig& cfg, cplx z) {
  const std::size_t m = cfg.edge_count();
  std::vector<cplx> product(m);
  for (std::size_t j = 0; j < m; ++j) product[j] = edge_product(cfg, j, z);
  const cplx cos_z = cos_pi(z);
  const cplx zpi = z * kPi;
  // 1/lbar_j enters vertex j+1 as the "before" chord and vertex j as "after".
  std::vector<cplx> row(m);
  for (std::size_t j = 0; j < m; ++j) {
    row[j] = zpi * (product[(j + 1) % m] + cos_z * product[j]);
  }
  return row;
}

PhiFeatures phi_features(const ModelConfig& cfg, cplx z) {
  const std::size_t m = cfg.edge_count();
  const std::size_t order = cfg.order();
  const double eps = cfg.pole_window();
  const cplx cos_z = cos_pi(z);
  const cplx zpi = z * kPi;
  PhiFeatures f;
  f.constant = {};
  f.conj_linear.resize(m * order);
  f.quadratic.resize(m * order);
  f.linear.resize(m * order);
  for (std::size_t j = 0; j < m; ++j) {
    const double l = cfg.length(j);
    const cplx p = edge_product(cfg, j, z);
    const double before = cfg.chord((j + m - 1) % m);
    const double after = cfg.chord(j);
    f.constant += (zpi / l * cos_z + zpi / l + zpi / before + zpi / after * cos_z) * p;
    for (std::size_t n = 1; n <= order; ++n) {
      const std::size_t idx = j * order + (n - 1);
      const cplx ratio = resonant_ratio(z, n, l, eps);
      const double pn = static_cast<double>(n) * kPi / l;
      // Alternating and plain sums coincide for even n and cancel for odd n.
      const double linear_weight = (n % 2 == 0) ? 2.0 * pn : 0.0;
      f.conj_linear[idx] = l / kPi * sine_overlap(z, static_cast<int>(n)) * p;
      f.quadratic[idx] = ratio * p;
      f.linear[idx] = linear_weight * ratio * p;
    }
  }
  return f;
}

SampleGridSpec SampleGridSpec::integers(int first, int last) {
  SampleGridSpec s;
  s.kind = Kind::Integers;
  s.lo = first;
  s.hi = last;
  return s;
}

SampleGridSpec SampleGridSpec::edge_resonant(std::size_t edge, int first, int last) {
  SampleGridSpec s;
  s.kind = Kind::EdgeResonant;
  s.edge = edge;
  s.lo = first;
  s.hi = last;
  return s;
}

SampleGridSpec SampleGridSpec::zero_set(std::size_t edge, double lo, double hi) {
  SampleGridSpec s;
  s.kind = Kind::ZeroSet;
  s.edge = edge;
  s.lo = lo;
  s.hi = hi;
  return s;
}

SampleGridSpec SampleGridSpec::uniform(double lo, double hi, std::size_t count) {
  SampleGridSpec s;
  s.kind = Kind::Uniform;
  s.lo = lo;
  s.hi = hi;
  s.count = count;
  return s;
}

SampleGridSpec SampleGridSpec::custom(std::vector<cplx> points, bool allow_poles) {
  SampleGridSpec s;
  s.kind = Kind::Custom;
  s.points = std::move(points);
  s.allow_poles = allow_poles;
  return s;
}

std::string SampleGridSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::Integers: out << "integers:" << lo << ":" << hi; break;
    case Kind::EdgeResonant: out << "resonant:" << edge + 1 << ":" << lo << ":" << hi; break;
    case Kind::ZeroSet: out << "zeroset:" << edge + 1 << ":" << lo << ":" << hi; break;
    case Kind::Uniform: out << "uniform:" << lo << ":" << hi << ":" << count; break;
    case Kind::Custom: out << "custom:" << points.size(); break;
  }
  return out.str();
}

namespace {

bool less_complex(const cplx& a, const cplx& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

void sort_unique(std::vector<cplx>& pts, double tol) {
  std::sort(pts.begin(), pts.end(), less_complex);
  std::vector<cplx> out;
  for (const cplx& p : pts) {
    if (out.empty() || std::abs(p - out.back()) > tol) out.push_back(p);
  }
  pts = std::move(out);
}

}  // namespace

std::vector<cplx> build_grid(const ModelConfig& cfg, const SampleGridSpec& spec) {
  const std::size_t m = cfg.edge_count();
  std::vector<cplx> pts;
  switch (spec.kind) {
    case SampleGridSpec::Kind::Integers: {
      for (long k = std::lround(spec.lo); k <= std::lround(spec.hi); ++k) {
        pts.emplace_back(static_cast<double>(k), 0.0);
      }
      break;
    }
    case SampleGridSpec::Kind::EdgeResonant: {
      if (spec.edge >= m) throw Error(ErrorCode::OutOfDomain, "resonant grid edge out of range");
      const double l = cfg.length(spec.edge);
      for (long k = std::lround(spec.lo); k <= std::lround(spec.hi); ++k) {
        pts.emplace_back(static_cast<double>(k) * kPi / l, 0.0);
      }
      break;
    }
    case SampleGridSpec::Kind::ZeroSet: {
      if (spec.edge >= m) throw Error(ErrorCode::OutOfDomain, "zero-set grid edge out of range");
      // sin(z pi) = 0 at integers; sin(z l_k) = 0 at multiples of pi / l_k.
      for (double k = std::ceil(spec.lo); k <= spec.hi; k += 1.0) pts.emplace_back(k, 0.0);
      for (std::size_t e = 0; e < m; ++e) {
        if (e == spec.edge) continue;
        const double step = kPi / cfg.length(e);
        for (double k = std::ceil(spec.lo / step); k * step <= spec.hi; k += 1.0) {
          if (k * step >= spec.lo) pts.emplace_back(k * step, 0.0);
        }
      }
      sort_unique(pts, 1e-12);
      break;
    }
    case SampleGridSpec::Kind::Uniform: {
      if (spec.count == 0 || !(spec.hi > spec.lo)) {
        throw Error(ErrorCode::OutOfDomain, "uniform grid needs count > 0 and hi > lo");
      }
      for (std::size_t i = 0; i < spec.count; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(spec.count);
        pts.emplace_back(spec.lo + (spec.hi - spec.lo) * t, 0.0);
      }
      break;
    }
    case SampleGridSpec::Kind::Custom: {
      pts = spec.points;
      if (!spec.allow_poles) {
        const double eps = cfg.pole_window();
        for (const cplx& z : pts) {
          for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t n = 1; n <= cfg.order(); ++n) {
              const double p = static_cast<double>(n) * kPi / cfg.length(j);
              if (std::abs(z - p) < eps || std::abs(z + p) < eps) {
                std::ostringstream msg;
                msg << "grid point " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
                    << "i lies in the pole window of edge " << j + 1 << ", n = " << n;
                throw Error(ErrorCode::PoleWindow, msg.str());
              }
            }
          }
        }
      }
      std::vector<cplx> sorted = pts;
      sort_unique(sorted, 0.0);
      if (sorted.size() != pts.size()) {
        throw Error(ErrorCode::GridMismatch, "custom grid points must be distinct");
      }
      break;
    }
  }
  return pts;
}

PhiSampleSet sample_phi(const ModelConfig& cfg, const std::vector<cplx>& grid, Execution exec) {
  PhiSampleSet out;
  out.grid = grid;
  out.values.resize(grid.size());
  out.mode = cfg.mode();
  out.fingerprint = cfg.fingerprint();
  out.lengths_fingerprint = cfg.lengths_fingerprint();
  out.chords_fingerprint = cfg.chords_fingerprint();
  out.potentials_fingerprint = cfg.potentials_fingerprint();
  out.grid_description = "custom:" + std::to_string(grid.size());

  const long n = static_cast<long>(grid.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out.values[i] = phi(cfg, grid[i]);
  } else {
    for (long i = 0; i < n; ++i) out.values[i] = phi(cfg, grid[i]);
  }
  return out;
}

PhiSampleSet sample_phi(const ModelConfig& cfg, const SampleGridSpec& spec, Execution exec) {
  PhiSampleSet out = sample_phi(cfg, build_grid(cfg, spec), exec);
  out.grid_description = spec.describe();
  return out;
}

std::vector<cplx> phi_difference(const PhiSampleSet& a, const PhiSampleSet& b) {
  if (a.mode != b.mode) throw Error(ErrorCode::GridMismatch, "sample sets use different modes");
  if (a.grid.size() != b.grid.size() || a.grid != b.grid) {
    throw Error(ErrorCode::GridMismatch, "sample sets use different grids");
  }
  if (a.values.size() != a.grid.size() || b.values.size() != b.grid.size()) {
    throw Error(ErrorCode::GridMismatch, "sample values do not cover the grid");
  }
  std::vector<cplx> diff(a.values.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.values[i] - b.values[i];
  return diff;
}

}  // namespace frozenstar
