#include "frozenstar/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "frozenstar/errors.hpp"
#include "frozenstar/fd_oracle.hpp"
#include "frozenstar/recovery.hpp"
#include "frozenstar/special_solution.hpp"

namespace frozenstar {

std::string_view to_string(PropertyStatus s) noexcept {
  switch (s) {
    case PropertyStatus::Pass: return "pass";
    case PropertyStatus::Fail: return "fail";
    case PropertyStatus::Skip: return "skip";
  }
  return "unknown";
}

std::size_t VerifySummary::count(PropertyStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      results.begin(), results.end(), [s](const PropertyResult& r) { return r.status == s; }));
}

namespace {

struct Outcome {
  PropertyStatus status;
  std::string detail;
};

Outcome pass(std::string d) { return {PropertyStatus::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {PropertyStatus::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {PropertyStatus::Skip, std::move(d)}; }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

Outcome bound(double worst, double tol, const std::string& what) {
  std::string d = what + ": worst " + fmt(worst) + ", tolerance " + fmt(tol);
  return worst < tol ? pass(d) : fail(d);
}

bool lengths_distinct(const std::vector<double>& l) {
  const double scale = *std::max_element(l.begin(), l.end());
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t k = i + 1; k < l.size(); ++k) {
      if (std::abs(l[i] - l[k]) <= 1e-6 * scale) return false;
    }
  }
  return true;
}

// Generic real sample points: a uniform midpoint grid reaching past the
// highest pole of interest on the shortest edge.
std::vector<cplx> generic_grid(const ModelConfig& cfg, std::size_t order, std::size_t count) {
  const double lmin = *std::min_element(cfg.lengths().begin(), cfg.lengths().end());
  const double hi = (static_cast<double>(order) + 2.0) * kPi / lmin;
  return build_grid(cfg, SampleGridSpec::uniform(0.2, std::max(hi, 6.5), count));
}

class Suite {
 public:
  Suite(const io::RawConfig& raw, const VerifyOptions& opt) : raw_(raw), opt_(opt) {}

  VerifySummary run() {
    std::optional<StarGraphSpec> graph;
    run_one("geometry", [&] {
      graph.emplace(raw_.graph());
      return check_geometry(*graph);
    });
    if (!graph || summary_.results.back().status != PropertyStatus::Pass) {
      for (const char* name : kNames) add(name, skip("geometry invalid"), 0.0);
      return summary_;
    }
    cfg_.emplace(ModelConfig::from_graph(*graph, raw_.potentials, raw_.mode, raw_.pole_window));

    run_one("boundary_values", [&] { return check_boundary(); });
    run_one("edge_derivative", [&] { return check_derivative(); });
    run_one("pole_continuity", [&] { return check_poles(); });
    run_one("sine_transform_identity", [&] { return check_identity(); });
    run_one("edge_equation", [&] { return check_edge_equation(); });
    run_one("vertex_sums", [&] { return check_vertex_sums(); });
    run_one("nonlocal_integral", [&] { return check_nonlocal(); });
    run_one("parallel_determinism", [&] { return check_determinism(); });
    run_one("topology_round_trip", [&] { return check_topology(*graph); });
    run_one("potential_round_trip", [&] { return check_potential(); });
    run_one("uniqueness_gaps", [&] { return check_uniqueness(*graph); });
    run_one("oracle_consistency", [&] { return check_oracle(); });
    return summary_;
  }

 private:
  static constexpr const char* kNames[] = {
      "boundary_values",     "edge_derivative",      "pole_continuity",
      "sine_transform_identity", "edge_equation",   "vertex_sums",
      "nonlocal_integral",   "parallel_determinism", "topology_round_trip",
      "potential_round_trip", "uniqueness_gaps",     "oracle_consistency"};

  void add(std::string name, Outcome o, double seconds) {
    summary_.results.push_back({std::move(name), o.status, std::move(o.detail), seconds});
  }

  void run_one(const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{PropertyStatus::Fail, ""};
    try {
      o = body();
    } catch (const std::exception& e) {
      o = fail(e.what());
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    add(name, std::move(o), dt.count());
  }

  double tol(double t) const { return t * opt_.tolerance_scale; }
  const ModelConfig& cfg() const { return *cfg_; }
  std::size_t m() const { return cfg().edge_count(); }

  Outcome check_geometry(const StarGraphSpec& g) {
    const ExtendedGraphSpec ext = chords_from_angles(g);
    if (g.edge_count() < 3) return pass("valid two-edge star; chords " + fmt(ext.chords[0]));
    const bool reflex = std::any_of(g.angles().begin(), g.angles().end(),
                                    [](double a) { return a >= kPi; });
    if (reflex) return pass("valid star with a reflex angle; angle round trip not applicable");
    const AngleRecovery back = angles_from_chords(g.lengths(), ext, tol(1e-9));
    double worst = 0.0;
    for (std::size_t j = 0; j < g.edge_count(); ++j) {
      worst = std::max(worst, std::abs(back.angles[j] - g.angles()[j]));
    }
    return bound(worst, tol(1e-9), "angles -> chords -> angles");
  }

  Outcome check_boundary() {
    double worst_vertex = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      for (int k = 1; k <= 20; ++k) {
        const cplx z(k, 0.0);
        if (phi_edge(cfg(), j, cfg().length(j), z) != cplx(0.0, 0.0)) {
          return fail("phi_j(l_j) not exactly zero on edge " + std::to_string(j + 1));
        }
        worst_vertex = std::max(worst_vertex, std::abs(phi_edge(cfg(), j, 0.0, z)));
      }
      for (double zr : {0.37, 2.9, 7.15}) {
        if (phi_edge(cfg(), j, cfg().length(j), cplx(zr, 0.1)) != cplx(0.0, 0.0)) {
          return fail("phi_j(l_j) not exactly zero at non-integer z");
        }
      }
    }
    return bound(worst_vertex, tol(1e-12), "|phi_j(0; k)|, k = 1..20");
  }

  Outcome check_derivative() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 60; ++i) {
      const std::size_t j = static_cast<std::size_t>(i) % m();
      const double l = cfg().length(j);
      const double x = l * (0.05 + 0.9 * unit(rng));
      const cplx z(0.3 + 9.0 * unit(rng), 0.0);
      const double h = 1e-5 * l;
      const cplx fd = (phi_edge(cfg(), j, x + h, z) - phi_edge(cfg(), j, x - h, z)) / (2.0 * h);
      const cplx an = phi_edge_derivative(cfg(), j, x, z);
      worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1.0));
    }
    return bound(worst, tol(1e-6), "analytic vs central difference");
  }

  Outcome check_poles() {
    const double eps = cfg().pole_window();
    double worst = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      const double l = cfg().length(j);
      for (std::size_t n = 1; n <= std::min<std::size_t>(cfg().order(), 3); ++n) {
        const double p = static_cast<double>(n) * kPi / l;
        for (double x : {0.0, 0.3 * l, 0.71 * l}) {
          auto f = [&](double z) { return phi_edge(cfg(), j, x, cplx(z, 0.0)); };
          // Inner probes against the chord through the outer ones.
          const cplx lo = f(p - 2 * eps), hi = f(p + 2 * eps);
          for (double d : {-0.5 * eps, 0.5 * eps}) {
            const cplx interp = lo + (hi - lo) * ((d + 2 * eps) / (4 * eps));
            worst = std::max(worst, std::abs(f(p + d) - interp));
          }
          worst = std::max(worst, std::abs(f(p) - 0.5 * (lo + hi)));
        }
      }
    }
    return bound(worst, tol(1e-6), "jump across pole windows");
  }

  Outcome check_identity() {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const std::size_t j = static_cast<std::size_t>(i) % m();
      const cplx z(0.2 + 8.0 * unit(rng), 0.0);
      const cplx lhs = sine_identity_lhs(cfg().potentials(), j, z, cfg().pole_window());
      const cplx rhs = sine_identity_rhs(cfg().potentials(), j, z);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return bound(worst, tol(1e-8), "partial fractions vs quadrature");
  }

  Outcome check_edge_equation() {
    if (cfg().mode() != Mode::Normalized) return skip("needs normalized mode");
    double worst = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      for (int k = 1; k <= 10; ++k) {
        for (int i = 0; i <= 100; ++i) {
          const double x = cfg().length(j) * i / 100.0;
          worst = std::max(worst, std::abs(ode_residual(cfg(), j, x, cplx(k, 0.0))));
        }
      }
    }
    return bound(worst, tol(1e-8), "sup |-phi'' + q phi(0) - z^2 phi|");
  }

  Outcome check_vertex_sums() {
    double worst = 0.0;
    for (double zr : {0.45, 1.7, 3.3, 5.05}) {
      const cplx z(zr, 0.05);
      cplx direct = 0.0;
      for (std::size_t j = 0; j < m(); ++j) direct += phi_edge_derivative(cfg(), j, 0.0, z);
      const cplx closed = kirchhoff_center_sum(cfg(), z);
      worst = std::max(worst, std::abs(direct - closed) / std::max(std::abs(closed), 1.0));
    }
    return bound(worst, tol(1e-10), "center sum vs derivatives at the vertex");
  }

  Outcome check_nonlocal() {
    double worst = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      for (double zr : {0.45, 2.2, 4.6}) {
        const cplx z(zr, 0.05);
        const cplx quad = gauss_legendre(
            [&](double x) {
              return phi_edge(cfg(), j, x, z) * std::conj(sine_synthesis(cfg().potentials(), j, x));
            },
            0.0, cfg().length(j), 32);
        const cplx closed = nonlocal_integral(cfg(), j, z);
        worst = std::max(worst, std::abs(quad - closed) / std::max(std::abs(closed), 1.0));
      }
    }
    return bound(worst, tol(1e-10), "closed form vs quadrature");
  }

  Outcome check_determinism() {
    const auto grid = SampleGridSpec::uniform(0.1, 12.0, 257);
    const PhiSampleSet a = sample_phi(cfg(), grid, Execution::Serial);
    const PhiSampleSet b = sample_phi(cfg(), grid, Execution::Parallel);
    if (a.values != b.values || a.grid != b.grid) return fail("serial and parallel differ");
    return pass("serial and parallel sampling bitwise identical on 257 points");
  }

  TopologyRecoveryProblem topology_problem() const {
    TopologyRecoveryProblem p;
    p.lengths = cfg().lengths();
    p.potentials = cfg().potentials();
    p.mode = cfg().mode();
    p.pole_window = cfg().pole_window();
    p.observed = sample_phi(cfg(), generic_grid(cfg(), 2, 40), opt_.exec);
    return p;
  }

  Outcome check_topology(const StarGraphSpec& g) {
    const TopologyRecoveryProblem p = topology_problem();
    const TopologyReport r = m() >= 3 ? recover_angles(p, opt_.exec) : recover_chords(p, opt_.exec);
    const bool distinct = lengths_distinct(cfg().lengths());
    if (!distinct && r.status == RecoveryStatus::RankDeficient) {
      return pass("repeated edge lengths leave chords unidentifiable; RankDeficient reported");
    }
    const bool reflex = std::any_of(g.angles().begin(), g.angles().end(),
                                    [](double a) { return a >= kPi; });
    if (reflex && r.status == RecoveryStatus::ClosureViolation) {
      // Chords are still right; only the principal-branch angles disagree.
    } else if (!r.ok()) {
      return fail(std::string(to_string(r.status)) + ": " + r.message);
    }
    double chord_err = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      chord_err = std::max(chord_err, std::abs(r.chords[j] - cfg().chord(j)) / cfg().chord(j));
    }
    if (chord_err >= tol(1e-6)) return bound(chord_err, tol(1e-6), "chord relative error");
    if (m() < 3 || reflex) return bound(chord_err, tol(1e-6), "chord relative error");
    double angle_err = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      angle_err = std::max(angle_err, std::abs(r.angles[j] - g.angles()[j]));
    }
    return bound(std::max(angle_err, r.closure_defect), tol(1e-6),
                 "chord error " + fmt(chord_err) + "; angle error and closure defect");
  }

  Outcome check_potential() {
    const std::size_t order = cfg().order();
    PotentialRecoveryProblem p;
    p.lengths = cfg().lengths();
    p.chords = cfg().chords();
    p.mode = cfg().mode();
    p.pole_window = cfg().pole_window();
    p.order = order;
    p.observed = sample_phi(cfg(), generic_grid(cfg(), order, std::max<std::size_t>(40, 4 * m() * order)),
                            opt_.exec);
    const PotentialReport r = recover_potentials(p, opt_.exec);
    const bool distinct = lengths_distinct(cfg().lengths());
    if (!distinct && (r.status == RecoveryStatus::AmbiguousSolution ||
                      r.status == RecoveryStatus::RankDeficient)) {
      return pass("repeated edge lengths leave potentials unidentifiable; " +
                  std::string(to_string(r.status)) + " reported");
    }
    if (!r.ok()) return fail(std::string(to_string(r.status)) + ": " + r.message);
    double worst = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      for (std::size_t n = 1; n <= order; ++n) {
        worst = std::max(worst, std::abs(r.coefficients.at(j, n) - cfg().potentials().at(j, n)));
      }
    }
    return bound(worst, tol(1e-6),
                 "coefficient error after " + std::to_string(r.iterations) + " iterations");
  }

  Outcome check_uniqueness(const StarGraphSpec& g) {
    const std::vector<cplx> grid = generic_grid(cfg(), 2, 40);
    std::vector<double> angles = g.angles();
    const double shift = 0.037 * *std::min_element(angles.begin(), angles.end());
    angles[0] += shift;
    angles[1] -= shift;
    const ModelConfig moved = ModelConfig::from_graph(StarGraphSpec(g.lengths(), angles),
                                                      cfg().potentials(), cfg().mode(),
                                                      cfg().pole_window());
    const double gap_top = uniqueness_gap_topology(cfg(), moved, grid);
    PotentialCoeffs q = cfg().potentials();
    q.coeffs[0][0] += cplx(0.05, 0.0);
    const double gap_pot = uniqueness_gap_potential(cfg(), cfg().with_potentials(q), grid);
    const double worst = std::min(gap_top, gap_pot);
    std::string d = "topology gap " + fmt(gap_top) + ", potential gap " + fmt(gap_pot);
    return worst > 1e-8 ? pass(d) : fail(d);
  }

  Outcome check_oracle() {
    const double lmin = *std::min_element(cfg().lengths().begin(), cfg().lengths().end());
    const double h = opt_.oracle_h > 0.0 ? opt_.oracle_h : lmin / 48.0;
    const ModelConfig plain = cfg();
    const DiscretizedStar d = assemble(plain, h);
    const OracleSpectrum s = spectrum(d, 6);
    for (const cplx& ev : s.eigenvalues) {
      if (!std::isfinite(ev.real()) || !std::isfinite(ev.imag())) return fail("non-finite eigenvalue");
    }
    if (!d.is_real()) return pass("complex potential: 6 finite eigenvalues, QZ cross-check n/a");
    const OracleSpectrum g = spectrum_generalized(d, 6);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      worst = std::max(worst, std::abs(s.eigenvalues[i] - g.eigenvalues[i]) /
                                  std::max(std::abs(s.eigenvalues[i]), 1.0));
    }
    return bound(worst, tol(1e-10), "vertex elimination vs QZ");
  }

  const io::RawConfig& raw_;
  VerifyOptions opt_;
  std::optional<ModelConfig> cfg_;
  VerifySummary summary_;
};

}  // namespace

VerifySummary verify(const io::RawConfig& raw, const VerifyOptions& options) {
  return Suite(raw, options).run();
}

io::json summary_to_json(const VerifySummary& s) {
  io::json props = io::json::array();
  for (const auto& r : s.results) {
    props.push_back({{"name", r.name},
                     {"status", std::string(to_string(r.status))},
                     {"detail", r.detail},
                     {"seconds", r.seconds}});
  }
  return {{"passed", s.count(PropertyStatus::Pass)},
          {"failed", s.count(PropertyStatus::Fail)},
          {"skipped", s.count(PropertyStatus::Skip)},
          {"ok", s.passed()},
          {"properties", props}};
}

}  // namespace frozenstar
