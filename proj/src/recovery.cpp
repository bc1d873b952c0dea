#include "frozenstar/recovery.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "frozenstar/special_solution.hpp"

namespace frozenstar {

std::string_view to_string(RecoveryStatus s) noexcept {
  switch (s) {
    case RecoveryStatus::Ok: return "ok";
    case RecoveryStatus::RankDeficient: return "RankDeficient";
    case RecoveryStatus::NonPositiveReciprocal: return "NonPositiveReciprocal";
    case RecoveryStatus::TriangleViolation: return "TriangleViolation";
    case RecoveryStatus::ClosureViolation: return "ClosureViolation";
    case RecoveryStatus::MaxItersExceeded: return "MaxItersExceeded";
    case RecoveryStatus::AmbiguousSolution: return "AmbiguousSolution";
  }
  return "unknown";
}

ErrorCode error_code(RecoveryStatus s) noexcept {
  switch (s) {
    case RecoveryStatus::Ok: break;
    case RecoveryStatus::RankDeficient: return ErrorCode::RankDeficient;
    case RecoveryStatus::NonPositiveReciprocal: return ErrorCode::NonPositiveReciprocal;
    case RecoveryStatus::TriangleViolation: return ErrorCode::TriangleViolation;
    case RecoveryStatus::ClosureViolation: return ErrorCode::ClosureViolation;
    case RecoveryStatus::MaxItersExceeded: return ErrorCode::MaxItersExceeded;
    case RecoveryStatus::AmbiguousSolution: return ErrorCode::AmbiguousSolution;
  }
  return ErrorCode::VerificationFailed;
}

double TopologyReport::relative_error_bound(double noise) const {
  if (!(data_norm > 0.0)) return std::numeric_limits<double>::infinity();
  return condition * noise / data_norm;
}

namespace {

void check_observed(const PhiSampleSet& obs, Mode mode) {
  if (obs.values.size() != obs.grid.size()) {
    std::ostringstream msg;
    msg << "observed set has " << obs.grid.size() << " grid points but " << obs.values.size()
        << " values";
    throw Error(ErrorCode::GridMismatch, msg.str());
  }
  if (obs.grid.empty()) throw Error(ErrorCode::GridMismatch, "observed set is empty");
  if (obs.mode != mode) {
    throw Error(ErrorCode::GridMismatch, "observed samples were produced in a different mode");
  }
}

double residual_against(const ModelConfig& cfg, const PhiSampleSet& obs, Execution exec) {
  const PhiSampleSet model = sample_phi(cfg, obs.grid, exec);
  double sum = 0.0;
  for (std::size_t i = 0; i < obs.grid.size(); ++i) sum += std::norm(model.values[i] - obs.values[i]);
  return std::sqrt(sum);
}

double condition_of(const Eigen::VectorXd& singular) {
  if (singular.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = singular(singular.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return singular(0) / smin;
}

ModelConfig known_topology_model(const TopologyRecoveryProblem& p) {
  // Placeholder chords; only the chord-free blocks and the design row are used.
  return ModelConfig(p.lengths, std::vector<double>(p.lengths.size(), 1.0), p.potentials, p.mode,
                     p.pole_window);
}

void finish_chords(TopologyReport& r, const TopologyRecoveryProblem& p, Execution exec) {
  for (std::size_t j = 0; j < r.reciprocals.size(); ++j) {
    if (!(r.reciprocals[j] > 0.0)) {
      std::ostringstream msg;
      msg << "reciprocal chord " << j + 1 << " = " << r.reciprocals[j]
          << " is not positive; data inconsistent with the known lengths and potentials";
      r.status = RecoveryStatus::NonPositiveReciprocal;
      r.message = msg.str();
      return;
    }
  }
  r.chords.resize(r.reciprocals.size());
  for (std::size_t j = 0; j < r.chords.size(); ++j) r.chords[j] = 1.0 / r.reciprocals[j];
  const ModelConfig fitted(p.lengths, r.chords, p.potentials, p.mode, p.pole_window);
  r.residual_norm = residual_against(fitted, p.observed, exec);
}

}  // namespace

TopologyReport recover_chords(const TopologyRecoveryProblem& p, Execution exec) {
  check_observed(p.observed, p.mode);
  const ModelConfig known = known_topology_model(p);
  const std::size_t m = known.edge_count();
  const std::size_t n = p.observed.grid.size();

  Eigen::MatrixXd design(2 * n, m);
  Eigen::VectorXd rhs(2 * n);
  const long count = static_cast<long>(n);
  auto assemble = [&](long i) {
    const cplx z = p.observed.grid[i];
    const cplx psi = p.observed.values[i] - phi_blocks(known, z).without_chords();
    const std::vector<cplx> row = chord_design_row(known, z);
    rhs(2 * i) = psi.real();
    rhs(2 * i + 1) = psi.imag();
    for (std::size_t j = 0; j < m; ++j) {
      design(2 * i, j) = row[j].real();
      design(2 * i + 1, j) = row[j].imag();
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) assemble(i);
  } else {
    for (long i = 0; i < count; ++i) assemble(i);
  }

  TopologyReport r;
  r.method = "least-squares";
  r.data_norm = rhs.norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  r.condition = condition_of(svd.singularValues());
  const Eigen::VectorXd u = svd.solve(rhs);
  r.reciprocals.assign(u.data(), u.data() + u.size());
  if (!(r.condition <= p.max_condition)) {
    std::ostringstream msg;
    msg << "chord design matrix condition " << r.condition << " exceeds " << p.max_condition;
    if (m > 1) msg << " (edges with equal lengths cannot be told apart)";
    r.status = RecoveryStatus::RankDeficient;
    r.message = msg.str();
    return r;
  }
  finish_chords(r, p, exec);
  return r;
}

TopologyReport recover_chords_resonant(const TopologyRecoveryProblem& p) {
  check_observed(p.observed, p.mode);
  const ModelConfig known = known_topology_model(p);
  const std::size_t m = known.edge_count();

  std::vector<double> sum(m, 0.0);
  std::vector<int> hits(m, 0);
  TopologyReport r;
  r.method = "resonant";
  double data2 = 0.0;
  for (std::size_t jp = 0; jp < m; ++jp) {
    const double scale = known.length(jp) / kPi;
    std::vector<double> cosines, values;
    for (std::size_t i = 0; i < p.observed.grid.size(); ++i) {
      const cplx z = p.observed.grid[i];
      if (z.imag() != 0.0) continue;
      const double w = z.real() * scale;
      const double k = std::round(w);
      if (k == 0.0 || std::abs(w - k) > 1e-9) continue;
      const cplx prod = edge_product(known, jp, z);
      if (std::abs(prod) < 1e-8) continue;  // another edge resonates here too
      const cplx psi = p.observed.values[i] - phi_blocks(known, z).without_chords();
      data2 += std::norm(psi);
      cosines.push_back(cos_pi(z.real()));
      values.push_back((psi / (z * kPi * prod)).real());
    }
    const std::size_t cnt = cosines.size();
    double cmean = 0.0, ymean = 0.0;
    for (std::size_t i = 0; i < cnt; ++i) {
      cmean += cosines[i];
      ymean += values[i];
    }
    double sxx = 0.0, sxy = 0.0;
    if (cnt > 0) {
      cmean /= static_cast<double>(cnt);
      ymean /= static_cast<double>(cnt);
      for (std::size_t i = 0; i < cnt; ++i) {
        sxx += (cosines[i] - cmean) * (cosines[i] - cmean);
        sxy += (cosines[i] - cmean) * (values[i] - ymean);
      }
    }
    if (cnt < 2 || sxx < 1e-12 * static_cast<double>(cnt)) {
      std::ostringstream msg;
      msg << "vertex " << jp + 1 << ": need two resonant points with distinct cos(z pi), found "
          << cnt;
      r.status = RecoveryStatus::RankDeficient;
      r.message = msg.str();
      r.condition = std::numeric_limits<double>::infinity();
      return r;
    }
    // Condition of the [1, cos] design.
    Eigen::MatrixXd d(cnt, 2);
    for (std::size_t i = 0; i < cnt; ++i) d.row(i) << 1.0, cosines[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    r.condition = std::max(r.condition, condition_of(svd.singularValues()));

    const double slope = sxy / sxx;
    const double intercept = ymean - slope * cmean;
    sum[jp] += slope;
    hits[jp] += 1;
    sum[(jp + m - 1) % m] += intercept;
    hits[(jp + m - 1) % m] += 1;
  }
  r.data_norm = std::sqrt(data2);
  r.reciprocals.resize(m);
  for (std::size_t j = 0; j < m; ++j) r.reciprocals[j] = sum[j] / hits[j];
  if (!(r.condition <= p.max_condition)) {
    r.status = RecoveryStatus::RankDeficient;
    r.message = "resonant design is ill-conditioned";
    return r;
  }
  finish_chords(r, p, Execution::Serial);
  return r;
}

TopologyReport recover_angles(const TopologyRecoveryProblem& p, Execution exec) {
  if (p.lengths.size() < 3) {
    throw Error(ErrorCode::InvalidGeometry, "angle recovery needs at least 3 edges");
  }
  TopologyReport r = recover_chords(p, exec);
  if (!r.ok()) return r;
  try {
    const AngleRecovery a = principal_angles_from_chords(p.lengths, ExtendedGraphSpec{r.chords});
    r.angles = a.angles;
    r.closure_defect = a.closure_defect;
    if (a.closure_defect > p.closure_tolerance) {
      std::ostringstream msg;
      msg << "recovered angles miss 2pi by " << a.closure_defect;
      r.status = RecoveryStatus::ClosureViolation;
      r.message = msg.str();
    }
  } catch (const Error& e) {
    r.status = RecoveryStatus::TriangleViolation;
    r.message = e.what();
  }
  return r;
}

namespace {

struct PotentialModel {
  std::vector<PhiFeatures> features;
  std::vector<cplx> observed;
  std::size_t unknowns = 0;
};

PotentialModel build_potential_model(const PotentialRecoveryProblem& p, Execution exec) {
  check_observed(p.observed, p.mode);
  if (p.order < 1) throw Error(ErrorCode::InvalidModel, "truncation order must be positive");
  const std::size_t m = p.lengths.size();
  const ModelConfig base(p.lengths, p.chords, PotentialCoeffs::zeros(p.lengths, p.order), p.mode,
                         p.pole_window);
  PotentialModel model;
  model.observed = p.observed.values;
  model.unknowns = 2 * m * p.order;
  const long n = static_cast<long>(p.observed.grid.size());
  model.features.resize(n);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) model.features[i] = phi_features(base, p.observed.grid[i]);
  } else {
    for (long i = 0; i < n; ++i) model.features[i] = phi_features(base, p.observed.grid[i]);
  }

  for (std::size_t j = 0; j < m; ++j) {
    std::size_t usable = 0;
    for (const cplx& z : p.observed.grid) {
      if (std::abs(edge_product(base, j, z)) > 1e-8) ++usable;
    }
    if (usable < 2 * p.order + 1) {
      std::ostringstream msg;
      msg << "edge " << j + 1 << " has " << usable << " usable grid points, need "
          << 2 * p.order + 1;
      throw Error(ErrorCode::GridMismatch, msg.str());
    }
  }
  return model;
}

Eigen::VectorXd residual_of(const PotentialModel& model, const Eigen::VectorXd& theta) {
  const std::size_t n = model.features.size();
  const std::size_t k = model.unknowns / 2;
  Eigen::VectorXd r(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const PhiFeatures& f = model.features[i];
    cplx value = f.constant - model.observed[i];
    for (std::size_t c = 0; c < k; ++c) {
      const cplx q(theta(2 * c), theta(2 * c + 1));
      value += f.conj_linear[c] * std::conj(q) + f.quadratic[c] * std::norm(q) + f.linear[c] * q;
    }
    r(2 * i) = value.real();
    r(2 * i + 1) = value.imag();
  }
  return r;
}

Eigen::MatrixXd jacobian_of(const PotentialModel& model, const Eigen::VectorXd& theta) {
  const std::size_t n = model.features.size();
  const std::size_t k = model.unknowns / 2;
  const cplx I(0.0, 1.0);
  Eigen::MatrixXd jac(2 * n, model.unknowns);
  for (std::size_t i = 0; i < n; ++i) {
    const PhiFeatures& f = model.features[i];
    for (std::size_t c = 0; c < k; ++c) {
      const double a = theta(2 * c);
      const double b = theta(2 * c + 1);
      const cplx d_re = f.conj_linear[c] + 2.0 * a * f.quadratic[c] + f.linear[c];
      const cplx d_im = -I * f.conj_linear[c] + 2.0 * b * f.quadratic[c] + I * f.linear[c];
      jac(2 * i, 2 * c) = d_re.real();
      jac(2 * i + 1, 2 * c) = d_re.imag();
      jac(2 * i, 2 * c + 1) = d_im.real();
      jac(2 * i + 1, 2 * c + 1) = d_im.imag();
    }
  }
  return jac;
}

// Candidate start from the lifted problem: with s_c = |q_c|^2 as an extra
// real unknown the residual is linear, so one least-squares solve gives
// (Re q, Im q, s). Only (Re q, Im q) is kept. Empty when that system is
// numerically singular (e.g. when every length equals pi, where the channels
// of a coefficient are proportional).
std::optional<Eigen::VectorXd> lifted_start(const PotentialModel& model, double max_condition) {
  const std::size_t n = model.features.size();
  const std::size_t k = model.unknowns / 2;
  if (2 * n < 3 * k) return std::nullopt;
  const cplx I(0.0, 1.0);
  Eigen::MatrixXd a(2 * n, 3 * k);
  Eigen::VectorXd rhs(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const PhiFeatures& f = model.features[i];
    const cplx target = model.observed[i] - f.constant;
    rhs(2 * i) = target.real();
    rhs(2 * i + 1) = target.imag();
    for (std::size_t c = 0; c < k; ++c) {
      const cplx col_re = f.conj_linear[c] + f.linear[c];
      const cplx col_im = I * (f.linear[c] - f.conj_linear[c]);
      a(2 * i, 3 * c) = col_re.real();
      a(2 * i + 1, 3 * c) = col_re.imag();
      a(2 * i, 3 * c + 1) = col_im.real();
      a(2 * i + 1, 3 * c + 1) = col_im.imag();
      a(2 * i, 3 * c + 2) = f.quadratic[c].real();
      a(2 * i + 1, 3 * c + 2) = f.quadratic[c].imag();
    }
  }
  // Column equilibration keeps the condition estimate about the geometry of
  // the channels rather than their scale.
  Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < scale.size(); ++c) {
    if (!(scale(c) > 0.0)) return std::nullopt;
    a.col(c) /= scale(c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (!(condition_of(svd.singularValues()) <= max_condition)) return std::nullopt;
  const Eigen::VectorXd x = svd.solve(rhs).cwiseQuotient(scale);
  Eigen::VectorXd theta(model.unknowns);
  for (std::size_t c = 0; c < k; ++c) {
    theta(2 * c) = x(3 * c);
    theta(2 * c + 1) = x(3 * c + 1);
  }
  return theta;
}

PotentialCoeffs coeffs_from(const PotentialRecoveryProblem& p, const Eigen::VectorXd& theta) {
  PotentialCoeffs q = PotentialCoeffs::zeros(p.lengths, p.order);
  for (std::size_t j = 0; j < p.lengths.size(); ++j) {
    for (std::size_t n = 0; n < p.order; ++n) {
      const std::size_t c = j * p.order + n;
      q.coeffs[j][n] = {theta(2 * c), theta(2 * c + 1)};
    }
  }
  return q;
}

}  // namespace

GaussNewtonSystem potential_residual_system(const PotentialRecoveryProblem& p,
                                            const PotentialCoeffs& q, Execution exec) {
  const PotentialModel model = build_potential_model(p, exec);
  Eigen::VectorXd theta(model.unknowns);
  for (std::size_t j = 0; j < p.lengths.size(); ++j) {
    for (std::size_t n = 0; n < p.order; ++n) {
      const std::size_t c = j * p.order + n;
      theta(2 * c) = q.coeffs[j][n].real();
      theta(2 * c + 1) = q.coeffs[j][n].imag();
    }
  }
  const Eigen::VectorXd r = residual_of(model, theta);
  const Eigen::MatrixXd jac = jacobian_of(model, theta);
  GaussNewtonSystem out;
  out.residual.assign(r.data(), r.data() + r.size());
  out.jacobian.resize(jac.rows());
  for (Eigen::Index i = 0; i < jac.rows(); ++i) {
    out.jacobian[i].resize(jac.cols());
    for (Eigen::Index c = 0; c < jac.cols(); ++c) out.jacobian[i][c] = jac(i, c);
  }
  return out;
}

PotentialReport recover_potentials(const PotentialRecoveryProblem& p, Execution exec) {
  const PotentialModel model = build_potential_model(p, exec);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(model.unknowns);
  Eigen::VectorXd r = residual_of(model, theta);
  double norm = r.norm();
  if (!(norm < p.residual_tolerance)) {
    // Started from zero alone, Gauss-Newton can settle in a false basin
    // where an odd-order coefficient sits near its mirror root.
    if (const auto alt = lifted_start(model, p.max_condition)) {
      const Eigen::VectorXd alt_r = residual_of(model, *alt);
      if (alt_r.norm() < norm) {
        theta = *alt;
        r = alt_r;
        norm = alt_r.norm();
      }
    }
  }

  PotentialReport rep;
  rep.residual_history.push_back(norm);
  bool converged = false;
  std::string stop_reason;
  for (int it = 0; it < p.max_iterations; ++it) {
    if (norm < p.residual_tolerance) {
      converged = true;
      break;
    }
    const Eigen::MatrixXd jac = jacobian_of(model, theta);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = condition_of(svd.singularValues());
    rep.condition = cond * cond;
    const Eigen::VectorXd step = svd.solve(-r);

    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial_theta, trial_r;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      trial_theta = theta + t * step;
      trial_r = residual_of(model, trial_theta);
      if (trial_r.norm() < norm) {
        accepted = true;
        break;
      }
    }
    const double scale = std::max(1.0, theta.norm());
    if (!accepted) {
      // No descent left: either at the rounding floor or genuinely stuck.
      if (step.norm() <= 1e-8 * scale) {
        converged = true;
      } else {
        stop_reason = "line search found no descent";
      }
      break;
    }
    theta = trial_theta;
    r = trial_r;
    norm = r.norm();
    rep.iterations += 1;
    rep.residual_history.push_back(norm);
    // Only an undamped step says anything about convergence; a step cut
    // down by the line search is small because the search made it so.
    if (t == 1.0 && step.norm() < p.step_tolerance * scale) {
      converged = true;
      break;
    }
  }

  rep.coefficients = coeffs_from(p, theta);
  {
    const Eigen::MatrixXd jac = jacobian_of(model, theta);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const double cond = condition_of(svd.singularValues());
    rep.condition = cond * cond;
  }
  const ModelConfig fitted(p.lengths, p.chords, rep.coefficients, p.mode, p.pole_window);
  rep.residual_norm = residual_against(fitted, p.observed, exec);

  if (!(rep.condition <= p.max_condition)) {
    std::ostringstream msg;
    msg << "Gauss-Newton normal matrix condition " << rep.condition << " exceeds "
        << p.max_condition << "; the data do not pin down every coefficient";
    rep.status = RecoveryStatus::AmbiguousSolution;
    rep.message = msg.str();
  } else if (!converged) {
    rep.status = RecoveryStatus::MaxItersExceeded;
    rep.message = stop_reason.empty() ? "iteration budget exhausted" : stop_reason;
  }
  return rep;
}

namespace {

double max_gap(const ModelConfig& a, const ModelConfig& b, const std::vector<cplx>& grid) {
  double gap = 0.0;
  for (const cplx& z : grid) gap = std::max(gap, std::abs(phi(a, z) - phi(b, z)));
  return gap;
}

void require_same(bool same, const char* what) {
  if (!same) throw Error(ErrorCode::ConfigMismatch, std::string("configs differ in ") + what);
}

}  // namespace

double uniqueness_gap_topology(const ModelConfig& a, const ModelConfig& b,
                               const std::vector<cplx>& grid) {
  require_same(a.mode() == b.mode(), "mode");
  require_same(a.lengths() == b.lengths(), "edge lengths");
  require_same(a.potentials().order == b.potentials().order &&
                   a.potentials().coeffs == b.potentials().coeffs,
               "potentials");
  return max_gap(a, b, grid);
}

double uniqueness_gap_potential(const ModelConfig& a, const ModelConfig& b,
                                const std::vector<cplx>& grid) {
  require_same(a.mode() == b.mode(), "mode");
  require_same(a.lengths() == b.lengths(), "edge lengths");
  require_same(a.chords() == b.chords(), "chords");
  return max_gap(a, b, grid);
}

}  // namespace frozenstar
