#include "frozenstar/fd_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "frozenstar/characteristic.hpp"
#include "frozenstar/errors.hpp"

namespace frozenstar {

bool DiscretizedStar::is_real() const { return op.imag().cwiseAbs().maxCoeff() == 0.0; }

DiscretizedStar assemble(const ModelConfig& cfg, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::MeshTooCoarse, "mesh step must be positive");
  const std::size_t m = cfg.edge_count();
  const auto& q = cfg.potentials();
  DiscretizedStar d;
  std::size_t total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double l = cfg.length(j);
    const auto cells = static_cast<std::size_t>(std::max(1.0, std::round(l / h)));
    if (cells < 17) {
      std::ostringstream msg;
      msg << "edge " << j + 1 << " gets " << (cells > 0 ? cells - 1 : 0)
          << " interior points at h = " << h << ", need at least 16";
      throw Error(ErrorCode::MeshTooCoarse, msg.str());
    }
    d.offsets.push_back(total);
    d.interior.push_back(cells - 1);
    d.steps.push_back(l / static_cast<double>(cells));
    total += cells - 1;
  }
  const std::size_t v = total;
  d.op = Eigen::MatrixXcd::Zero(total + 1, total + 1);

  for (std::size_t j = 0; j < m; ++j) {
    const double hj = d.steps[j];
    const double inv_h2 = 1.0 / (hj * hj);
    const std::size_t base = d.offsets[j];
    const std::size_t count = d.interior[j];
    for (std::size_t i = 1; i <= count; ++i) {
      const std::size_t row = base + i - 1;
      const double x = hj * static_cast<double>(i);
      d.op(row, row) += 2.0 * inv_h2;
      if (i > 1) {
        d.op(row, row - 1) -= inv_h2;
      } else {
        d.op(row, v) -= inv_h2;  // left neighbour is the vertex
      }
      if (i < count) d.op(row, row + 1) -= inv_h2;  // right neighbour of the last is the tip (0)
      d.op(row, v) += sine_synthesis(q, j, x);       // frozen argument
    }

    // Vertex condition contributions: 3-point one-sided psi'(0) and the
    // trapezoid rule for integral psi conj(q), whose tip node is zero.
    d.op(v, v) += -1.5 / hj - 0.5 * hj * std::conj(sine_synthesis(q, j, 0.0));
    d.op(v, base) += 2.0 / hj;
    d.op(v, base + 1) += -0.5 / hj;
    for (std::size_t i = 1; i <= count; ++i) {
      const double x = hj * static_cast<double>(i);
      d.op(v, base + i - 1) -= hj * std::conj(sine_synthesis(q, j, x));
    }
  }
  return d;
}

namespace {

OracleSpectrum select_smallest(std::vector<cplx> all, std::size_t k, double h) {
  if (k > all.size()) k = all.size();
  std::partial_sort(all.begin(), all.begin() + static_cast<long>(k), all.end(),
                    [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
  all.resize(k);
  std::sort(all.begin(), all.end(), [](const cplx& a, const cplx& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  OracleSpectrum s;
  s.eigenvalues = std::move(all);
  s.h = h;
  s.count = k;
  return s;
}

double representative_step(const DiscretizedStar& d) {
  return d.steps.empty() ? 0.0 : *std::max_element(d.steps.begin(), d.steps.end());
}

}  // namespace

OracleSpectrum spectrum(const DiscretizedStar& d, std::size_t k) {
  const Eigen::Index n = static_cast<Eigen::Index>(d.interior_count());
  if (k > static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::EigensolverFailure, "more eigenvalues requested than unknowns");
  }
  const cplx pivot = d.op(n, n);
  if (std::abs(pivot) < 1e-300) {
    throw Error(ErrorCode::EigensolverFailure, "vertex row cannot be solved for psi(0)");
  }
  // psi(0) = -(vertex row restricted to the interior) . psi / pivot
  const Eigen::MatrixXcd reduced =
      d.op.topLeftCorner(n, n) - d.op.topRightCorner(n, 1) * (d.op.bottomLeftCorner(1, n) / pivot);

  std::vector<cplx> values;
  if (reduced.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(reduced.real(), false);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::EigensolverFailure, "real QR failed");
    const auto& ev = es.eigenvalues();
    values.assign(ev.data(), ev.data() + ev.size());
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(reduced, false);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::EigensolverFailure, "complex QR failed");
    }
    const auto& ev = es.eigenvalues();
    values.assign(ev.data(), ev.data() + ev.size());
  }
  return select_smallest(std::move(values), k, representative_step(d));
}

OracleSpectrum spectrum_generalized(const DiscretizedStar& d, std::size_t k) {
  if (!d.is_real()) {
    throw Error(ErrorCode::EigensolverFailure, "generalized path supports real operators only");
  }
  const Eigen::Index n = d.op.rows();
  Eigen::MatrixXd mass = Eigen::MatrixXd::Identity(n, n);
  mass(n - 1, n - 1) = 0.0;
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(d.op.real(), mass, false);
  if (ges.info() != Eigen::Success) throw Error(ErrorCode::EigensolverFailure, "QZ failed");
  const auto alphas = ges.alphas();
  const auto betas = ges.betas();
  const double scale = d.op.cwiseAbs().maxCoeff();
  std::vector<cplx> values;
  for (Eigen::Index i = 0; i < n; ++i) {
    // The singular mass matrix contributes one infinite eigenvalue.
    if (std::abs(betas(i)) <= 1e-12 * std::abs(alphas(i)) / std::max(scale, 1.0)) continue;
    values.push_back(alphas(i) / betas(i));
  }
  return select_smallest(std::move(values), k, representative_step(d));
}

std::vector<ZeroComparison> compare_phi_zeros(const ModelConfig& cfg,
                                              const OracleSpectrum& spectrum, double lo,
                                              double hi, std::size_t scan_points) {
  std::vector<ZeroComparison> table;
  if (!(hi > lo) || scan_points < 2) return table;

  std::vector<double> scan;
  for (std::size_t i = 0; i < scan_points; ++i) {
    scan.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(scan_points - 1));
  }
  for (double k = std::ceil(lo); k <= hi; k += 1.0) scan.push_back(k);
  std::sort(scan.begin(), scan.end());
  scan.erase(std::unique(scan.begin(), scan.end()), scan.end());

  auto f = [&](double z) { return phi(cfg, cplx(z, 0.0)).real(); };
  std::vector<double> zeros;
  double fa = f(scan[0]);
  if (fa == 0.0) zeros.push_back(scan[0]);
  for (std::size_t i = 1; i < scan.size(); ++i) {
    const double b = scan[i];
    const double fb = f(b);
    if (fb == 0.0) {
      zeros.push_back(b);
    } else if (fa != 0.0 && std::signbit(fa) != std::signbit(fb)) {
      double a = scan[i - 1], ya = fa, c = b;
      for (int it = 0; it < 200 && c - a > 1e-14 * std::max(1.0, std::abs(c)); ++it) {
        const double mid = 0.5 * (a + c);
        const double ym = f(mid);
        if (ym == 0.0) {
          a = c = mid;
          break;
        }
        if (std::signbit(ym) == std::signbit(ya)) {
          a = mid;
          ya = ym;
        } else {
          c = mid;
        }
      }
      zeros.push_back(0.5 * (a + c));
    }
    fa = fb;
  }

  const double l_ref = cfg.length(0);
  for (double z : zeros) {
    ZeroComparison row;
    row.z = z;
    row.lambda = (z * kPi / l_ref) * (z * kPi / l_ref);
    row.distance = std::numeric_limits<double>::infinity();
    for (const cplx& ev : spectrum.eigenvalues) {
      const double dist = std::abs(cplx(row.lambda, 0.0) - ev);
      if (dist < row.distance) {
        row.distance = dist;
        row.nearest = ev;
      }
    }
    table.push_back(row);
  }
  return table;
}

}  // namespace frozenstar
