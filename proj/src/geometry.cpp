#include "frozenstar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "frozenstar/errors.hpp"
#include "frozenstar/numeric.hpp"

namespace frozenstar {

StarGraphSpec::StarGraphSpec(std::vector<double> lengths, std::vector<double> angles,
                             double closure_tolerance)
    : lengths_(std::move(lengths)), angles_(std::move(angles)) {
  const std::size_t m = lengths_.size();
  if (m < 2) throw Error(ErrorCode::InvalidGeometry, "star graph needs at least 2 edges");
  if (angles_.size() != m) {
    throw Error(ErrorCode::InvalidGeometry, "angle count must equal edge count");
  }
  for (double l : lengths_) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::InvalidGeometry, "edge lengths must be positive and finite");
    }
  }
  for (double t : angles_) {
    if (!(t > 0.0 && t < 2.0 * kPi)) {
      throw Error(ErrorCode::InvalidGeometry, "every angle must lie in (0, 2pi)");
    }
  }
  const double total = std::accumulate(angles_.begin(), angles_.end(), 0.0);
  if (std::abs(total - 2.0 * kPi) > closure_tolerance) {
    std::ostringstream msg;
    msg << "angles sum to " << total << ", expected 2pi";
    throw Error(ErrorCode::InvalidGeometry, msg.str());
  }
}

ExtendedGraphSpec chords_from_angles(const StarGraphSpec& g) {
  const auto& l = g.lengths();
  const auto& theta = g.angles();
  const std::size_t m = l.size();
  ExtendedGraphSpec ext;
  ext.chords.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double a = l[j];
    const double b = l[(j + 1) % m];
    // 2ab(1 - cos t) = 4ab sin^2(t/2) avoids cancellation at small angles.
    const double s = std::sin(0.5 * theta[j]);
    ext.chords[j] = std::sqrt((a - b) * (a - b) + 4.0 * a * b * s * s);
  }
  return ext;
}

AngleRecovery principal_angles_from_chords(const std::vector<double>& lengths,
                                           const ExtendedGraphSpec& chords) {
  const std::size_t m = lengths.size();
  if (m < 3) {
    throw Error(ErrorCode::InvalidGeometry, "angles are chord-determined only for m >= 3");
  }
  if (chords.chords.size() != m) {
    throw Error(ErrorCode::InvalidGeometry, "chord count must equal edge count");
  }
  AngleRecovery out;
  out.angles.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double a = lengths[j];
    const double b = lengths[(j + 1) % m];
    const double c = chords.chords[j];
    const double arg = (a * a + b * b - c * c) / (2.0 * a * b);
    if (!(c > 0.0) || !(arg > -1.0 && arg < 1.0)) {
      std::ostringstream msg;
      msg << "chord " << j + 1 << " = " << c << " does not close a triangle with " << a
          << " and " << b;
      throw Error(ErrorCode::TriangleViolation, msg.str());
    }
    // Half-angle form, stable near 0 and pi:
    // sin^2(t/2) = (c^2 - (a-b)^2) / 4ab, cos^2(t/2) = ((a+b)^2 - c^2) / 4ab.
    const double s2 = (c - (a - b)) * (c + (a - b));
    const double c2 = (a + b - c) * (a + b + c);
    out.angles[j] = 2.0 * std::atan2(std::sqrt(std::max(s2, 0.0)), std::sqrt(std::max(c2, 0.0)));
  }
  const double total = std::accumulate(out.angles.begin(), out.angles.end(), 0.0);
  out.closure_defect = std::abs(total - 2.0 * kPi);
  return out;
}

AngleRecovery angles_from_chords(const std::vector<double>& lengths,
                                 const ExtendedGraphSpec& chords, double tolerance) {
  AngleRecovery out = principal_angles_from_chords(lengths, chords);
  if (out.closure_defect > tolerance) {
    std::ostringstream msg;
    msg << "recovered angles miss 2pi by " << out.closure_defect;
    throw Error(ErrorCode::ClosureViolation, msg.str());
  }
  return out;
}

}  // namespace frozenstar
