#pragma once

#include <cstddef>
#include <vector>

namespace frozenstar {

/// Planar star graph: m edges from the origin, edge lengths and the angles
/// between consecutive edges (the last angle closes the fan back to edge 1).
class StarGraphSpec {
 public:
  static constexpr double kClosureTolerance = 1e-9;

  /// Throws Error(InvalidGeometry) unless m >= 2, all lengths > 0, every
  /// angle lies in (0, 2pi) and the angles sum to 2pi.
  StarGraphSpec(std::vector<double> lengths, std::vector<double> angles,
                double closure_tolerance = kClosureTolerance);

  std::size_t edge_count() const { return lengths_.size(); }
  const std::vector<double>& lengths() const { return lengths_; }
  const std::vector<double>& angles() const { return angles_; }

 private:
  std::vector<double> lengths_;
  std::vector<double> angles_;
};

/// Chords of the closed extension: chords[j] joins tip j to tip j+1 (cyclic).
struct ExtendedGraphSpec {
  std::vector<double> chords;
};

ExtendedGraphSpec chords_from_angles(const StarGraphSpec& g);

struct AngleRecovery {
  std::vector<double> angles;  // principal branch, each in (0, pi)
  double closure_defect = 0.0;  // |sum(angles) - 2pi|
};

// Inverse law of cosines on every chord. Reflex angles come back as their
// (0, pi) mirror, which shows up as a closure defect rather than being fixed.
// Throws TriangleViolation if a chord cannot close a triangle, InvalidGeometry
// when m < 3.
AngleRecovery principal_angles_from_chords(const std::vector<double>& lengths,
                                           const ExtendedGraphSpec& chords);

/// As above, but also throws ClosureViolation when the defect exceeds `tolerance`.
AngleRecovery angles_from_chords(const std::vector<double>& lengths,
                                 const ExtendedGraphSpec& chords, double tolerance = 1e-6);

}  // namespace frozenstar
