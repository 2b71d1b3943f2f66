#pragma once

#include <string>
#include <vector>

#include "nevlab/function_handle.hpp"

namespace nevlab {

struct WindingOptions {
  double snap_threshold = 0.25;
  int min_nodes = 64;
  int max_nodes = 1 << 16;
  /// Boundary obstruction when min |f - a| on the contour is below this
  /// fraction of max |f - a|.
  double boundary_tolerance = 1e-9;
  /// Relative radius changes tried, in order, after a boundary obstruction.
  std::vector<double> jitter{1e-4, -1e-4, 3e-4, -3e-4, 1e-3, -1e-3};
};

struct WindingResult {
  int count = 0;
  double contour_error = 0.0;
  DiskSpec disk;
  /// The raw contour integral (1/2 pi i) of f'/(f - a).
  Complex raw{};
  int nodes = 0;
  /// "trapezoid" or "argument-tracking" (used beyond the node cap).
  std::string method;
  bool jittered = false;
};

/// Number of zeros of f - a in the open disk, with multiplicity.
///
/// Declared poles of f inside the disk are cleared first, so the count is
/// of a-points only. Throws BoundaryObstruction (with the offending node)
/// when f - a nearly vanishes on the circle.
WindingResult winding_count(const FunctionHandle& f, Complex a, const DiskSpec& disk,
                            const WindingOptions& options = {});

/// winding_count, retrying on boundary obstruction with the radius jitter
/// sequence. The disk actually used is reported in the result.
WindingResult winding_count_jittered(const FunctionHandle& f, Complex a, const DiskSpec& disk,
                                     const WindingOptions& options = {});

/// Adaptive argument tracking of f - a around the circle. Slower than the
/// trapezoid rule but free of its node cap.
WindingResult winding_by_tracking(const FunctionHandle& f, Complex a, const DiskSpec& disk,
                                  const WindingOptions& options = {});

struct LocateOptions {
  WindingOptions winding{};
  int max_depth = 48;
  int newton_iterations = 60;
};

/// a-points of f in the open disk, located by recursive subdivision of the
/// disk into polar sectors (argument tracking on sector boundaries) with
/// Newton polishing. Cells below `tol` in diameter that still hold several
/// points are reported as one location with the total multiplicity. The
/// multiplicities always sum to the winding count of the disk; anything
/// else raises NonConvergence.
PointList locate_a_points(const FunctionHandle& f, Complex a, const DiskSpec& disk, double tol,
                          const LocateOptions& options = {});

struct LocateResult {
  PointList points;
  DiskSpec disk;
  bool jittered = false;
};

/// locate_a_points, retrying with the radius jitter sequence when the
/// circle passes too close to an a-point.
LocateResult locate_a_points_jittered(const FunctionHandle& f, Complex a, const DiskSpec& disk, double tol,
                                      const LocateOptions& options = {});

}  // namespace nevlab
