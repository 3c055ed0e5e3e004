#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "vfplan/floorplan.hpp"
#include "vfplan/vfield.hpp"

namespace vfplan {

// One-pixel-wide, 8-connected medial-axis approximation on the field grid.
struct SkeletonGrid {
  GridSpec spec;
  std::vector<uint8_t> mask;

  bool at(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix >= spec.width || iy >= spec.height)
      return false;
    return mask[spec.index(ix, iy)] != 0;
  }
  size_t count() const;
};

enum class PointKind { Joint, Endpoint, InsertedMidpoint };

struct ConvergingPoint {
  int id = 0;
  PointKind kind = PointKind::Joint;
  int ix = 0, iy = 0;  // skeleton cell
  Point2 position;     // cell center
};

// Maximal skeleton ridge between two converging points.  Path cells are the
// non-joint pixels in order; a closed ridge returns to its start.
struct ConvergingLine {
  int a = 0, b = 0;  // ConvergingPoint ids
  std::vector<std::pair<int, int>> path;
  double length = 0.0;  // meters along cell centers
  bool closed = false;
};

// Morphological thinning of the interior, followed by removal of spur
// branches shorter than prune_below meters (at least 3 cells).
// Throws InfeasibleError when the interior is too thin to skeletonize at
// this resolution.
SkeletonGrid extract_skeleton(const DistanceField& dist, const Floorplan& fp,
                              double prune_below);

// Joints: clusters of pixels with >= 3 skeleton neighbors, one point per
// cluster at its centroid snapped onto the cluster.  Leaf tips (and bare
// isolated pixels) are emitted as kind=Endpoint.
std::vector<ConvergingPoint> detect_joints(const SkeletonGrid& sk);

// Decomposes the skeleton into ridges between converging points; every
// skeleton pixel lands in exactly one ridge path or one joint cluster.
// Closed loops get one synthetic Endpoint appended to `points` at their
// lowest row-major cell.
std::vector<ConvergingLine> build_converging_lines(
    const SkeletonGrid& sk, std::vector<ConvergingPoint>& points);

struct RefineOutcome {
  std::vector<ConvergingPoint> candidates;      // points + inserted midpoints
  std::vector<std::pair<int, int>> flagged;     // pairs left below tau
};

// Recursively inserts arc-length midpoints on every ridge whose endpoint
// pair overlaps below tau, until all adjacent pairs reach tau or the
// sub-ridge is shorter than 2 cells (such pairs are flagged, not looped).
RefineOutcome refine_candidates(
    const SkeletonGrid& sk, const std::vector<ConvergingLine>& lines,
    const std::vector<ConvergingPoint>& points,
    const std::function<double(Point2, Point2)>& overlap_fn, double tau);

}  // namespace vfplan
