#pragma once

#include <utility>
#include <vector>

#include "vfplan/bsp.hpp"
#include "vfplan/floorplan.hpp"
#include "vfplan/geometry.hpp"

namespace vfplan {

// Annular scanner: geometry closer than r_min or farther than r_max from the
// viewpoint is not observed.
struct ScannerModel {
  double r_min = 0.6;
  double r_max = 30.0;
};

// Portions of one target segment observable from a query point.
struct VisibleSpan {
  std::vector<Interval> t;  // visible parameter intervals on the target
  std::vector<std::pair<Point2, Point2>> pieces;
  double visible_length = 0.0;  // meters
  double theta_valid = 0.0;     // radians subtended at the query point
};

// Geometric core: visible portions of `target` from `p` under the scanner
// annulus and the occluders indexed by `tree`.  Pure geometry, no domain
// checks.
VisibleSpan valid_span(const BspTree& tree, const ScannerModel& scanner,
                       Point2 p, const Segment& target);

// Allocation-light core of valid_span: only the visible parameter
// intervals, written into `out`.  Hot path for field computation.
void valid_t_intervals(const BspTree& tree, const ScannerModel& scanner,
                       Point2 p, const Segment& target,
                       std::vector<Interval>& out);

// True iff the open segment (p,q) crosses no occluder interior; touching an
// occluder endpoint does not block.
bool line_of_sight(const BspTree& tree, Point2 p, Point2 q);

// Facade bundling floorplan, occluders, and scanner; enforces the
// interior-point precondition on span queries.
class VisibilityEngine {
 public:
  VisibilityEngine(const Floorplan& fp, std::vector<Segment> occluders,
                   ScannerModel scanner);

  const Floorplan& floorplan() const { return *fp_; }
  const BspTree& tree() const { return tree_; }
  const ScannerModel& scanner() const { return scanner_; }

  bool line_of_sight(Point2 p, Point2 q) const;

  // Throws std::domain_error unless p is strictly inside the floorplan.
  VisibleSpan valid_span(Point2 p, const Segment& target) const;

  // True iff the visible length of `target` from `p` is at least
  // coverage_fraction of its length.
  bool coverage_entry(Point2 p, const Segment& target,
                      double coverage_fraction = 1.0) const;

  // Visible parameter intervals for every span of `bounds`, as one batch.
  std::vector<std::vector<Interval>> visible_intervals(
      Point2 p, const BoundarySet& bounds) const;

 private:
  const Floorplan* fp_;
  ScannerModel scanner_;
  BspTree tree_;
};

}  // namespace vfplan
