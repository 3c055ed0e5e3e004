#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vfplan/geometry.hpp"

namespace vfplan {

struct Opening {
  SegmentKind kind = SegmentKind::Window;
  Point2 a;
  Point2 b;
};

/// Validated closed polygonal domain: one counterclockwise outer ring,
/// clockwise holes strictly inside it, and openings tagged on the walls.
/// Immutable after construction; units are meters.
class Floorplan {
 public:
  Floorplan(std::vector<Point2> outer, std::vector<std::vector<Point2>> holes,
            std::vector<Opening> openings);

  const std::vector<Point2>& outer() const { return outer_; }
  const std::vector<std::vector<Point2>>& holes() const { return holes_; }
  const std::vector<Opening>& openings() const { return openings_; }

  BBox bbox() const { return bbox_; }

  // All ring edges (outer then holes, traversal order), ignoring openings.
  const std::vector<Segment>& ring_edges() const { return ring_edges_; }

  // Strict interior: inside the outer ring and outside every hole, more
  // than kGeomEps away from any ring edge.
  bool contains(Point2 p) const;

 private:
  std::vector<Point2> outer_;
  std::vector<std::vector<Point2>> holes_;
  std::vector<Opening> openings_;
  std::vector<Segment> ring_edges_;
  BBox bbox_;
};

Floorplan parse_floorplan(std::string_view json_text);
Floorplan parse_floorplan(std::istream& in);
std::string floorplan_to_json(const Floorplan& fp);

/// Maximal straight boundary piece remaining after door and window spans are
/// carved out of the ring edges, or a window span itself.
struct TargetSpan {
  Point2 a;
  Point2 b;
  SegmentKind kind = SegmentKind::Wall;
  double length() const { return dist(a, b); }
  Segment seg() const { return {a, b}; }
  Point2 at(double t) const { return a + (b - a) * t; }
};

/// One coverage target: an equal-length fragment of a span.
struct BoundarySegment {
  int id = 0;
  int span = 0;  // index into BoundarySet::spans
  double t0 = 0.0;
  double t1 = 1.0;
  SegmentKind kind = SegmentKind::Wall;
  Point2 a;
  Point2 b;
  double length() const { return dist(a, b); }
  Segment seg() const { return {a, b}; }
};

struct BoundarySet {
  std::vector<TargetSpan> spans;
  std::vector<BoundarySegment> segments;
  double partition_length = 0.0;
  bool includes_openings = false;
};

/// Splits every target span into ceil(len/partition_length) equal fragments.
/// Window spans are included iff include_openings; door spans never are.
BoundarySet partition_boundary(const Floorplan& fp, double partition_length,
                               bool include_openings);

/// Occluding geometry: wall spans (doors and windows carved out), plus the
/// window panes themselves iff windows_opaque.
std::vector<Segment> occluder_segments(const Floorplan& fp,
                                       bool windows_opaque);

}  // namespace vfplan
