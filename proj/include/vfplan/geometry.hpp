#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace vfplan {

// Geometric tolerance in meters (and for normalized cross products, which
// are signed distances in meters).
inline constexpr double kGeomEps = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
  friend Point2 operator*(double s, Point2 a) { return a * s; }
  friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::sqrt(dot(a, a)); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

enum class SegmentKind { Wall, Window, DoorFrame };

struct Segment {
  Point2 a;
  Point2 b;

  double length() const { return dist(a, b); }
  Point2 at(double t) const { return a + (b - a) * t; }
};

struct BBox {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void expand(Point2 p) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  void expand(const BBox& o) {
    xmin = std::min(xmin, o.xmin);
    ymin = std::min(ymin, o.ymin);
    xmax = std::max(xmax, o.xmax);
    ymax = std::max(ymax, o.ymax);
  }
  bool intersects(const BBox& o, double pad = 0.0) const {
    return xmin <= o.xmax + pad && o.xmin <= xmax + pad &&
           ymin <= o.ymax + pad && o.ymin <= ymax + pad;
  }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

inline BBox segment_bbox(const Segment& s) {
  BBox b;
  b.expand(s.a);
  b.expand(s.b);
  return b;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b);

// True iff the closed occluder [a,b] blocks the open sightline (p,q):
// they intersect at a point strictly interior to the sightline that is not
// an occluder endpoint. Grazing within kGeomEps counts as touching.
bool segment_blocks(Point2 p, Point2 q, Point2 a, Point2 b);

// Even-odd point-in-ring test (boundary points are classified
// deterministically but not reliably).
bool point_in_ring(Point2 p, const std::vector<Point2>& ring);

// Positive for counterclockwise rings.
double ring_signed_area(const std::vector<Point2>& ring);

bool rings_properly_intersect(const std::vector<Point2>& a,
                              const std::vector<Point2>& b);
bool ring_self_intersects(const std::vector<Point2>& ring);

// Closed-segment intersection (shared endpoints and grazing contact count).
bool segments_intersect_closed(Point2 a, Point2 b, Point2 c, Point2 d);

// Half-open 1D intervals used for parametric sub-spans of a segment.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// All helpers keep lists sorted, disjoint, and free of empty intervals.
std::vector<Interval> interval_union(std::vector<Interval> xs);
std::vector<Interval> interval_intersect(const std::vector<Interval>& a,
                                         const std::vector<Interval>& b);
std::vector<Interval> interval_subtract(const std::vector<Interval>& a,
                                        const std::vector<Interval>& b);
double interval_measure(const std::vector<Interval>& xs);

// Accumulates angular intervals on the circle and reports the measure of
// their union, clamped to 2*pi.
class AngleSet {
 public:
  // Adds the minor arc between the directions of u and v (both relative to
  // the apex); width is at most pi.
  void add_arc(double alpha, double beta);
  double measure() const;
  bool empty() const { return arcs_.empty(); }

 private:
  // [start, end] with 0 <= start < 2*pi, start <= end <= start + 2*pi.
  std::vector<Interval> arcs_;
};

}  // namespace vfplan
