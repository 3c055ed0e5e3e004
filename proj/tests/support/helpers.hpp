#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vfplan/floorplan.hpp"
#include "vfplan/geometry.hpp"
#include "vfplan/overlap.hpp"
#include "vfplan/visibility.hpp"

namespace vfplan::test {

inline std::string scene_path(const std::string& name) {
  return std::string(VFPLAN_SCENE_DIR) + "/" + name + ".json";
}

inline Floorplan load_scene(const std::string& name) {
  std::ifstream in(scene_path(name));
  if (!in) throw std::runtime_error("missing scene fixture: " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_floorplan(ss.str());
}

// Rejection-sampled strict-interior point.
inline Point2 random_interior_point(const Floorplan& fp, std::mt19937& rng) {
  const BBox bb = fp.bbox();
  std::uniform_real_distribution<double> ux(bb.xmin, bb.xmax);
  std::uniform_real_distribution<double> uy(bb.ymin, bb.ymax);
  for (int i = 0; i < 100000; ++i) {
    Point2 p{ux(rng), uy(rng)};
    if (fp.contains(p)) return p;
  }
  throw std::runtime_error("could not sample an interior point");
}

// Reference blocking test: linear scan over every occluder.
inline bool brute_line_of_sight(Point2 p, Point2 q,
                                const std::vector<Segment>& occluders) {
  for (const Segment& s : occluders)
    if (segment_blocks(p, q, s.a, s.b)) return false;
  return true;
}

inline std::vector<VisRecord> records_for(const VisibilityEngine& engine,
                                          const BoundarySet& bounds,
                                          const std::vector<Point2>& points) {
  std::vector<VisRecord> recs;
  recs.reserve(points.size());
  for (Point2 p : points) recs.push_back(make_vis_record(engine, p, bounds));
  return recs;
}

// Visible length of one boundary segment from a cached record.
inline double visible_length_of(const VisRecord& rec,
                                const BoundarySegment& seg) {
  double got = 0.0;
  for (const Interval& w : rec.vis[seg.span]) {
    const double lo = std::max(w.lo, seg.t0);
    const double hi = std::min(w.hi, seg.t1);
    if (hi > lo) got += hi - lo;
  }
  return got * rec.bounds->spans[seg.span].length();
}

}  // namespace vfplan::test
