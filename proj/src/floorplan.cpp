#include "vfplan/floorplan.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "vfplan/errors.hpp"

namespace vfplan {

namespace {

using nlohmann::ordered_json;

std::vector<Point2> clean_ring(std::vector<Point2> ring,
                               const std::string& name) {
  // Drop duplicate consecutive vertices.
  std::vector<Point2> tmp;
  for (const Point2& p : ring) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError("non-finite coordinate in ring " + name, name);
    if (tmp.empty() || dist(tmp.back(), p) > kGeomEps) tmp.push_back(p);
  }
  while (tmp.size() > 1 && dist(tmp.front(), tmp.back()) <= kGeomEps)
    tmp.pop_back();

  // Merge collinear consecutive vertices.
  std::vector<Point2> out;
  const size_t n = tmp.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2 prev = tmp[(i + n - 1) % n];
    const Point2 cur = tmp[i];
    const Point2 next = tmp[(i + 1) % n];
    if (point_segment_distance(cur, prev, next) <= kGeomEps &&
        dot(cur - prev, next - cur) >= 0.0) {
      continue;
    }
    out.push_back(cur);
  }
  if (out.size() < 3)
    throw ValidationError("ring " + name + " has fewer than 3 vertices", name);
  return out;
}

std::vector<Point2> oriented(std::vector<Point2> ring, bool want_ccw) {
  const double area = ring_signed_area(ring);
  if ((area > 0.0) != want_ccw) std::reverse(ring.begin(), ring.end());
  return ring;
}

bool ring_strictly_inside(const std::vector<Point2>& inner,
                          const std::vector<Point2>& outer) {
  for (const Point2& p : inner) {
    if (!point_in_ring(p, outer)) return false;
    for (size_t i = 0, n = outer.size(); i < n; ++i) {
      if (point_segment_distance(p, outer[i], outer[(i + 1) % n]) <= kGeomEps)
        return false;
    }
  }
  return !rings_properly_intersect(inner, outer);
}

Point2 read_point(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError("coordinate must be a [x, y] number pair", "input");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point2> read_ring(const ordered_json& j, const std::string& name) {
  if (!j.is_array())
    throw ValidationError("ring " + name + " must be an array", name);
  std::vector<Point2> ring;
  ring.reserve(j.size());
  for (const auto& p : j) ring.push_back(read_point(p));
  return ring;
}

}  // namespace

Floorplan::Floorplan(std::vector<Point2> outer,
                     std::vector<std::vector<Point2>> holes,
                     std::vector<Opening> openings)
    : openings_(std::move(openings)) {
  outer_ = oriented(clean_ring(std::move(outer), "outer"), /*want_ccw=*/true);
  if (ring_self_intersects(outer_))
    throw ValidationError("outer ring self-intersects", "outer");

  for (size_t h = 0; h < holes.size(); ++h) {
    const std::string name = "hole " + std::to_string(h);
    auto ring = oriented(clean_ring(std::move(holes[h]), name),
                         /*want_ccw=*/false);
    if (ring_self_intersects(ring))
      throw ValidationError("ring " + name + " self-intersects", name);
    if (!ring_strictly_inside(ring, outer_))
      throw ValidationError(
          "ring " + name +
              " touches or leaves the outer ring: interior would be "
              "disconnected or empty",
          name);
    holes_.push_back(std::move(ring));
  }
  for (size_t i = 0; i < holes_.size(); ++i) {
    for (size_t j = i + 1; j < holes_.size(); ++j) {
      const bool contact =
          rings_properly_intersect(holes_[i], holes_[j]) ||
          point_in_ring(holes_[i][0], holes_[j]) ||
          point_in_ring(holes_[j][0], holes_[i]);
      if (contact)
        throw ValidationError("holes " + std::to_string(i) + " and " +
                                  std::to_string(j) +
                                  " touch: interior would be disconnected",
                              "hole " + std::to_string(j));
    }
  }

  auto push_edges = [this](const std::vector<Point2>& ring) {
    for (size_t i = 0, n = ring.size(); i < n; ++i)
      ring_edges_.push_back({ring[i], ring[(i + 1) % n]});
  };
  push_edges(outer_);
  for (const auto& h : holes_) push_edges(h);
  for (const Point2& p : outer_) bbox_.expand(p);

  for (const Opening& op : openings_) {
    if (op.kind == SegmentKind::Wall)
      throw ValidationError("opening kind must be window or door-frame",
                            "openings");
    if (dist(op.a, op.b) <= kGeomEps)
      throw ValidationError("degenerate opening segment", "openings");
    bool on_wall = false;
    for (const Segment& e : ring_edges_) {
      if (point_segment_distance(op.a, e.a, e.b) <= 1e-6 &&
          point_segment_distance(op.b, e.a, e.b) <= 1e-6) {
        on_wall = true;
        break;
      }
    }
    if (!on_wall)
      throw ValidationError("opening does not lie on any wall", "openings");
  }
}

bool Floorplan::contains(Point2 p) const {
  if (!point_in_ring(p, outer_)) return false;
  for (const auto& h : holes_)
    if (point_in_ring(p, h)) return false;
  for (const Segment& e : ring_edges_)
    if (point_segment_distance(p, e.a, e.b) <= kGeomEps) return false;
  return true;
}

Floorplan parse_floorplan(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!doc.is_object())
    throw ValidationError("top-level JSON value must be an object", "input");
  if (doc.contains("units") && doc["units"] != "meters")
    throw ValidationError("units must be \"meters\"", "input");
  if (!doc.contains("outer"))
    throw ValidationError("missing \"outer\" ring", "input");

  std::vector<Point2> outer = read_ring(doc["outer"], "outer");
  std::vector<std::vector<Point2>> holes;
  if (doc.contains("holes")) {
    for (size_t h = 0; h < doc["holes"].size(); ++h)
      holes.push_back(read_ring(doc["holes"][h], "hole " + std::to_string(h)));
  }
  std::vector<Opening> openings;
  if (doc.contains("openings")) {
    for (const auto& jop : doc["openings"]) {
      Opening op;
      const std::string kind = jop.value("kind", "");
      if (kind == "window") {
        op.kind = SegmentKind::Window;
      } else if (kind == "door-frame") {
        op.kind = SegmentKind::DoorFrame;
      } else {
        throw ValidationError("opening kind must be window or door-frame",
                              "openings");
      }
      if (!jop.contains("segment") || jop["segment"].size() != 2)
        throw ValidationError("opening needs a two-point segment", "openings");
      op.a = read_point(jop["segment"][0]);
      op.b = read_point(jop["segment"][1]);
      openings.push_back(op);
    }
  }
  return Floorplan(std::move(outer), std::move(holes), std::move(openings));
}

Floorplan parse_floorplan(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_floorplan(std::string_view(ss.str()));
}

std::string floorplan_to_json(const Floorplan& fp) {
  ordered_json doc;
  doc["units"] = "meters";
  auto ring_json = [](const std::vector<Point2>& ring) {
    ordered_json arr = ordered_json::array();
    for (const Point2& p : ring) arr.push_back({p.x, p.y});
    return arr;
  };
  doc["outer"] = ring_json(fp.outer());
  doc["holes"] = ordered_json::array();
  for (const auto& h : fp.holes()) doc["holes"].push_back(ring_json(h));
  doc["openings"] = ordered_json::array();
  for (const Opening& op : fp.openings()) {
    ordered_json jop;
    jop["kind"] = op.kind == SegmentKind::Window ? "window" : "door-frame";
    jop["segment"] = {{op.a.x, op.a.y}, {op.b.x, op.b.y}};
    doc["openings"].push_back(jop);
  }
  return doc.dump(2) + "\n";
}

namespace {

struct EdgeOpening {
  double t0, t1;
  SegmentKind kind;
};

// Openings on one ring edge as parameter intervals along it.
std::vector<EdgeOpening> openings_on_edge(const Segment& e,
                                          const std::vector<Opening>& ops) {
  std::vector<EdgeOpening> out;
  const Point2 d = e.b - e.a;
  const double len2 = dot(d, d);
  for (const Opening& op : ops) {
    if (point_segment_distance(op.a, e.a, e.b) <= 1e-6 &&
        point_segment_distance(op.b, e.a, e.b) <= 1e-6) {
      double t0 = dot(op.a - e.a, d) / len2;
      double t1 = dot(op.b - e.a, d) / len2;
      if (t0 > t1) std::swap(t0, t1);
      t0 = std::clamp(t0, 0.0, 1.0);
      t1 = std::clamp(t1, 0.0, 1.0);
      if (t1 - t0 > kGeomEps) out.push_back({t0, t1, op.kind});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EdgeOpening& a, const EdgeOpening& b) {
              return a.t0 < b.t0;
            });
  return out;
}

// Carves every ring edge into wall spans and opening spans, in traversal
// order along the edge.
std::vector<TargetSpan> carve_spans(const Floorplan& fp) {
  std::vector<TargetSpan> spans;
  for (const Segment& e : fp.ring_edges()) {
    const auto ops = openings_on_edge(e, fp.openings());
    double t = 0.0;
    for (const EdgeOpening& op : ops) {
      if (op.t0 - t > kGeomEps)
        spans.push_back({e.at(t), e.at(op.t0), SegmentKind::Wall});
      spans.push_back({e.at(op.t0), e.at(op.t1),
                       op.kind == SegmentKind::Window ? SegmentKind::Window
                                                      : SegmentKind::DoorFrame});
      t = std::max(t, op.t1);
    }
    if (1.0 - t > kGeomEps)
      spans.push_back({e.at(t), e.at(1.0), SegmentKind::Wall});
  }
  return spans;
}

}  // namespace

BoundarySet partition_boundary(const Floorplan& fp, double partition_length,
                               bool include_openings) {
  if (!(partition_length > 0.0))
    throw ContractError("partition_length must be positive");

  BoundarySet bs;
  bs.partition_length = partition_length;
  bs.includes_openings = include_openings;

  for (const TargetSpan& sp : carve_spans(fp)) {
    if (sp.kind == SegmentKind::DoorFrame) continue;  // passage, not a target
    if (sp.kind == SegmentKind::Window && !include_openings) continue;
    bs.spans.push_back(sp);
  }

  int next_id = 0;
  for (size_t s = 0; s < bs.spans.size(); ++s) {
    const TargetSpan& sp = bs.spans[s];
    const double len = sp.length();
    const int k = std::max(1, (int)std::ceil(len / partition_length - 1e-9));
    for (int i = 0; i < k; ++i) {
      BoundarySegment seg;
      seg.id = next_id++;
      seg.span = (int)s;
      seg.t0 = (double)i / k;
      seg.t1 = (double)(i + 1) / k;
      seg.kind = sp.kind;
      seg.a = sp.at(seg.t0);
      seg.b = sp.at(seg.t1);
      bs.segments.push_back(seg);
    }
  }
  return bs;
}

std::vector<Segment> occluder_segments(const Floorplan& fp,
                                       bool windows_opaque) {
  std::vector<Segment> out;
  for (const TargetSpan& sp : carve_spans(fp)) {
    if (sp.kind == SegmentKind::Wall ||
        (sp.kind == SegmentKind::Window && windows_opaque)) {
      out.push_back(sp.seg());
    }
  }
  return out;
}

}  // namespace vfplan
