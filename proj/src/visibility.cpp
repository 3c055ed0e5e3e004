#include "vfplan/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vfplan {

namespace {

// Parameter interval of A + t*(B-A) inside the closed disk (p, r), clamped
// to [0,1]; empty interval when the segment misses the disk.
Interval disk_interval(Point2 p, Point2 A, Point2 d, double len2, double r) {
  const Point2 w = A - p;
  const double half_b = dot(w, d);
  const double c = dot(w, w) - r * r;
  const double disc = half_b * half_b - len2 * c;
  if (disc <= 0.0) return {0.0, 0.0};
  const double root = std::sqrt(disc);
  const double lo = std::max((-half_b - root) / len2, 0.0);
  const double hi = std::min((-half_b + root) / len2, 1.0);
  if (hi <= lo) return {0.0, 0.0};
  return {lo, hi};
}

// Scratch buffers reused across calls; thread-local keeps concurrent field
// computation allocation-free and independent.
thread_local std::vector<int> tl_cand;
thread_local std::vector<double> tl_ts;
thread_local std::vector<Interval> tl_visible;

}  // namespace

// Visible parameter intervals of `target` from `p`: the radial annulus
// clip minus everything occluded.  Exact: visibility transitions can only
// happen at the collected critical parameters, so one midpoint
// classification per slice decides the whole slice.
void valid_t_intervals(const BspTree& tree, const ScannerModel& scanner,
                       Point2 p, const Segment& target,
                       std::vector<Interval>& out) {
  out.clear();
  const Point2 A = target.a;
  const Point2 d = target.b - target.a;
  const double len2 = dot(d, d);
  if (len2 <= kGeomEps * kGeomEps) return;

  const Interval in_max = disk_interval(p, A, d, len2, scanner.r_max);
  if (in_max.hi <= in_max.lo) return;
  const Interval in_min = disk_interval(p, A, d, len2, scanner.r_min);

  Interval base[2];
  int nbase = 0;
  if (in_min.hi <= in_min.lo) {
    base[nbase++] = in_max;
  } else {
    if (in_min.lo > in_max.lo)
      base[nbase++] = {in_max.lo, std::min(in_min.lo, in_max.hi)};
    if (in_min.hi < in_max.hi)
      base[nbase++] = {std::max(in_min.hi, in_max.lo), in_max.hi};
  }
  if (nbase == 0) return;

  auto& cand = tl_cand;
  tree.collect_triangle(p, target.a, target.b, cand);

  auto& ts = tl_ts;
  ts.clear();
  ts.push_back(0.0);
  ts.push_back(1.0);
  for (int i = 0; i < nbase; ++i) {
    ts.push_back(base[i].lo);
    ts.push_back(base[i].hi);
  }
  const auto& occluders = tree.occluders();
  for (int id : cand) {
    const Segment& o = occluders[id];
    const Point2 u = o.b - o.a;
    // The sightline sweeps past an occluder endpoint.
    for (const Point2 e : {o.a, o.b}) {
      const double den = cross(d, e - p);
      if (den != 0.0) {
        const double t = cross(p - A, e - p) / den;
        if (t > 1e-12 && t < 1.0 - 1e-12) ts.push_back(t);
      }
    }
    const double den_line = cross(d, u);
    if (std::abs(den_line) > kGeomEps * kGeomEps) {
      // The target crosses the occluder's supporting line.
      const double t = cross(o.a - A, u) / den_line;
      if (t > 1e-12 && t < 1.0 - 1e-12) ts.push_back(t);
    } else {
      // Parallel occluder.  When viewpoint and target share its supporting
      // line, blocking switches where the target passes the occluder ends.
      const double ulen = norm(u);
      if (ulen > kGeomEps &&
          std::abs(cross(u, A - o.a)) / ulen <= kGeomEps &&
          std::abs(cross(u, p - o.a)) / ulen <= kGeomEps) {
        for (const Point2 e : {o.a, o.b}) {
          const double t = dot(e - A, d) / len2;
          if (t > 1e-12 && t < 1.0 - 1e-12) ts.push_back(t);
        }
      }
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double a, double b) { return b - a <= 1e-12; }),
           ts.end());

  auto& visible = tl_visible;
  visible.clear();
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    const double lo = ts[i], hi = ts[i + 1];
    if (hi - lo <= 1e-12) continue;
    const double tm = 0.5 * (lo + hi);
    bool in_base = false;
    for (int k = 0; k < nbase; ++k)
      in_base = in_base || (base[k].lo < tm && tm < base[k].hi);
    if (!in_base) continue;
    const Point2 X = A + d * tm;
    bool blocked = false;
    for (int id : cand) {
      const Segment& o = occluders[id];
      if (segment_blocks(p, X, o.a, o.b)) {
        blocked = true;
        break;
      }
    }
    if (blocked) continue;
    if (!visible.empty() && lo <= visible.back().hi + 1e-12) {
      visible.back().hi = hi;
    } else {
      visible.push_back({lo, hi});
    }
  }
  out.assign(visible.begin(), visible.end());
}

VisibleSpan valid_span(const BspTree& tree, const ScannerModel& scanner,
                       Point2 p, const Segment& target) {
  VisibleSpan out;
  valid_t_intervals(tree, scanner, p, target, out.t);
  const Point2 d = target.b - target.a;
  const double len = norm(d);
  AngleSet arcs;
  for (const Interval& iv : out.t) {
    if (iv.length() * len <= 1e-12) continue;
    const Point2 a = target.a + d * iv.lo;
    const Point2 b = target.a + d * iv.hi;
    out.pieces.emplace_back(a, b);
    out.visible_length += iv.length() * len;
    const Point2 ra = a - p;
    const Point2 rb = b - p;
    arcs.add_arc(std::atan2(ra.y, ra.x), std::atan2(rb.y, rb.x));
  }
  out.theta_valid = arcs.measure();
  return out;
}

bool line_of_sight(const BspTree& tree, Point2 p, Point2 q) {
  return !tree.blocked(p, q);
}

VisibilityEngine::VisibilityEngine(const Floorplan& fp,
                                   std::vector<Segment> occluders,
                                   ScannerModel scanner)
    : fp_(&fp), scanner_(scanner), tree_(std::move(occluders)) {
  if (!(scanner_.r_min > 0.0) || !(scanner_.r_min < scanner_.r_max))
    throw std::invalid_argument("scanner requires 0 < r_min < r_max");
}

bool VisibilityEngine::line_of_sight(Point2 p, Point2 q) const {
  return vfplan::line_of_sight(tree_, p, q);
}

VisibleSpan VisibilityEngine::valid_span(Point2 p,
                                         const Segment& target) const {
  if (!fp_->contains(p))
    throw std::domain_error("viewpoint is not strictly inside the floorplan");
  return vfplan::valid_span(tree_, scanner_, p, target);
}

bool VisibilityEngine::coverage_entry(Point2 p, const Segment& target,
                                      double coverage_fraction) const {
  if (!(coverage_fraction > 0.0) || coverage_fraction > 1.0)
    throw std::invalid_argument("coverage_fraction must be in (0, 1]");
  const VisibleSpan vs = valid_span(p, target);
  return vs.visible_length >= coverage_fraction * target.length() - 1e-9;
}

std::vector<std::vector<Interval>> VisibilityEngine::visible_intervals(
    Point2 p, const BoundarySet& bounds) const {
  if (!fp_->contains(p))
    throw std::domain_error("viewpoint is not strictly inside the floorplan");
  std::vector<std::vector<Interval>> out(bounds.spans.size());
  for (size_t s = 0; s < bounds.spans.size(); ++s) {
    const TargetSpan& sp = bounds.spans[s];
    if (point_segment_distance(p, sp.a, sp.b) > scanner_.r_max) continue;
    valid_t_intervals(tree_, scanner_, p, sp.seg(), out[s]);
  }
  return out;
}

}  // namespace vfplan
