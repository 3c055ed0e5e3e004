#include "vfplan/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "vfplan/errors.hpp"

namespace vfplan {

namespace {

constexpr double kTinyT = 1e-12;

// Minor arc subtended at `apex` by the [lo,hi] parameter slice of `span`.
// A straight piece never subtends pi or more from a point off its line.
void add_piece_arc(AngleSet& arcs, Point2 apex, const TargetSpan& span,
                   Interval iv) {
  Point2 u = span.at(iv.lo) - apex;
  Point2 v = span.at(iv.hi) - apex;
  if (norm(u) < kGeomEps || norm(v) < kGeomEps) return;
  arcs.add_arc(std::atan2(u.y, u.x), std::atan2(v.y, v.x));
}

}  // namespace

VisRecord make_vis_record(const VisibilityEngine& engine, Point2 p,
                          const BoundarySet& bounds) {
  VisRecord rec;
  rec.viewpoint = p;
  rec.bounds = &bounds;
  rec.vis = engine.visible_intervals(p, bounds);

  AngleSet arcs;
  for (size_t i = 0; i < bounds.spans.size(); ++i) {
    const TargetSpan& span = bounds.spans[i];
    double len = span.length();
    for (const Interval& iv : rec.vis[i]) {
      if (iv.length() * len <= kTinyT) continue;
      rec.total_length += iv.length() * len;
      add_piece_arc(arcs, p, span, iv);
    }
  }
  rec.total_angle = arcs.measure();
  return rec;
}

PairVisibility intersect_visible(const VisRecord& a, const VisRecord& b) {
  if (a.bounds == nullptr || a.bounds != b.bounds)
    throw ContractError("overlap requested across different boundary sets");

  PairVisibility out;
  AngleSet arcs_a, arcs_b;
  const BoundarySet& bounds = *a.bounds;
  for (size_t i = 0; i < bounds.spans.size(); ++i) {
    std::vector<Interval> common = interval_intersect(a.vis[i], b.vis[i]);
    if (common.empty()) continue;
    const TargetSpan& span = bounds.spans[i];
    double len = span.length();
    for (const Interval& iv : common) {
      if (iv.length() * len <= kTinyT) continue;
      out.l_ab += iv.length() * len;
      add_piece_arc(arcs_a, a.viewpoint, span, iv);
      add_piece_arc(arcs_b, b.viewpoint, span, iv);
    }
  }
  out.theta_a_ab = arcs_a.measure();
  out.theta_b_ab = arcs_b.measure();
  return out;
}

OverlapResult overlap_ratios(const VisRecord& a, const VisRecord& b) {
  PairVisibility pv = intersect_visible(a, b);
  double la = a.total_length, lb = b.total_length;
  double ta = a.total_angle, tb = b.total_angle;

  auto ratio = [](double num, double den) {
    if (den <= 0.0) return 0.0;
    return std::clamp(num / den, 0.0, 1.0);
  };

  OverlapResult r;
  r.min_len = ratio(pv.l_ab, std::min(la, lb));
  r.mean_len = ratio(2.0 * pv.l_ab, la + lb);
  r.union_len = ratio(pv.l_ab, la + lb - pv.l_ab);
  r.union_ang = ratio(pv.theta_a_ab + pv.theta_b_ab, ta + tb);
  r.mean_ang = std::clamp(ratio(pv.theta_a_ab, 2.0 * ta) +
                              ratio(pv.theta_b_ab, 2.0 * tb),
                          0.0, 1.0);
  return r;
}

double select_ratio(const OverlapResult& r, OverlapMetric metric) {
  switch (metric) {
    case OverlapMetric::MinLen:
      return r.min_len;
    case OverlapMetric::MeanLen:
      return r.mean_len;
    case OverlapMetric::UnionLen:
      return r.union_len;
    case OverlapMetric::UnionAng:
      return r.union_ang;
    case OverlapMetric::MeanAng:
      return r.mean_ang;
  }
  throw ContractError("unknown overlap metric");
}

OverlapMetric parse_overlap_metric(const std::string& name) {
  if (name == "min-len") return OverlapMetric::MinLen;
  if (name == "mean-len") return OverlapMetric::MeanLen;
  if (name == "union-len") return OverlapMetric::UnionLen;
  if (name == "union-ang") return OverlapMetric::UnionAng;
  if (name == "mean-ang") return OverlapMetric::MeanAng;
  throw ParseError("unknown overlap metric '" + name + "'", 0);
}

std::string overlap_metric_name(OverlapMetric metric) {
  switch (metric) {
    case OverlapMetric::MinLen:
      return "min-len";
    case OverlapMetric::MeanLen:
      return "mean-len";
    case OverlapMetric::UnionLen:
      return "union-len";
    case OverlapMetric::UnionAng:
      return "union-ang";
    case OverlapMetric::MeanAng:
      return "mean-ang";
  }
  throw ContractError("unknown overlap metric");
}

}  // namespace vfplan
