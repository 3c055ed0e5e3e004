#pragma once

#include <string>
#include <vector>

#include "vfplan/floorplan.hpp"
#include "vfplan/visibility.hpp"

namespace vfplan {

// Everything a candidate viewpoint sees of the boundary, cached once so
// pairwise overlap and coverage queries stay cheap.
struct VisRecord {
  Point2 viewpoint;
  const BoundarySet* bounds = nullptr;
  std::vector<std::vector<Interval>> vis;  // per span, parameter intervals
  double total_length = 0.0;               // meters of visible boundary
  double total_angle = 0.0;                // union of subtended arcs, <= 2*pi
};

VisRecord make_vis_record(const VisibilityEngine& engine, Point2 p,
                          const BoundarySet& bounds);

struct PairVisibility {
  double l_ab = 0.0;        // commonly visible boundary length
  double theta_a_ab = 0.0;  // angle the common part subtends at a
  double theta_b_ab = 0.0;  // ... and at b
};

// Throws ContractError when the records were built over different boundary
// sets.
PairVisibility intersect_visible(const VisRecord& a, const VisRecord& b);

// The five overlap ratios, each clamped to [0,1]; a zero denominator makes
// its ratio 0.
struct OverlapResult {
  double min_len = 0.0;
  double mean_len = 0.0;
  double union_len = 0.0;
  double union_ang = 0.0;
  double mean_ang = 0.0;
};

OverlapResult overlap_ratios(const VisRecord& a, const VisRecord& b);

enum class OverlapMetric { MinLen, MeanLen, UnionLen, UnionAng, MeanAng };

double select_ratio(const OverlapResult& r, OverlapMetric metric);
OverlapMetric parse_overlap_metric(const std::string& name);  // ParseError
std::string overlap_metric_name(OverlapMetric metric);

}  // namespace vfplan
