#pragma once

#include "vfplan/planner.hpp"

namespace vfplan {

struct MetricsReport {
  int vc = 0;
  double wapl = 0.0;
  double coverage_percent = 0.0;
  int component_count = 0;
  int disconnected_pairs = 0;  // ordered pairs with no path
};

// Mean over ordered node pairs of the shortest weighted path (w = 1 -
// overlap) in the induced subgraph; pairs with no path count 100 each;
// fewer than two nodes gives 0.
double compute_wapl(const ViewpointNetwork& net, const CandidateGraph& graph);

MetricsReport compute_report(const ViewpointNetwork& net,
                             const CoverageTable& table,
                             const CandidateGraph& graph);

}  // namespace vfplan
