#pragma once

#include <vector>

#include "vfplan/planner.hpp"
#include "vfplan/visibility.hpp"

namespace vfplan {

// Ground truth for small instances, found by exhaustive subset enumeration.
// -1 means no qualifying subset exists at any size.
struct ExactSolution {
  int opt_cover = -1;  // minimal count for full coverage
  int opt_full = -1;   // minimal count for coverage + connectivity
  std::vector<int> cover_witness;
  std::vector<int> full_witness;
};

// Enumerates subsets in increasing cardinality (lexicographic within each
// size); refuses instances above max_candidates since the search is 2^n.
ExactSolution exact_solve(const CoverageTable& table,
                          const CandidateGraph& graph,
                          int max_candidates = 18);

// Independent estimate of the valid observed angle: a stratified midpoint
// ray sweep across the target's subtended arc, blocking tested per ray
// against raw occluder segments.  Shares no geometry code with valid_span.
double sampling_visibility_oracle(Point2 p, const Segment& target,
                                  const ScannerModel& scanner,
                                  const std::vector<Segment>& occluders,
                                  long rays);

}  // namespace vfplan
