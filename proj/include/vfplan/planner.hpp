#pragma once

#include <cstdint>
#include <vector>

#include "vfplan/overlap.hpp"

namespace vfplan {

// Boolean coverage matrix: one bitset row per candidate, one bit per
// boundary segment.
struct CoverageTable {
  int candidates = 0;
  int segments = 0;
  int words = 0;  // 64-bit words per row
  std::vector<uint64_t> bits;
  std::vector<int> cover_counts;  // per candidate
  std::vector<int> uncoverable;   // segment ids no candidate covers

  const uint64_t* row(int c) const { return bits.data() + (size_t)c * words; }
  bool covers(int c, int s) const {
    return (row(c)[s >> 6] >> (s & 63)) & 1;
  }
};

// A segment counts as covered when its visible fraction reaches
// coverage_fraction (full visibility by default).
CoverageTable build_coverage_table(const std::vector<VisRecord>& recs,
                                   const BoundarySet& bounds,
                                   double coverage_fraction = 1.0);

// Candidate overlap graph: an edge wherever the chosen ratio reaches tau,
// weighted 1 - overlap.
struct CandidateGraph {
  int n = 0;
  double tau = 0.0;
  OverlapMetric metric = OverlapMetric::MeanLen;
  std::vector<double> overlap;        // n*n, symmetric, diagonal 1
  std::vector<std::vector<int>> adj;  // sorted neighbor lists

  double at(int a, int b) const { return overlap[(size_t)a * n + b]; }
  bool has_edge(int a, int b) const {
    return a != b && at(a, b) >= tau - 1e-12;
  }
  double weight(int a, int b) const { return 1.0 - at(a, b); }
};

CandidateGraph build_candidate_graph(const std::vector<VisRecord>& recs,
                                     double tau, OverlapMetric metric,
                                     int threads = 1);

enum class Role { Cover, Connector };

struct ViewpointNetwork {
  std::vector<int> selected;  // candidate ids in selection order
  std::vector<Role> roles;    // parallel to selected
  std::vector<int> accepted_leaves;  // degree-1 nodes reinforcement kept
  int cover_stage_count = 0;  // size right after the coverage stage

  bool contains(int candidate) const;
};

// Coverage stage: greedy max-new-coverage selection expanding along the
// overlap-graph frontier, reseeding when the frontier cannot reach the
// remaining segments.  Throws InfeasibleError when the table has
// uncoverable segments.
ViewpointNetwork greedy_select(const CoverageTable& table,
                               const CandidateGraph& graph);

// Joins the connected components of the selection with exact minimum-weight
// paths through the full candidate graph, closest pair first; path interiors
// become connector viewpoints.  Throws InfeasibleError when no path exists.
ViewpointNetwork augment_connectivity(ViewpointNetwork net,
                                      const CandidateGraph& graph);

// Optional pass: give each degree-1 node a cycle through the cheapest
// unselected candidate adjacent to it and to another selected node, within
// a 2*(1-tau) weight budget; nodes left at degree 1 are recorded.
ViewpointNetwork reinforce_cycles(ViewpointNetwork net,
                                  const CandidateGraph& graph);

// Removes viewpoints whose removal keeps full coverage and connectivity,
// highest id first, until the network is irreducible.
ViewpointNetwork prune_redundant(ViewpointNetwork net,
                                 const CoverageTable& table,
                                 const CandidateGraph& graph);

}  // namespace vfplan
