#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vfplan/floorplan.hpp"
#include "vfplan/metrics.hpp"
#include "vfplan/overlap.hpp"
#include "vfplan/planner.hpp"
#include "vfplan/skeleton.hpp"
#include "vfplan/vfield.hpp"

namespace vfplan {

enum class Profile { Indoor, Outdoor, Custom };

std::string profile_name(Profile p);

// Full parameter set for one planning run.  Execution parameters (thread
// count, output paths) are deliberately not part of the config: they never
// change the result.
struct PlanConfig {
  Profile profile = Profile::Indoor;
  double r_min = 0.6;
  double r_max = 30.0;
  double resolution = 0.02;
  double partition_length = 0.1;
  double tau = 0.4;
  OverlapMetric overlap_metric = OverlapMetric::MeanLen;
  bool include_openings = false;
  bool windows_opaque = false;
  bool reinforce_cycles = false;

  static PlanConfig for_profile(Profile p);
  void validate() const;  // throws ValidationError
};

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct PlanResult {
  std::shared_ptr<BoundarySet> bounds;  // owned: records point into it
  GridSpec grid;
  DistanceField dist;
  SkeletonGrid skeleton;
  std::vector<ConvergingLine> lines;
  std::vector<ConvergingPoint> candidates;  // densely reindexed
  std::vector<std::pair<int, int>> flagged_pairs;
  std::vector<VisRecord> records;
  CoverageTable table;
  CandidateGraph graph;
  ViewpointNetwork net;
  MetricsReport report;
  std::optional<VisibilityField> vf;  // only when requested
  std::vector<StageTiming> timings;
};

// The whole pipeline: boundary partition, distance field, skeleton,
// candidate refinement, visibility records, coverage + overlap structures,
// greedy optimization, metrics.  Any thread count produces the same result.
PlanResult run_plan(const Floorplan& fp, const PlanConfig& config,
                    int threads = 1, bool with_vf = false);

// Canonical network serialization; identical inputs give identical bytes.
std::string network_json(const PlanResult& res, const PlanConfig& config);

// Driver for `vfplan plan`: writes network.json and plan.svg into out_dir
// (plus vf.* and dist.* field exports when emit_vf), prints the metrics
// table to stdout.  Errors propagate to the caller.
int run_plan_cli(const PlanConfig& config, const std::string& input_path,
                 const std::string& out_dir, bool emit_vf, int threads);

// Driver for `vfplan sweep`: one pipeline run per value on a copy of the
// base config, one CSV row each; failures become rows with a status and the
// sweep continues.
int run_sweep_cli(const PlanConfig& base, const std::string& axis,
                  const std::vector<double>& values,
                  const std::string& input_path, const std::string& out_dir,
                  int threads);

}  // namespace vfplan
