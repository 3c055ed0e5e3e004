#pragma once

#include <string>
#include <vector>

#include "vfplan/floorplan.hpp"
#include "vfplan/planner.hpp"
#include "vfplan/skeleton.hpp"

namespace vfplan {

// Layered plan rendering: floorplan (black), skeleton ridges (gray),
// candidates (hollow), selected viewpoints (red), connectors (orange),
// overlap edges (green, width growing with overlap).  Layer ids are part of
// the format so downstream diffs stay stable.
std::string render_plan_svg(const Floorplan& fp, const GridSpec& spec,
                            const std::vector<ConvergingLine>& lines,
                            const std::vector<ConvergingPoint>& candidates,
                            const ViewpointNetwork& net,
                            const CandidateGraph& graph);

}  // namespace vfplan
