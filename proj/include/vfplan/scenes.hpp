#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vfplan {

// Bundled synthetic floorplans (name, JSON text), in a fixed order.  All
// coordinates are multiples of 0.2 m so grid cell centers never land on a
// wall line at the resolutions the tools use.
const std::vector<std::pair<std::string, std::string>>& bundled_scenes();

// JSON text of one bundled scene; throws ContractError for unknown names.
const std::string& bundled_scene(const std::string& name);

// Writes every bundled scene to dir/<name>.json; returns the file count.
int write_bundled_scenes(const std::string& dir);

}  // namespace vfplan
