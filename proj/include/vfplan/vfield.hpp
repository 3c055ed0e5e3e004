#pragma once

#include <string>
#include <vector>

#include "vfplan/floorplan.hpp"
#include "vfplan/geometry.hpp"
#include "vfplan/visibility.hpp"

namespace vfplan {

// Cells outside the floorplan interior carry this sentinel, kept distinct
// from 0 so "sees nothing" and "exterior" stay distinguishable.
inline constexpr double kExteriorSentinel = -1.0;

struct GridSpec {
  double resolution = 0.02;  // meters per cell
  Point2 origin;             // lower-left corner of cell (0,0)
  int width = 0;             // cells
  int height = 0;

  Point2 cell_center(int ix, int iy) const {
    return {origin.x + (ix + 0.5) * resolution,
            origin.y + (iy + 0.5) * resolution};
  }
  size_t index(int ix, int iy) const {
    return static_cast<size_t>(iy) * width + ix;
  }
  size_t cells() const { return static_cast<size_t>(width) * height; }

  // Grid covering the floorplan bounding box with one cell of margin.
  static GridSpec cover(const Floorplan& fp, double resolution);
};

struct VisibilityField {
  GridSpec spec;
  std::vector<double> theta;  // radians; kExteriorSentinel outside
};

struct DistanceField {
  GridSpec spec;
  std::vector<double> dist;  // meters; kExteriorSentinel outside
};

// True for cells whose center lies strictly inside the floorplan; computed
// by scanline parity, matching Floorplan::contains away from edges.
std::vector<uint8_t> interior_mask(const Floorplan& fp, const GridSpec& spec);

// Valid-observed-angle per interior cell: the union of angular intervals
// subtended by the visible pieces of every boundary span, clamped to 2*pi.
VisibilityField compute_vf(const VisibilityEngine& engine,
                           const BoundarySet& bounds, const GridSpec& spec,
                           int threads = 1);

// Exact Euclidean distance from each interior cell center to the nearest
// ring edge.
DistanceField compute_distance_field(const Floorplan& fp,
                                     const GridSpec& spec, int threads = 1);

// Writes base_path + ".pgm" (P2, 0..65535) and base_path + ".json" sidecar;
// with_csv also writes base_path + ".csv" (row-major, lossless to 1e-6).
void export_field(const VisibilityField& field, const std::string& base_path,
                  bool with_csv = false);
void export_field(const DistanceField& field, const std::string& base_path,
                  bool with_csv = false);

// Reads a field back from a CSV written by export_field.
struct CsvField {
  GridSpec spec;
  std::vector<double> values;
};
CsvField import_field_csv(const std::string& csv_path);

}  // namespace vfplan
