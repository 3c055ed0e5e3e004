#include "vfplan/vfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vfplan/errors.hpp"
#include "vfplan/parallel.hpp"

namespace vfplan {

GridSpec GridSpec::cover(const Floorplan& fp, double resolution) {
  if (!(resolution > 0.0))
    throw ContractError("grid resolution must be positive");
  const BBox bb = fp.bbox();
  GridSpec spec;
  spec.resolution = resolution;
  spec.origin = {bb.xmin - resolution, bb.ymin - resolution};
  spec.width = std::max(
      1, (int)std::ceil((bb.width() + 2.0 * resolution) / resolution - 1e-9));
  spec.height = std::max(
      1, (int)std::ceil((bb.height() + 2.0 * resolution) / resolution - 1e-9));
  return spec;
}

std::vector<uint8_t> interior_mask(const Floorplan& fp, const GridSpec& spec) {
  std::vector<uint8_t> mask(spec.cells(), 0);
  std::vector<const std::vector<Point2>*> rings;
  rings.push_back(&fp.outer());
  for (const auto& h : fp.holes()) rings.push_back(&h);

  std::vector<double> xs;
  for (int iy = 0; iy < spec.height; ++iy) {
    const double y = spec.origin.y + (iy + 0.5) * spec.resolution;
    xs.clear();
    for (const auto* ring : rings) {
      const size_t n = ring->size();
      for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2& vi = (*ring)[i];
        const Point2& vj = (*ring)[j];
        if ((vi.y > y) != (vj.y > y))
          xs.push_back(vj.x + (y - vj.y) / (vi.y - vj.y) * (vi.x - vj.x));
      }
    }
    std::sort(xs.begin(), xs.end());
    // Even-odd: cells between crossing pairs are interior.
    for (size_t k = 0; k + 1 < xs.size(); k += 2) {
      const double x0 = xs[k], x1 = xs[k + 1];
      int lo = (int)std::ceil((x0 - spec.origin.x) / spec.resolution - 0.5);
      int hi = (int)std::floor((x1 - spec.origin.x) / spec.resolution - 0.5);
      lo = std::max(lo, 0);
      hi = std::min(hi, spec.width - 1);
      for (int ix = lo; ix <= hi; ++ix) {
        const double cx = spec.origin.x + (ix + 0.5) * spec.resolution;
        if (cx > x0 && cx < x1) mask[spec.index(ix, iy)] = 1;
      }
    }
  }
  return mask;
}

VisibilityField compute_vf(const VisibilityEngine& engine,
                           const BoundarySet& bounds, const GridSpec& spec,
                           int threads) {
  VisibilityField field;
  field.spec = spec;
  field.theta.assign(spec.cells(), kExteriorSentinel);
  const auto mask = interior_mask(engine.floorplan(), spec);
  const double r_max = engine.scanner().r_max;

  parallel_for(spec.height, threads, [&](int iy) {
    thread_local std::vector<Interval> tvis;
    for (int ix = 0; ix < spec.width; ++ix) {
      const size_t idx = spec.index(ix, iy);
      if (!mask[idx]) continue;
      const Point2 p = spec.cell_center(ix, iy);
      AngleSet arcs;
      for (const TargetSpan& sp : bounds.spans) {
        if (point_segment_distance(p, sp.a, sp.b) > r_max) continue;
        valid_t_intervals(engine.tree(), engine.scanner(), p, sp.seg(), tvis);
        const Point2 d = sp.b - sp.a;
        for (const Interval& iv : tvis) {
          if (iv.length() <= 1e-12) continue;
          const Point2 ra = sp.a + d * iv.lo - p;
          const Point2 rb = sp.a + d * iv.hi - p;
          arcs.add_arc(std::atan2(ra.y, ra.x), std::atan2(rb.y, rb.x));
        }
      }
      field.theta[idx] = arcs.measure();
    }
  });
  return field;
}

DistanceField compute_distance_field(const Floorplan& fp, const GridSpec& spec,
                                     int threads) {
  DistanceField field;
  field.spec = spec;
  field.dist.assign(spec.cells(), kExteriorSentinel);
  const auto mask = interior_mask(fp, spec);
  const auto& edges = fp.ring_edges();

  parallel_for(spec.height, threads, [&](int iy) {
    for (int ix = 0; ix < spec.width; ++ix) {
      const size_t idx = spec.index(ix, iy);
      if (!mask[idx]) continue;
      const Point2 p = spec.cell_center(ix, iy);
      double best = std::numeric_limits<double>::infinity();
      for (const Segment& e : edges)
        best = std::min(best, point_segment_distance(p, e.a, e.b));
      field.dist[idx] = best;
    }
  });
  return field;
}

namespace {

void export_impl(const GridSpec& spec, const std::vector<double>& values,
                 const std::string& base_path, const char* kind,
                 double scale_max, bool with_csv) {
  {
    std::ofstream pgm(base_path + ".pgm");
    if (!pgm) throw std::runtime_error("cannot write " + base_path + ".pgm");
    pgm << "P2\n" << spec.width << " " << spec.height << "\n65535\n";
    for (int iy = spec.height - 1; iy >= 0; --iy) {
      for (int ix = 0; ix < spec.width; ++ix) {
        const double v = values[spec.index(ix, iy)];
        int pix = 0;
        if (v != kExteriorSentinel && scale_max > 0.0)
          pix = std::clamp((int)std::lround(v / scale_max * 65535.0), 0, 65535);
        pgm << pix << (ix + 1 == spec.width ? '\n' : ' ');
      }
    }
  }
  {
    nlohmann::ordered_json side;
    side["resolution"] = spec.resolution;
    side["origin"] = {spec.origin.x, spec.origin.y};
    side["scale_max"] = scale_max;
    side["sentinel"] = "exterior";
    side["kind"] = kind;
    std::ofstream js(base_path + ".json");
    if (!js) throw std::runtime_error("cannot write " + base_path + ".json");
    js << side.dump(2) << "\n";
  }
  if (with_csv) {
    std::ofstream csv(base_path + ".csv");
    if (!csv) throw std::runtime_error("cannot write " + base_path + ".csv");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g", spec.resolution,
                  spec.origin.x, spec.origin.y);
    csv << "width,height,resolution,origin_x,origin_y\n"
        << spec.width << "," << spec.height << "," << buf << "\n";
    for (int iy = 0; iy < spec.height; ++iy) {
      for (int ix = 0; ix < spec.width; ++ix) {
        std::snprintf(buf, sizeof buf, "%.9g", values[spec.index(ix, iy)]);
        csv << buf << (ix + 1 == spec.width ? '\n' : ',');
      }
    }
  }
}

}  // namespace

void export_field(const VisibilityField& field, const std::string& base_path,
                  bool with_csv) {
  export_impl(field.spec, field.theta, base_path, "visibility",
              6.283185307, with_csv);
}

void export_field(const DistanceField& field, const std::string& base_path,
                  bool with_csv) {
  double max_v = 0.0;
  for (double v : field.dist)
    if (v != kExteriorSentinel) max_v = std::max(max_v, v);
  export_impl(field.spec, field.dist, base_path, "distance",
              max_v > 0.0 ? max_v : 1.0, with_csv);
}

CsvField import_field_csv(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot read " + csv_path);
  std::string header, meta;
  std::getline(in, header);
  std::getline(in, meta);
  CsvField out;
  {
    std::istringstream ss(meta);
    std::string tok;
    double fields[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 5 && std::getline(ss, tok, ','); ++i)
      fields[i] = std::stod(tok);
    out.spec.width = (int)fields[0];
    out.spec.height = (int)fields[1];
    out.spec.resolution = fields[2];
    out.spec.origin = {fields[3], fields[4]};
  }
  out.values.reserve(out.spec.cells());
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.values.push_back(std::stod(tok));
  }
  if (out.values.size() != out.spec.cells())
    throw std::runtime_error("CSV field has wrong cell count");
  return out;
}

}  // namespace vfplan
