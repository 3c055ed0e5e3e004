#include "vfplan/svg.hpp"

#include <cstdio>
#include <sstream>

namespace vfplan {

namespace {

struct Mapper {
  double xmin, ymax, scale, margin;

  double px(double x) const { return (x - xmin + margin) * scale; }
  double py(double y) const { return (ymax + margin - y) * scale; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void ring_path(std::ostringstream& out, const std::vector<Point2>& ring,
               const Mapper& m) {
  out << "M";
  for (size_t i = 0; i < ring.size(); ++i) {
    if (i) out << " L";
    out << ' ' << num(m.px(ring[i].x)) << ' ' << num(m.py(ring[i].y));
  }
  out << " Z ";
}

void circle(std::ostringstream& out, Point2 p, double r, const Mapper& m,
            const char* style) {
  out << "  <circle cx=\"" << num(m.px(p.x)) << "\" cy=\"" << num(m.py(p.y))
      << "\" r=\"" << num(r) << "\" " << style << "/>\n";
}

}  // namespace

std::string render_plan_svg(const Floorplan& fp, const GridSpec& spec,
                            const std::vector<ConvergingLine>& lines,
                            const std::vector<ConvergingPoint>& candidates,
                            const ViewpointNetwork& net,
                            const CandidateGraph& graph) {
  BBox bb = fp.bbox();
  Mapper m{bb.xmin, bb.ymax, 40.0, 1.0};
  double w = (bb.width() + 2.0) * m.scale;
  double h = (bb.height() + 2.0) * m.scale;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w)
      << "\" height=\"" << num(h) << "\" viewBox=\"0 0 " << num(w) << ' '
      << num(h) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out << "<g id=\"floorplan\" fill=\"none\" stroke=\"black\" "
         "stroke-width=\"2\">\n  <path d=\"";
  ring_path(out, fp.outer(), m);
  for (const auto& hole : fp.holes()) ring_path(out, hole, m);
  out << "\"/>\n";
  for (const Opening& op : fp.openings()) {
    const char* color =
        op.kind == SegmentKind::Window ? "steelblue" : "burlywood";
    out << "  <line x1=\"" << num(m.px(op.a.x)) << "\" y1=\""
        << num(m.py(op.a.y)) << "\" x2=\"" << num(m.px(op.b.x)) << "\" y2=\""
        << num(m.py(op.b.y)) << "\" stroke=\"" << color
        << "\" stroke-width=\"3\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"skeleton\" fill=\"none\" stroke=\"silver\" "
         "stroke-width=\"1\">\n";
  for (const ConvergingLine& line : lines) {
    if (line.path.empty()) continue;
    out << "  <polyline points=\"";
    size_t n = line.path.size();
    for (size_t i = 0; i < n; i += 5) {
      Point2 p = spec.cell_center(line.path[i].first, line.path[i].second);
      out << num(m.px(p.x)) << ',' << num(m.py(p.y)) << ' ';
    }
    Point2 endp = spec.cell_center(line.path[n - 1].first,
                                   line.path[n - 1].second);
    out << num(m.px(endp.x)) << ',' << num(m.py(endp.y)) << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"candidates\">\n";
  for (const ConvergingPoint& c : candidates)
    circle(out, c.position, 3.0, m,
           "fill=\"none\" stroke=\"dimgray\" stroke-width=\"1\"");
  out << "</g>\n";

  out << "<g id=\"edges\">\n";
  for (size_t i = 0; i < net.selected.size(); ++i)
    for (size_t j = i + 1; j < net.selected.size(); ++j) {
      int a = net.selected[i], b = net.selected[j];
      if (!graph.has_edge(a, b)) continue;
      Point2 pa = candidates[a].position, pb = candidates[b].position;
      out << "  <line x1=\"" << num(m.px(pa.x)) << "\" y1=\""
          << num(m.py(pa.y)) << "\" x2=\"" << num(m.px(pb.x)) << "\" y2=\""
          << num(m.py(pb.y)) << "\" stroke=\"green\" stroke-width=\""
          << num(0.5 + 2.5 * graph.at(a, b)) << "\"/>\n";
    }
  out << "</g>\n";

  out << "<g id=\"connectors\">\n";
  for (size_t i = 0; i < net.selected.size(); ++i)
    if (net.roles[i] == Role::Connector)
      circle(out, candidates[net.selected[i]].position, 5.0, m,
             "fill=\"orange\" stroke=\"darkorange\" stroke-width=\"1\"");
  out << "</g>\n";

  out << "<g id=\"viewpoints\">\n";
  for (size_t i = 0; i < net.selected.size(); ++i)
    if (net.roles[i] == Role::Cover)
      circle(out, candidates[net.selected[i]].position, 5.0, m,
             "fill=\"red\" stroke=\"darkred\" stroke-width=\"1\"");
  out << "</g>\n";

  out << "</svg>\n";
  return out.str();
}

}  // namespace vfplan
