#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "support/helpers.hpp"
#include "vfplan/errors.hpp"
#include "vfplan/floorplan.hpp"
#include "vfplan/overlap.hpp"
#include "vfplan/skeleton.hpp"
#include "vfplan/vfield.hpp"
#include "vfplan/visibility.hpp"

using namespace vfplan;
using vfplan::test::load_scene;

namespace {

SkeletonGrid skeleton_of(const Floorplan& fp, double res, double prune) {
  GridSpec spec = GridSpec::cover(fp, res);
  return extract_skeleton(compute_distance_field(fp, spec), fp, prune);
}

std::vector<std::pair<int, int>> cells_of(const SkeletonGrid& sk) {
  std::vector<std::pair<int, int>> cells;
  for (int iy = 0; iy < sk.spec.height; ++iy)
    for (int ix = 0; ix < sk.spec.width; ++ix)
      if (sk.at(ix, iy)) cells.emplace_back(ix, iy);
  return cells;
}

int neighbor_count(const SkeletonGrid& sk, int ix, int iy) {
  int n = 0;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if ((dx || dy) && sk.at(ix + dx, iy + dy)) ++n;
  return n;
}

// Connected components and adjacency edge count of the skeleton seen as an
// 8-connectivity graph; a cycle exists iff edges > cells - components.
struct GraphShape {
  size_t cells = 0, edges = 0, components = 0;
};
GraphShape graph_shape(const SkeletonGrid& sk) {
  GraphShape g;
  auto cells = cells_of(sk);
  g.cells = cells.size();
  std::set<std::pair<int, int>> seen;
  for (auto [ix, iy] : cells) {
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if ((dx || dy) && sk.at(ix + dx, iy + dy)) ++g.edges;
  }
  g.edges /= 2;  // each adjacency was counted from both ends
  for (auto start : cells) {
    if (seen.count(start)) continue;
    ++g.components;
    std::vector<std::pair<int, int>> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      auto [ix, iy] = stack.back();
      stack.pop_back();
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          std::pair<int, int> t{ix + dx, iy + dy};
          if ((dx || dy) && sk.at(t.first, t.second) && !seen.count(t)) {
            seen.insert(t);
            stack.push_back(t);
          }
        }
    }
  }
  return g;
}

SkeletonGrid hand_grid(int w, int h,
                       const std::vector<std::pair<int, int>>& on) {
  SkeletonGrid sk;
  sk.spec = GridSpec{1.0, {0, 0}, w, h};
  sk.mask.assign((size_t)w * h, 0);
  for (auto [ix, iy] : on) sk.mask[sk.spec.index(ix, iy)] = 1;
  return sk;
}

int count_kind(const std::vector<ConvergingPoint>& pts, PointKind k) {
  int n = 0;
  for (const auto& p : pts) n += p.kind == k;
  return n;
}

}  // namespace

TEST_CASE("rectangle: spine plus four corner branches") {
  auto fp = load_scene("rect10x4");
  auto sk = skeleton_of(fp, 0.05, 0.6);

  // Independent oracle: the analytic medial axis of a 10 x 4 rectangle.
  const Segment axis[5] = {{{2, 2}, {8, 2}},
                           {{0, 0}, {2, 2}},
                           {{10, 0}, {8, 2}},
                           {{0, 4}, {2, 2}},
                           {{10, 4}, {8, 2}}};
  double worst_to_axis = 0.0;
  for (auto [ix, iy] : cells_of(sk)) {
    const Point2 c = sk.spec.cell_center(ix, iy);
    double best = 1e30;
    for (const auto& seg : axis)
      best = std::min(best, point_segment_distance(c, seg.a, seg.b));
    worst_to_axis = std::max(worst_to_axis, best);
  }
  double worst_from_axis = 0.0;
  for (const auto& seg : axis)
    for (int i = 0; i <= 50; ++i) {
      const Point2 q = seg.a + (seg.b - seg.a) * (i / 50.0);
      double best = 1e30;
      for (auto [ix, iy] : cells_of(sk))
        best = std::min(best, dist(sk.spec.cell_center(ix, iy), q));
      worst_from_axis = std::max(worst_from_axis, best);
    }
  CHECK(worst_to_axis <= 2 * 0.05);
  CHECK(worst_from_axis <= 2 * 0.05);

  auto points = detect_joints(sk);
  auto lines = build_converging_lines(sk, points);
  REQUIRE(count_kind(points, PointKind::Joint) == 2);
  REQUIRE(count_kind(points, PointKind::Endpoint) == 4);
  CHECK(lines.size() == 5);

  // Joints land on the medial-axis junctions, endpoints on the corners.
  std::vector<Point2> want_joints = {{2, 2}, {8, 2}};
  for (const auto& w : want_joints) {
    double best = 1e30;
    for (const auto& p : points)
      if (p.kind == PointKind::Joint) best = std::min(best, dist(p.position, w));
    CHECK(best < 0.15);
  }
  for (const Point2 corner : {Point2{0, 0}, {10, 0}, {0, 4}, {10, 4}}) {
    double best = 1e30;
    for (const auto& p : points)
      if (p.kind == PointKind::Endpoint)
        best = std::min(best, dist(p.position, corner));
    CHECK(best < 0.08);
  }

  // One ridge joins the two joints; the other four end at corners.
  int joint_joint = 0, joint_corner = 0;
  for (const auto& l : lines) {
    const bool aj = points[l.a].kind == PointKind::Joint;
    const bool bj = points[l.b].kind == PointKind::Joint;
    if (aj && bj) {
      ++joint_joint;
      CHECK(l.length == doctest::Approx(6.0).epsilon(0.05));
    } else {
      ++joint_corner;
      CHECK(l.length == doctest::Approx(2 * std::sqrt(2.0)).epsilon(0.08));
    }
  }
  CHECK(joint_joint == 1);
  CHECK(joint_corner == 4);
}

TEST_CASE("regular 64-gon collapses to its center") {
  std::ostringstream os;
  os << "{\"outer\": [";
  for (int k = 0; k < 64; ++k) {
    const double a = 2 * 3.14159265358979323846 * k / 64;
    os << (k ? "," : "") << "[" << 6 * std::cos(a) << "," << 6 * std::sin(a)
       << "]";
  }
  os << "], \"holes\": [], \"openings\": []}";
  auto fp = parse_floorplan(os.str());
  auto sk = skeleton_of(fp, 0.1, 0.6);
  REQUIRE(sk.count() > 0);
  for (auto [ix, iy] : cells_of(sk))
    CHECK(dist(sk.spec.cell_center(ix, iy), Point2{0, 0}) <= 3 * 0.1);
}

TEST_CASE("square with centered hole: skeleton loops around it") {
  auto fp = load_scene("holed12");
  auto sk = skeleton_of(fp, 0.1, 0.6);
  auto g = graph_shape(sk);
  CHECK(g.components == 1);
  CHECK(g.edges > g.cells - g.components);  // a cycle survives
}

TEST_CASE("plus-shaped mask: one joint at the crossing") {
  std::vector<std::pair<int, int>> on;
  for (int k = -5; k <= 5; ++k) {
    on.emplace_back(8 + k, 8);
    if (k) on.emplace_back(8, 8 + k);
  }
  auto sk = hand_grid(17, 17, on);
  auto points = detect_joints(sk);
  CHECK(count_kind(points, PointKind::Joint) == 1);
  CHECK(count_kind(points, PointKind::Endpoint) == 4);
  for (const auto& p : points)
    if (p.kind == PointKind::Joint) {
      CHECK(p.ix == 8);
      CHECK(p.iy == 8);
    }
  auto lines = build_converging_lines(sk, points);
  CHECK(lines.size() == 4);
}

TEST_CASE("straight-line mask: no joints, two endpoints, one ridge") {
  std::vector<std::pair<int, int>> on;
  for (int x = 2; x <= 12; ++x) on.emplace_back(x, 4);
  auto sk = hand_grid(16, 9, on);
  auto points = detect_joints(sk);
  CHECK(count_kind(points, PointKind::Joint) == 0);
  REQUIRE(count_kind(points, PointKind::Endpoint) == 2);
  auto lines = build_converging_lines(sk, points);
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(lines[0].closed);
  CHECK(lines[0].length == doctest::Approx(10.0));
}

TEST_CASE("T-shaped mask: one joint, three endpoints, three ridges") {
  std::vector<std::pair<int, int>> on;
  for (int x = 2; x <= 12; ++x) on.emplace_back(x, 8);
  for (int y = 2; y < 8; ++y) on.emplace_back(7, y);
  auto sk = hand_grid(16, 12, on);
  auto points = detect_joints(sk);
  CHECK(count_kind(points, PointKind::Joint) == 1);
  CHECK(count_kind(points, PointKind::Endpoint) == 3);
  auto lines = build_converging_lines(sk, points);
  CHECK(lines.size() == 3);
}

TEST_CASE("closed loop: synthetic endpoint at the lowest row-major cell") {
  // Diamond ring: every cell has exactly two (diagonal) neighbors.  An
  // axis-aligned ring would not do — its corner-adjacent cells pick up a
  // third diagonal neighbor.
  std::vector<std::pair<int, int>> on;
  for (int k = 0; k < 4; ++k) {
    on.emplace_back(5 + k, 1 + k);
    on.emplace_back(9 - k, 5 + k);
    on.emplace_back(5 - k, 9 - k);
    on.emplace_back(1 + k, 5 - k);
  }
  auto sk = hand_grid(12, 12, on);
  auto points = detect_joints(sk);
  CHECK(points.empty());  // every ring cell has exactly two neighbors
  auto lines = build_converging_lines(sk, points);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].closed);
  REQUIRE(points.size() == 1);  // the loop received a synthetic point
  CHECK(points[0].kind == PointKind::Endpoint);
  CHECK(points[0].ix == 5);  // lowest iy, then lowest ix on that row
  CHECK(points[0].iy == 1);
  CHECK(lines[0].a == points[0].id);
  CHECK(lines[0].b == points[0].id);
  CHECK(lines[0].path.size() == on.size());
}

TEST_CASE("skeletons are one pixel wide, interior-only, connected") {
  struct Probe {
    const char* name;
    double res;
  } probes[] = {{"rect10x4", 0.05}, {"holed12", 0.1}, {"tworooms", 0.1}};
  for (const auto& pr : probes) {
    CAPTURE(pr.name);
    auto fp = load_scene(pr.name);
    GridSpec spec = GridSpec::cover(fp, pr.res);
    auto dist_field = compute_distance_field(fp, spec);
    auto sk = extract_skeleton(dist_field, fp, 0.6);
    REQUIRE(sk.count() > 0);

    for (auto [ix, iy] : cells_of(sk)) {
      CHECK(dist_field.dist[spec.index(ix, iy)] != kExteriorSentinel);
      const bool block = sk.at(ix, iy) && sk.at(ix + 1, iy) &&
                         sk.at(ix, iy + 1) && sk.at(ix + 1, iy + 1);
      CHECK_FALSE(block);
    }
    CHECK(graph_shape(sk).components == 1);
  }
}

TEST_CASE("ridges plus joint clusters partition the skeleton exactly") {
  for (const char* name : {"rect10x4", "holed12"}) {
    CAPTURE(name);
    auto fp = load_scene(name);
    auto sk = skeleton_of(fp, name[0] == 'r' ? 0.05 : 0.1, 0.6);
    auto points = detect_joints(sk);
    auto lines = build_converging_lines(sk, points);

    // Re-derive the joint-cluster cells: >= 3 neighbors, 8-connected blobs.
    std::set<std::pair<int, int>> cluster_cells;
    for (auto [ix, iy] : cells_of(sk))
      if (neighbor_count(sk, ix, iy) >= 3) cluster_cells.insert({ix, iy});

    std::set<std::pair<int, int>> path_cells;
    size_t path_total = 0;
    for (const auto& l : lines) {
      for (auto cell : l.path) {
        CHECK(path_cells.insert(cell).second);  // no duplicates across ridges
        CHECK_FALSE(cluster_cells.count(cell));
        ++path_total;
      }
    }
    CHECK(path_total + cluster_cells.size() == sk.count());
  }
}

TEST_CASE("refinement: corridors densify, open rooms do not") {
  auto corridor = load_scene("corridor50");
  auto sk = skeleton_of(corridor, 0.1, 0.6);
  auto points = detect_joints(sk);
  auto lines = build_converging_lines(sk, points);

  VisibilityEngine engine(corridor, occluder_segments(corridor, false),
                          {0.6, 30.0});
  auto bounds = partition_boundary(corridor, 0.5, false);
  std::function<double(Point2, Point2)> overlap = [&](Point2 a, Point2 b) {
    const auto ra = make_vis_record(engine, a, bounds);
    const auto rb = make_vis_record(engine, b, bounds);
    return overlap_ratios(ra, rb).mean_len;
  };
  auto out = refine_candidates(sk, lines, points, overlap, 0.4);
  CHECK(count_kind(out.candidates, PointKind::InsertedMidpoint) >= 1);
  CHECK(out.flagged.empty());

  // Every inserted midpoint sits on some ridge path; the original points
  // come back unchanged, in order.
  std::set<std::pair<int, int>> path_cells;
  for (const auto& l : lines)
    for (auto cell : l.path) path_cells.insert(cell);
  for (const auto& p : out.candidates) {
    if (p.kind == PointKind::InsertedMidpoint)
      CHECK(path_cells.count({p.ix, p.iy}) == 1);
  }
  REQUIRE(out.candidates.size() >= points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    CHECK(out.candidates[i].id == points[i].id);
    CHECK(out.candidates[i].ix == points[i].ix);
    CHECK(out.candidates[i].iy == points[i].iy);
    CHECK((out.candidates[i].kind == points[i].kind));
  }

  // A small open room overlaps heavily everywhere: nothing to insert.
  auto rect = load_scene("rect10x4");
  auto rsk = skeleton_of(rect, 0.05, 0.6);
  auto rpoints = detect_joints(rsk);
  auto rlines = build_converging_lines(rsk, rpoints);
  VisibilityEngine rengine(rect, occluder_segments(rect, false), {0.6, 30.0});
  auto rbounds = partition_boundary(rect, 0.5, false);
  std::function<double(Point2, Point2)> roverlap = [&](Point2 a, Point2 b) {
    const auto ra = make_vis_record(rengine, a, rbounds);
    const auto rb = make_vis_record(rengine, b, rbounds);
    return overlap_ratios(ra, rb).mean_len;
  };
  auto rout = refine_candidates(rsk, rlines, rpoints, roverlap, 0.4);
  CHECK(count_kind(rout.candidates, PointKind::InsertedMidpoint) == 0);
}

TEST_CASE("tau zero keeps exactly joints plus endpoints") {
  auto fp = load_scene("rect10x4");
  auto sk = skeleton_of(fp, 0.05, 0.6);
  auto points = detect_joints(sk);
  auto lines = build_converging_lines(sk, points);
  int calls = 0;
  std::function<double(Point2, Point2)> zero = [&](Point2, Point2) {
    ++calls;
    return 0.0;
  };
  auto out = refine_candidates(sk, lines, points, zero, 0.0);
  CHECK(out.candidates.size() == points.size());
  CHECK(out.flagged.empty());
}

TEST_CASE("hopeless overlap flags short sub-ridges instead of looping") {
  auto fp = load_scene("rect10x4");
  auto sk = skeleton_of(fp, 0.05, 0.6);
  auto points = detect_joints(sk);
  auto lines = build_converging_lines(sk, points);
  std::function<double(Point2, Point2)> zero = [](Point2, Point2) {
    return 0.0;
  };
  auto out = refine_candidates(sk, lines, points, zero, 0.9);
  CHECK(out.flagged.size() > 0);
  CHECK(out.candidates.size() > points.size());
  std::set<int> ids;
  for (const auto& p : out.candidates) {
    CHECK(p.id == (int)ids.size());
    ids.insert(p.id);
  }
  for (auto [a, b] : out.flagged) {
    CHECK(a >= 0);
    CHECK(b >= 0);
    CHECK(a < (int)out.candidates.size());
    CHECK(b < (int)out.candidates.size());
  }
}

TEST_CASE("extraction and refinement are deterministic") {
  auto fp = load_scene("holed12");
  auto a = skeleton_of(fp, 0.1, 0.6);
  auto b = skeleton_of(fp, 0.1, 0.6);
  CHECK(a.mask == b.mask);

  auto pa = detect_joints(a), pb = detect_joints(b);
  REQUIRE(pa.size() == pb.size());
  auto la = build_converging_lines(a, pa), lb = build_converging_lines(b, pb);
  REQUIRE(la.size() == lb.size());
  for (size_t i = 0; i < la.size(); ++i) {
    CHECK(la[i].a == lb[i].a);
    CHECK(la[i].b == lb[i].b);
    CHECK(la[i].path == lb[i].path);
  }
}

TEST_CASE("hopelessly coarse grids raise an infeasibility error") {
  auto fp = load_scene("closet1x1");
  GridSpec spec = GridSpec::cover(fp, 5.0);
  auto dist_field = compute_distance_field(fp, spec);
  CHECK_THROWS_AS(extract_skeleton(dist_field, fp, 0.6), InfeasibleError);
}
