#include <cmath>
#include <random>

#include "doctest.h"
#include "support/helpers.hpp"
#include "vfplan/bsp.hpp"
#include "vfplan/floorplan.hpp"
#include "vfplan/oracle.hpp"
#include "vfplan/visibility.hpp"

using namespace vfplan;
using vfplan::test::brute_line_of_sight;
using vfplan::test::load_scene;
using vfplan::test::random_interior_point;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Angle the whole target subtends at p (independent of the engine).
double full_subtended(Point2 p, const Segment& t) {
  const Point2 u = t.a - p, v = t.b - p;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}
}  // namespace

TEST_CASE("unobstructed target inside the annulus is fully visible") {
  BspTree tree({});
  auto span = valid_span(tree, {0.5, 10.0}, {0, 0}, {{1, -1}, {1, 1}});
  CHECK(span.visible_length == doctest::Approx(2.0));
  CHECK(span.theta_valid == doctest::Approx(kPi / 2).epsilon(1e-9));
  REQUIRE(span.t.size() == 1);
  CHECK(span.t[0].lo == doctest::Approx(0.0));
  CHECK(span.t[0].hi == doctest::Approx(1.0));
}

TEST_CASE("minimum range clips the near middle of a crossing target") {
  BspTree tree({});
  const Segment target{{-2, 0.4}, {2, 0.4}};
  auto span = valid_span(tree, {0.5, 10.0}, {0, 0}, target);
  // Points with |x| < sqrt(0.5^2 - 0.4^2) = 0.3 sit inside the min disk.
  const double expected = 2 * (std::atan(2 / 0.4) - std::atan(0.3 / 0.4));
  CHECK(span.theta_valid == doctest::Approx(expected).epsilon(1e-9));
  CHECK(span.theta_valid == doctest::Approx(1.4599).epsilon(1e-4));
  CHECK(span.visible_length == doctest::Approx(4.0 - 0.6).epsilon(1e-9));
  CHECK(span.t.size() == 2);

  // Cross-validation against the independent ray-sweep estimate.
  const double sampled =
      sampling_visibility_oracle({0, 0}, target, {0.5, 10.0}, {}, 1000000);
  CHECK(std::abs(sampled - span.theta_valid) < 1e-3);
}

TEST_CASE("target beyond maximum range is invisible") {
  BspTree tree({});
  auto span = valid_span(tree, {0.5, 10.0}, {0, 0}, {{20, -1}, {20, 1}});
  CHECK(span.theta_valid == 0.0);
  CHECK(span.visible_length == 0.0);
  CHECK(span.t.empty());
}

TEST_CASE("line of sight honors walls and endpoint grazing") {
  BspTree empty({});
  CHECK(line_of_sight(empty, {1, 1}, {9, 1}));

  BspTree wall({Segment{{5, 0}, {5, 10}}});
  CHECK_FALSE(line_of_sight(wall, {1, 1}, {9, 1}));

  // Sightline passing exactly through the wall's endpoint gap.
  BspTree stub({Segment{{5, 0}, {5, 1}}});
  CHECK(line_of_sight(stub, {1, 1}, {9, 1}));
  CHECK_FALSE(line_of_sight(stub, {1, 0.5}, {9, 0.5}));
}

TEST_CASE("bsp equals brute force on bundled scenes") {
  std::mt19937 rng(31);
  for (const char* name : {"square10", "lshape", "holed12", "multiroom"}) {
    auto fp = load_scene(name);
    auto occ = occluder_segments(fp, false);
    BspTree tree(occ);
    const BBox bb = fp.bbox();
    std::uniform_real_distribution<double> ux(bb.xmin - 1, bb.xmax + 1);
    std::uniform_real_distribution<double> uy(bb.ymin - 1, bb.ymax + 1);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
      Point2 p{ux(rng), uy(rng)}, q{ux(rng), uy(rng)};
      const bool fast = !tree.blocked(p, q);
      if (fast != brute_line_of_sight(p, q, occ)) ++mismatches;
      if (fast != !tree.blocked(q, p)) ++mismatches;  // symmetry
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("bsp handles 1000 non-crossing segments exactly") {
  // One segment confined to each cell of a jittered grid: disjoint by
  // construction.
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::vector<Segment> occ;
  for (int gy = 0; gy < 25; ++gy)
    for (int gx = 0; gx < 40; ++gx) {
      const double x0 = gx * 1.0, y0 = gy * 1.0;
      occ.push_back({{x0 + u(rng), y0 + u(rng)}, {x0 + u(rng), y0 + u(rng)}});
    }
  REQUIRE(occ.size() == 1000);
  BspTree tree(occ);
  CHECK(tree.node_count() > 1);
  std::uniform_real_distribution<double> px(-1.0, 41.0), py(-1.0, 26.0);
  for (int i = 0; i < 100; ++i) {
    Point2 p{px(rng), py(rng)}, q{px(rng), py(rng)};
    CHECK(tree.blocked(p, q) == !brute_line_of_sight(p, q, occ));
  }
}

TEST_CASE("crossing occluders force a split during construction") {
  BspTree tree({Segment{{0, 0}, {4, 4}}, Segment{{0, 4}, {4, 0}}});
  CHECK(tree.node_count() >= 2);
  CHECK_FALSE(line_of_sight(tree, {0, 2}, {4, 2}));
  CHECK(line_of_sight(tree, {0, 5}, {4, 5}));
}

TEST_CASE("exact spans match the sampling oracle on random scene pairs") {
  std::mt19937 rng(2026);
  for (const char* name : {"lshape", "multiroom"}) {
    auto fp = load_scene(name);
    auto occ = occluder_segments(fp, false);
    VisibilityEngine engine(fp, occ, {0.6, 30.0});
    auto bounds = partition_boundary(fp, 0.5, false);
    std::uniform_int_distribution<size_t> pick(0, bounds.segments.size() - 1);
    for (int i = 0; i < 25; ++i) {
      const Point2 p = random_interior_point(fp, rng);
      const Segment target = bounds.segments[pick(rng)].seg();
      const double exact = engine.valid_span(p, target).theta_valid;
      const double sampled =
          sampling_visibility_oracle(p, target, engine.scanner(), occ, 200000);
      CHECK(std::abs(exact - sampled) < 2e-3);
    }
  }
}

TEST_CASE("theta never exceeds the full subtended angle") {
  std::mt19937 rng(555);
  auto fp = load_scene("multiroom");
  auto occ = occluder_segments(fp, false);
  VisibilityEngine engine(fp, occ, {0.6, 30.0});
  auto bounds = partition_boundary(fp, 0.5, false);
  std::uniform_int_distribution<size_t> pick(0, bounds.segments.size() - 1);
  for (int i = 0; i < 400; ++i) {
    const Point2 p = random_interior_point(fp, rng);
    const Segment target = bounds.segments[pick(rng)].seg();
    const auto span = engine.valid_span(p, target);
    const double full = full_subtended(p, target);
    CHECK(span.theta_valid <= full + 1e-9);
    const double frac = interval_measure(span.t);
    if (frac >= 1.0 - 1e-12)  // fully visible <=> full angle
      CHECK(span.theta_valid == doctest::Approx(full).epsilon(1e-9));
    if (span.theta_valid >= full - 1e-9) CHECK(frac >= 1.0 - 1e-6);
  }
}

TEST_CASE("widening the annulus never shrinks theta") {
  std::mt19937 rng(808);
  auto fp = load_scene("lshape");
  auto occ = occluder_segments(fp, false);
  VisibilityEngine narrow(fp, occ, {0.8, 8.0});
  VisibilityEngine wide(fp, occ, {0.4, 16.0});
  auto bounds = partition_boundary(fp, 0.5, false);
  std::uniform_int_distribution<size_t> pick(0, bounds.segments.size() - 1);
  for (int i = 0; i < 300; ++i) {
    const Point2 p = random_interior_point(fp, rng);
    const Segment target = bounds.segments[pick(rng)].seg();
    CHECK(narrow.valid_span(p, target).theta_valid <=
          wide.valid_span(p, target).theta_valid + 1e-12);
  }
}

TEST_CASE("span queries require an interior viewpoint") {
  auto fp = load_scene("square10");
  VisibilityEngine engine(fp, occluder_segments(fp, false), {0.6, 30.0});
  CHECK_THROWS_AS(engine.valid_span({-1, 5}, Segment{{0, 0}, {0, 1}}),
                  std::domain_error);
}

TEST_CASE("coverage entry thresholds on the visible fraction") {
  auto square = load_scene("square10");
  VisibilityEngine engine(square, occluder_segments(square, false),
                          {0.6, 30.0});
  auto bounds = partition_boundary(square, 1.0, false);
  for (const auto& seg : bounds.segments)
    CHECK(engine.coverage_entry({5.1, 5.1}, seg.seg(), 1.0));

  VisibilityEngine myopic(square, occluder_segments(square, false),
                          {0.6, 3.0});
  CHECK_FALSE(myopic.coverage_entry({5.1, 5.1}, Segment{{0, 4}, {0, 6}}, 1.0));
}

TEST_CASE("half-occluded target passes only the half fraction") {
  // Hole slab whose shadow from p = (1,4) covers exactly the left half
  // [0,1] of the target wall piece y=0, x in [0,2].
  auto fp = parse_floorplan(
      R"({"outer":[[0,0],[10,0],[10,10],[0,10]],
          "holes":[[[0.2,2],[1,2],[1,2.2],[0.2,2.2]]]})");
  auto occ = occluder_segments(fp, false);
  VisibilityEngine engine(fp, occ, {0.1, 30.0});
  const Segment target{{0, 0}, {2, 0}};
  const Point2 p{1, 4};

  const auto span = engine.valid_span(p, target);
  const double frac = interval_measure(span.t);
  CHECK(frac == doctest::Approx(0.5).epsilon(0.02));
  CHECK_FALSE(engine.coverage_entry(p, target, 1.0));
  CHECK(engine.coverage_entry(p, target, 0.45));

  // The sampling oracle sees the same occlusion.
  const double sampled =
      sampling_visibility_oracle(p, target, engine.scanner(), occ, 400000);
  CHECK(std::abs(sampled - span.theta_valid) < 2e-3);
}

TEST_CASE("batched visible intervals match single-span queries") {
  auto fp = load_scene("tworooms");
  VisibilityEngine engine(fp, occluder_segments(fp, false), {0.6, 30.0});
  auto bounds = partition_boundary(fp, 0.5, false);
  std::mt19937 rng(11);
  for (int i = 0; i < 10; ++i) {
    const Point2 p = random_interior_point(fp, rng);
    auto batch = engine.visible_intervals(p, bounds);
    REQUIRE(batch.size() == bounds.spans.size());
    for (size_t s = 0; s < bounds.spans.size(); ++s) {
      auto one = engine.valid_span(p, bounds.spans[s].seg());
      REQUIRE(batch[s].size() == one.t.size());
      for (size_t k = 0; k < one.t.size(); ++k) {
        CHECK(batch[s][k].lo == doctest::Approx(one.t[k].lo).epsilon(1e-12));
        CHECK(batch[s][k].hi == doctest::Approx(one.t[k].hi).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("fully occluded target samples to zero") {
  std::vector<Segment> occ{{{4, -2}, {4, 2}}};
  const double sampled =
      sampling_visibility_oracle({0, 0}, {{8, -1}, {8, 1}}, {0.5, 30.0}, occ,
                                 50000);
  CHECK(sampled == 0.0);
  BspTree tree(occ);
  CHECK(valid_span(tree, {0.5, 30.0}, {0, 0}, {{8, -1}, {8, 1}}).theta_valid ==
        0.0);
}
