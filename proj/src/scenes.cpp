#include "vfplan/scenes.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "vfplan/errors.hpp"

namespace vfplan {

namespace {

using nlohmann::ordered_json;

ordered_json rect_ring(double x0, double y0, double x1, double y1) {
  return ordered_json::array(
      {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

ordered_json scene(ordered_json outer, ordered_json holes = ordered_json::array(),
                   ordered_json openings = ordered_json::array()) {
  ordered_json doc;
  doc["units"] = "meters";
  doc["outer"] = std::move(outer);
  doc["holes"] = std::move(holes);
  doc["openings"] = std::move(openings);
  return doc;
}

// 16 x 12 m flat cut into four rooms by a wall cross.  Each arm of the
// cross carries a 1.6 m doorway centred at the room spine height, so the
// rooms form a ring: LL -> LR -> UR -> UL -> LL.  The centre block of the
// cross survives as a plus-shaped island.
ordered_json multiroom() {
  ordered_json outer = ordered_json::array(
      {{0, 0},     {7.8, 0},   {7.8, 2.2}, {8, 2.2},  {8, 0},
       {16, 0},    {16, 5.8},  {12.8, 5.8}, {12.8, 6}, {16, 6},
       {16, 12},   {8, 12},    {8, 9.8},   {7.8, 9.8}, {7.8, 12},
       {0, 12},    {0, 6},     {3.2, 6},   {3.2, 5.8}, {0, 5.8}});
  ordered_json plus = ordered_json::array(
      {{7.8, 3.8}, {8, 3.8},   {8, 5.8},   {11.2, 5.8}, {11.2, 6},
       {8, 6},     {8, 8.2},   {7.8, 8.2}, {7.8, 6},    {4.8, 6},
       {4.8, 5.8}, {7.8, 5.8}});
  return scene(outer, ordered_json::array({plus}));
}

// 60 x 40 m flat cut into a 5 x 4 room grid by wall bars with 1.6 m central
// doorways and 1.4 m clearance at bar ends.
ordered_json perf20() {
  ordered_json holes = ordered_json::array();
  const double xs[] = {11.8, 23.8, 35.8, 47.8};  // vertical bar lines
  const double ys[] = {9.8, 19.8, 29.8};         // horizontal bar lines

  // Vertical bars: per line, one band between consecutive horizontal bars.
  const double ybands[][2] = {{0, 9.8}, {10, 19.8}, {20, 29.8}, {30, 40}};
  for (double x : xs)
    for (auto& band : ybands) {
      double lo = band[0], hi = band[1];
      double gap_lo = lo + 4.0, gap_hi = gap_lo + 1.6;
      holes.push_back(rect_ring(x, lo + 1.4, x + 0.2, gap_lo));
      holes.push_back(rect_ring(x, gap_hi, x + 0.2, hi - 1.4));
    }

  const double xbands[][2] = {
      {0, 11.8}, {12, 23.8}, {24, 35.8}, {36, 47.8}, {48, 60}};
  for (double y : ys)
    for (auto& band : xbands) {
      double lo = band[0], hi = band[1];
      double gap_lo = lo + 3.6, gap_hi = gap_lo + 1.6;
      holes.push_back(rect_ring(lo + 1.4, y, gap_lo, y + 0.2));
      holes.push_back(rect_ring(gap_hi, y, hi - 1.4, y + 0.2));
    }
  return scene(rect_ring(0, 0, 60, 40), holes);
}

ordered_json opening(const char* kind, double ax, double ay, double bx,
                     double by) {
  ordered_json op;
  op["kind"] = kind;
  op["segment"] = ordered_json::array({{ax, ay}, {bx, by}});
  return op;
}

std::vector<std::pair<std::string, std::string>> build_all() {
  std::vector<std::pair<std::string, ordered_json>> docs;

  docs.push_back({"square10", scene(rect_ring(0, 0, 10, 10))});
  docs.push_back({"holed12", scene(rect_ring(0, 0, 12, 12),
                                   ordered_json::array(
                                       {rect_ring(4, 4, 8, 8)}))});
  docs.push_back({"lshape", scene(ordered_json::array({{0, 0},
                                                       {10, 0},
                                                       {10, 5},
                                                       {5, 5},
                                                       {5, 10},
                                                       {0, 10}}))});
  docs.push_back({"rect10x4", scene(rect_ring(0, 0, 10, 4))});
  // Two 6 x 5 m rooms; the dividing wall has a 1.6 m doorway at mid-height
  // so both stub tips face candidates on the room spines.
  docs.push_back({"tworooms", scene(ordered_json::array({{0, 0},
                                                         {6, 0},
                                                         {6, 1.8},
                                                         {6.2, 1.8},
                                                         {6.2, 0},
                                                         {12.4, 0},
                                                         {12.4, 5},
                                                         {6.2, 5},
                                                         {6.2, 3.4},
                                                         {6, 3.4},
                                                         {6, 5},
                                                         {0, 5}}))});
  docs.push_back({"corridor50", scene(rect_ring(0, 0, 50, 3))});
  docs.push_back({"multiroom", multiroom()});
  // Open 40 x 30 m hall with four 2 x 2 m pillars around the centre.
  docs.push_back(
      {"openhall",
       scene(rect_ring(0, 0, 40, 30),
             ordered_json::array(
                 {rect_ring(12, 9, 14, 11), rect_ring(26, 9, 28, 11),
                  rect_ring(12, 19, 14, 21), rect_ring(26, 19, 28, 21)}))});
  // Too small to hold a viewpoint at indoor r_min: the infeasible fixture.
  docs.push_back({"closet1x1", scene(rect_ring(0, 0, 1, 1))});
  docs.push_back({"perf20", perf20()});
  docs.push_back(
      {"window1",
       scene(rect_ring(0, 0, 10, 10), ordered_json::array(),
             ordered_json::array({opening("window", 10, 3, 10, 5)}))});
  docs.push_back(
      {"door1",
       scene(rect_ring(0, 0, 10, 10), ordered_json::array(),
             ordered_json::array({opening("door-frame", 0, 4, 0, 5.8)}))});

  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(docs.size());
  for (auto& [name, doc] : docs) out.push_back({name, doc.dump(2) + "\n"});
  return out;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& bundled_scenes() {
  static const std::vector<std::pair<std::string, std::string>> all =
      build_all();
  return all;
}

const std::string& bundled_scene(const std::string& name) {
  for (const auto& [n, json] : bundled_scenes())
    if (n == name) return json;
  throw ContractError("unknown bundled scene '" + name + "'");
}

int write_bundled_scenes(const std::string& dir) {
  std::filesystem::create_directories(dir);
  int count = 0;
  for (const auto& [name, json] : bundled_scenes()) {
    std::ofstream out(std::filesystem::path(dir) / (name + ".json"),
                      std::ios::binary);
    if (!out) throw ContractError("cannot write scene file in " + dir);
    out << json;
    ++count;
  }
  return count;
}

}  // namespace vfplan
