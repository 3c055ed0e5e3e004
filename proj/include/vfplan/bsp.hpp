#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vfplan/geometry.hpp"

namespace vfplan {

// Binary space partition over the occluder segments.  Fragments keep the id
// of the occluder they came from, and every blocking test runs on the
// original (unclipped) occluder, so query results match a brute-force scan
// over the input segments exactly; the tree only prunes which occluders get
// tested.
class BspTree {
 public:
  explicit BspTree(std::vector<Segment> occluders);

  // True if any occluder blocks the open sight line p -> q.
  bool blocked(Point2 p, Point2 q) const;

  // Ids of occluders whose splitting planes meet the triangle p-a-b
  // (a superset of those intersecting it); each id reported once.
  void collect_triangle(Point2 p, Point2 a, Point2 b,
                        std::vector<int>& out) const;

  const std::vector<Segment>& occluders() const { return occluders_; }
  size_t node_count() const { return node_count_; }

 private:
  struct Node {
    Point2 origin, normal;      // splitting line {x : dot(x-origin, n) = 0}
    std::vector<int> on_plane;  // occluder ids of coplanar fragments
    std::unique_ptr<Node> front, back;
  };
  struct Fragment {
    Point2 a, b;
    int occ;
  };

  std::unique_ptr<Node> build(std::vector<Fragment> frags);
  bool query(const Node* node, Point2 p, Point2 q,
             std::vector<uint32_t>& stamps, uint32_t epoch) const;
  void gather(const Node* node, const Point2* pts, int npts,
              std::vector<uint32_t>& stamps, uint32_t epoch,
              std::vector<int>& out) const;

  std::vector<Segment> occluders_;
  std::unique_ptr<Node> root_;
  size_t node_count_ = 0;
};

}  // namespace vfplan
