#include "vfplan/bsp.hpp"

#include <algorithm>
#include <cmath>

namespace vfplan {

namespace {

// Scratch buffers for per-query occluder dedup; thread-local so concurrent
// queries on one tree never share state.
thread_local std::vector<uint32_t> tl_stamps;
thread_local uint32_t tl_epoch = 0;

std::vector<uint32_t>& scratch(size_t n, uint32_t& epoch_out) {
  if (tl_stamps.size() < n) tl_stamps.resize(n, 0);
  if (++tl_epoch == 0) {
    std::fill(tl_stamps.begin(), tl_stamps.end(), 0);
    tl_epoch = 1;
  }
  epoch_out = tl_epoch;
  return tl_stamps;
}

}  // namespace

BspTree::BspTree(std::vector<Segment> occluders)
    : occluders_(std::move(occluders)) {
  std::vector<Fragment> frags;
  frags.reserve(occluders_.size());
  for (size_t i = 0; i < occluders_.size(); ++i) {
    const Segment& s = occluders_[i];
    if (dist(s.a, s.b) > kGeomEps) frags.push_back({s.a, s.b, (int)i});
  }
  root_ = build(std::move(frags));
}

std::unique_ptr<BspTree::Node> BspTree::build(std::vector<Fragment> frags) {
  if (frags.empty()) return nullptr;

  auto plane_of = [](const Fragment& f, Point2& origin, Point2& normal) {
    const Point2 d = f.b - f.a;
    const double len = norm(d);
    origin = f.a;
    normal = {-d.y / len, d.x / len};
  };

  // Pick the splitter among a deterministic sample, favouring balance and
  // few fragment splits.
  const size_t stride = std::max<size_t>(1, frags.size() / 8);
  size_t best = 0;
  double best_cost = 1e300;
  for (size_t c = 0; c < frags.size(); c += stride) {
    Point2 o, n;
    plane_of(frags[c], o, n);
    int nf = 0, nb = 0, ns = 0;
    for (const Fragment& f : frags) {
      const double sa = dot(f.a - o, n), sb = dot(f.b - o, n);
      const bool za = std::abs(sa) <= kGeomEps, zb = std::abs(sb) <= kGeomEps;
      if (za && zb) continue;
      if (sa >= -kGeomEps && sb >= -kGeomEps) {
        ++nf;
      } else if (sa <= kGeomEps && sb <= kGeomEps) {
        ++nb;
      } else {
        ++ns;
      }
    }
    const double cost = std::abs(nf - nb) + 4.0 * ns;
    if (cost < best_cost) {
      best_cost = cost;
      best = c;
    }
  }

  auto node = std::make_unique<Node>();
  plane_of(frags[best], node->origin, node->normal);

  std::vector<Fragment> front, back;
  for (const Fragment& f : frags) {
    const double sa = dot(f.a - node->origin, node->normal);
    const double sb = dot(f.b - node->origin, node->normal);
    const bool za = std::abs(sa) <= kGeomEps, zb = std::abs(sb) <= kGeomEps;
    if (za && zb) {
      node->on_plane.push_back(f.occ);
    } else if (sa >= -kGeomEps && sb >= -kGeomEps) {
      front.push_back(f);
    } else if (sa <= kGeomEps && sb <= kGeomEps) {
      back.push_back(f);
    } else {
      const double t = sa / (sa - sb);
      const Point2 x = f.a + (f.b - f.a) * t;
      Fragment fa{f.a, x, f.occ}, fb{x, f.b, f.occ};
      (sa > 0 ? front : back).push_back(fa);
      (sb > 0 ? front : back).push_back(fb);
    }
  }
  std::sort(node->on_plane.begin(), node->on_plane.end());
  node->on_plane.erase(
      std::unique(node->on_plane.begin(), node->on_plane.end()),
      node->on_plane.end());

  ++node_count_;
  node->front = build(std::move(front));
  node->back = build(std::move(back));
  return node;
}

bool BspTree::blocked(Point2 p, Point2 q) const {
  if (!root_) return false;
  uint32_t epoch;
  auto& stamps = scratch(occluders_.size(), epoch);
  return query(root_.get(), p, q, stamps, epoch);
}

bool BspTree::query(const Node* node, Point2 p, Point2 q,
                    std::vector<uint32_t>& stamps, uint32_t epoch) const {
  if (!node) return false;
  const double sp = dot(p - node->origin, node->normal);
  const double sq = dot(q - node->origin, node->normal);
  if (sp > kGeomEps && sq > kGeomEps)
    return query(node->front.get(), p, q, stamps, epoch);
  if (sp < -kGeomEps && sq < -kGeomEps)
    return query(node->back.get(), p, q, stamps, epoch);

  for (int id : node->on_plane) {
    if (stamps[id] == epoch) continue;
    stamps[id] = epoch;
    const Segment& o = occluders_[id];
    if (segment_blocks(p, q, o.a, o.b)) return true;
  }
  const Node* near_side = sp >= 0 ? node->front.get() : node->back.get();
  const Node* far_side = sp >= 0 ? node->back.get() : node->front.get();
  return query(near_side, p, q, stamps, epoch) ||
         query(far_side, p, q, stamps, epoch);
}

void BspTree::collect_triangle(Point2 p, Point2 a, Point2 b,
                               std::vector<int>& out) const {
  out.clear();
  if (!root_) return;
  uint32_t epoch;
  auto& stamps = scratch(occluders_.size(), epoch);
  const Point2 pts[3] = {p, a, b};
  gather(root_.get(), pts, 3, stamps, epoch, out);
}

void BspTree::gather(const Node* node, const Point2* pts, int npts,
                     std::vector<uint32_t>& stamps, uint32_t epoch,
                     std::vector<int>& out) const {
  if (!node) return;
  bool all_front = true, all_back = true;
  for (int i = 0; i < npts; ++i) {
    const double s = dot(pts[i] - node->origin, node->normal);
    all_front = all_front && s > kGeomEps;
    all_back = all_back && s < -kGeomEps;
  }
  if (all_front) {
    gather(node->front.get(), pts, npts, stamps, epoch, out);
    return;
  }
  if (all_back) {
    gather(node->back.get(), pts, npts, stamps, epoch, out);
    return;
  }
  for (int id : node->on_plane) {
    if (stamps[id] == epoch) continue;
    stamps[id] = epoch;
    out.push_back(id);
  }
  gather(node->front.get(), pts, npts, stamps, epoch, out);
  gather(node->back.get(), pts, npts, stamps, epoch, out);
}

}  // namespace vfplan
