#include "vfplan/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>

#include "vfplan/errors.hpp"

namespace vfplan {

namespace {

// 8-neighborhood in the circular order N, NE, E, SE, S, SW, W, NW.
constexpr int kRing[8][2] = {{0, 1},  {1, 1},   {1, 0},  {1, -1},
                             {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
// Row-major scan order (lower iy first, then lower ix) for deterministic picks.
constexpr int kScan[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                             {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

struct Raster {
  int w = 0, h = 0;
  std::vector<uint8_t>* m = nullptr;

  bool at(int x, int y) const {
    return x >= 0 && y >= 0 && x < w && y < h && (*m)[(size_t)y * w + x] != 0;
  }
  void ring(int x, int y, int p[8]) const {
    for (int k = 0; k < 8; ++k) p[k] = at(x + kRing[k][0], y + kRing[k][1]);
  }
  int degree(int x, int y) const {
    int p[8], d = 0;
    ring(x, y, p);
    for (int k = 0; k < 8; ++k) d += p[k];
    return d;
  }
};

int transitions(const int p[8]) {
  int a = 0;
  for (int k = 0; k < 8; ++k)
    if (!p[k] && p[(k + 1) % 8]) ++a;
  return a;
}

// Distance-ridge anchors: cells where the field drops on both sides of some
// opposite neighbor pair.  Thinning may not delete them, which keeps medial
// branches (e.g. the corner diagonals of a rectangle) that plain erosion
// would sweep away.  delta = 0.25 cells filters ridges with a transverse
// drop shallower than ~15 degrees, so near-circular rooms still collapse.
std::vector<uint8_t> ridge_anchors(const DistanceField& dist) {
  const int w = dist.spec.width, h = dist.spec.height;
  const double delta = 0.25 * dist.spec.resolution;
  std::vector<uint8_t> anchor((size_t)w * h, 0);
  auto d_at = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return kExteriorSentinel;
    return dist.dist[(size_t)y * w + x];
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double d = d_at(x, y);
      if (d == kExteriorSentinel) continue;
      bool hold = false;
      for (int k = 0; k < 4 && !hold; ++k) {
        const double n1 = d_at(x + kRing[k][0], y + kRing[k][1]);
        const double n2 = d_at(x + kRing[k + 4][0], y + kRing[k + 4][1]);
        if (n1 == kExteriorSentinel || n2 == kExteriorSentinel) continue;
        hold = n1 <= d - delta && n2 <= d - delta;
      }
      if (!hold) {
        // Convex-corner cells: five or more contiguous exterior neighbors
        // (a straight wall exposes three, a right angle five).  Without
        // them the diagonal's last cells erode before the ridge test can
        // hold, leaving branch tips short of the corner.
        int run = 0, best = 0;
        for (int k = 0; k < 16; ++k) {
          if (d_at(x + kRing[k % 8][0], y + kRing[k % 8][1]) ==
              kExteriorSentinel)
            best = std::max(best, ++run);
          else
            run = 0;
        }
        hold = std::min(best, 8) >= 5;
      }
      if (hold) anchor[(size_t)y * w + x] = 1;
    }
  return anchor;
}

// Iterative Zhang–Suen thinning.  Only cells whose neighborhood changed since
// their last test are re-examined, so total work tracks the eroded area.
// Anchored cells are exempt from deletion.
void thin(Raster g, const std::vector<uint8_t>& anchor) {
  const int w = g.w, h = g.h;
  std::vector<uint8_t>& m = *g.m;
  std::vector<size_t> active, grown, del;
  std::vector<uint8_t> queued((size_t)w * h, 0);

  auto enqueue = [&](std::vector<size_t>& out, int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return;
    size_t idx = (size_t)y * w + x;
    if (m[idx] && !queued[idx]) {
      queued[idx] = 1;
      out.push_back(idx);
    }
  };

  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      size_t idx = (size_t)y * w + x;
      if (m[idx] && g.degree(x, y) < 8) {
        queued[idx] = 1;
        active.push_back(idx);
      }
    }

  auto pass = [&](int sub, const std::vector<size_t>& cells) {
    del.clear();
    for (size_t idx : cells) {
      if (!m[idx] || anchor[idx]) continue;
      int x = (int)(idx % w), y = (int)(idx / w);
      int p[8];
      g.ring(x, y, p);
      int b = p[0] + p[1] + p[2] + p[3] + p[4] + p[5] + p[6] + p[7];
      if (b < 2 || b > 6) continue;
      if (transitions(p) != 1) continue;
      // p[0]=N, p[2]=E, p[4]=S, p[6]=W.
      bool ok = sub == 0 ? !(p[0] && p[2] && p[4]) && !(p[2] && p[4] && p[6])
                         : !(p[0] && p[2] && p[6]) && !(p[0] && p[4] && p[6]);
      if (ok) del.push_back(idx);
    }
    for (size_t idx : del) m[idx] = 0;
  };

  while (!active.empty()) {
    bool changed = false;
    grown.clear();
    for (int sub = 0; sub < 2; ++sub) {
      pass(sub, active);
      changed = changed || !del.empty();
      for (size_t idx : del) {
        int x = (int)(idx % w), y = (int)(idx / w);
        for (int k = 0; k < 8; ++k) enqueue(grown, x + kRing[k][0], y + kRing[k][1]);
      }
      if (sub == 0 && !grown.empty()) {
        // Sub-iteration 2 must also see cells freshly exposed by sub 1.
        for (size_t idx : grown) active.push_back(idx);
      }
    }
    for (size_t idx : active) queued[idx] = 0;
    active.clear();
    if (!changed) break;
    for (size_t idx : grown)
      if (m[idx]) {
        active.push_back(idx);
      } else {
        queued[idx] = 0;
      }
  }
}

// Knocks out one simple pixel from every remaining 2x2 block so ridges are
// strictly one pixel wide.
void polish(Raster g) {
  const int w = g.w, h = g.h;
  std::vector<uint8_t>& m = *g.m;
  auto deletable = [&](int x, int y) {
    int p[8];
    g.ring(x, y, p);
    int b = p[0] + p[1] + p[2] + p[3] + p[4] + p[5] + p[6] + p[7];
    return b >= 2 && transitions(p) == 1;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y = 0; y + 1 < h; ++y)
      for (int x = 0; x + 1 < w; ++x) {
        if (!(g.at(x, y) && g.at(x + 1, y) && g.at(x, y + 1) &&
              g.at(x + 1, y + 1)))
          continue;
        constexpr int kQuad[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
        for (auto& q : kQuad) {
          int cx = x + q[0], cy = y + q[1];
          if (deletable(cx, cy)) {
            m[(size_t)cy * w + cx] = 0;
            changed = true;
            break;
          }
        }
      }
  }
}

// True iff deleting (x,y) changes neither connectivity nor holes: its
// skeleton neighbors form one 8-connected component without it, and exactly
// one background 4-component touches it edge-on.
bool simple_point(const Raster& g, int x, int y) {
  bool fg[8];
  for (int k = 0; k < 8; ++k)
    fg[k] = g.at(x + kRing[k][0], y + kRing[k][1]);
  auto adj8 = [&](int a, int b) {
    return std::abs(kRing[a][0] - kRing[b][0]) <= 1 &&
           std::abs(kRing[a][1] - kRing[b][1]) <= 1;
  };
  auto adj4 = [&](int a, int b) {
    return std::abs(kRing[a][0] - kRing[b][0]) +
               std::abs(kRing[a][1] - kRing[b][1]) ==
           1;
  };
  int comp[8];
  for (int k = 0; k < 8; ++k) comp[k] = k;
  auto root = [&](int k) {
    while (comp[k] != k) k = comp[k] = comp[comp[k]];
    return k;
  };
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) {
      if (fg[a] != fg[b]) continue;
      if (fg[a] ? adj8(a, b) : adj4(a, b)) comp[root(a)] = root(b);
    }
  int fg_comps = 0, bg_touching = 0;
  for (int k = 0; k < 8; ++k) {
    if (root(k) != k) continue;
    if (fg[k]) {
      ++fg_comps;
    } else {
      bool touches = false;  // via an edge-sharing ring position
      for (int j = 0; j < 8; j += 2)
        touches = touches || (!fg[j] && root(j) == k);
      if (touches) ++bg_touching;
    }
  }
  return fg_comps == 1 && bg_touching == 1;
}

// Collapses the doubled staircases parallel thinning leaves along diagonals:
// deletes simple points that sit between neighbors (some pair at >= 90
// degrees apart).  The angle guard keeps branch tips, so a doubled branch
// loses its redundant rail instead of retracting into its junction.
void unstaircase(Raster g) {
  const int w = g.w, h = g.h;
  std::vector<uint8_t>& m = *g.m;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (!g.at(x, y)) continue;
        int off[8][2], n = 0;
        for (int k = 0; k < 8; ++k) {
          if (g.at(x + kRing[k][0], y + kRing[k][1])) {
            off[n][0] = kRing[k][0];
            off[n][1] = kRing[k][1];
            ++n;
          }
        }
        if (n < 2) continue;
        bool between = false;
        for (int a = 0; a < n && !between; ++a)
          for (int b = a + 1; b < n && !between; ++b)
            between = off[a][0] * off[b][0] + off[a][1] * off[b][1] <= 0;
        if (between && simple_point(g, x, y)) {
          m[(size_t)y * w + x] = 0;
          changed = true;
        }
      }
  }
}

// Removes leaf chains that hit a junction in fewer than threshold cells.
// Chains ending at another leaf are whole skeleton components and stay.
void prune_spurs(Raster g, int threshold) {
  const int w = g.w, h = g.h;
  std::vector<uint8_t>& m = *g.m;
  bool removed = true;
  std::vector<size_t> chain;
  while (removed) {
    removed = false;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (!g.at(x, y) || g.degree(x, y) != 1) continue;
        chain.clear();
        chain.push_back((size_t)y * w + x);
        int px = -1, py = -1, cx = x, cy = y;
        bool prune = false;
        while ((int)chain.size() < threshold) {
          int nx = 0, ny = 0, found = 0;
          for (int k = 0; k < 8 && found < 2; ++k) {
            int tx = cx + kRing[k][0], ty = cy + kRing[k][1];
            if ((tx != px || ty != py) && g.at(tx, ty)) {
              nx = tx;
              ny = ty;
              ++found;
            }
          }
          if (found != 1) break;  // dead end or ambiguity: keep
          int d = g.degree(nx, ny);
          if (d >= 3) {
            prune = true;  // reached a junction while still short
            break;
          }
          if (d == 1) break;  // bare chain spanning tip to tip: keep
          chain.push_back((size_t)ny * w + nx);
          px = cx;
          py = cy;
          cx = nx;
          cy = ny;
        }
        if (prune) {
          for (size_t idx : chain) m[idx] = 0;
          removed = true;
        }
      }
  }
}

struct Clusters {
  std::vector<int32_t> label;  // per cell; -1 = not part of a joint cluster
  int count = 0;
  std::vector<std::pair<int, int>> snap;  // per cluster: snapped center cell
};

Clusters find_clusters(const SkeletonGrid& sk) {
  const int w = sk.spec.width, h = sk.spec.height;
  Clusters cl;
  cl.label.assign((size_t)w * h, -1);
  std::vector<uint8_t> is_cand((size_t)w * h, 0);
  Raster g{w, h, const_cast<std::vector<uint8_t>*>(&sk.mask)};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (g.at(x, y) && g.degree(x, y) >= 3) is_cand[(size_t)y * w + x] = 1;

  std::deque<std::pair<int, int>> queue;
  std::vector<std::pair<int, int>> members;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      size_t idx = (size_t)y * w + x;
      if (!is_cand[idx] || cl.label[idx] >= 0) continue;
      int id = cl.count++;
      members.clear();
      cl.label[idx] = id;
      queue.push_back({x, y});
      while (!queue.empty()) {
        auto [qx, qy] = queue.front();
        queue.pop_front();
        members.push_back({qx, qy});
        for (int k = 0; k < 8; ++k) {
          int tx = qx + kRing[k][0], ty = qy + kRing[k][1];
          if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
          size_t t = (size_t)ty * w + tx;
          if (is_cand[t] && cl.label[t] < 0) {
            cl.label[t] = id;
            queue.push_back({tx, ty});
          }
        }
      }
      double mx = 0, my = 0;
      for (auto& c : members) {
        mx += c.first;
        my += c.second;
      }
      mx /= (double)members.size();
      my /= (double)members.size();
      std::pair<int, int> best = members.front();
      double best_d = 0;
      bool first = true;
      for (auto& c : members) {
        double dx = c.first - mx, dy = c.second - my;
        double d = dx * dx + dy * dy;
        std::pair<int, int> rm{c.second, c.first};  // compare iy before ix
        std::pair<int, int> brm{best.second, best.first};
        if (first || d < best_d - 1e-12 ||
            (d < best_d + 1e-12 && rm < brm)) {
          best = c;
          best_d = d;
          first = false;
        }
      }
      cl.snap.push_back(best);
    }
  return cl;
}

}  // namespace

size_t SkeletonGrid::count() const {
  size_t n = 0;
  for (uint8_t v : mask) n += v != 0;
  return n;
}

SkeletonGrid extract_skeleton(const DistanceField& dist, const Floorplan& fp,
                              double prune_below) {
  GridSpec check = GridSpec::cover(fp, dist.spec.resolution);
  if (check.width != dist.spec.width || check.height != dist.spec.height)
    throw ContractError("distance field grid does not match the floorplan");

  SkeletonGrid sk;
  sk.spec = dist.spec;
  sk.mask.assign(dist.dist.size(), 0);
  size_t interior = 0;
  for (size_t i = 0; i < dist.dist.size(); ++i)
    if (dist.dist[i] != kExteriorSentinel) {
      sk.mask[i] = 1;
      ++interior;
    }
  if (interior == 0)
    throw InfeasibleError(
        "floorplan has no interior cells at this resolution; "
        "use a finer resolution",
        {});

  Raster g{sk.spec.width, sk.spec.height, &sk.mask};
  thin(g, ridge_anchors(dist));
  polish(g);
  unstaircase(g);
  int threshold = std::max(
      3, (int)std::ceil(prune_below / sk.spec.resolution - 1e-9));
  prune_spurs(g, threshold);

  if (sk.count() == 0)
    throw InfeasibleError(
        "interior is too thin to skeletonize at this resolution; "
        "use a finer resolution",
        {});
  return sk;
}

std::vector<ConvergingPoint> detect_joints(const SkeletonGrid& sk) {
  Clusters cl = find_clusters(sk);
  Raster g{sk.spec.width, sk.spec.height,
           const_cast<std::vector<uint8_t>*>(&sk.mask)};
  std::vector<ConvergingPoint> points;
  points.reserve(cl.snap.size());
  for (int i = 0; i < cl.count; ++i) {
    ConvergingPoint p;
    p.id = (int)points.size();
    p.kind = PointKind::Joint;
    p.ix = cl.snap[i].first;
    p.iy = cl.snap[i].second;
    p.position = sk.spec.cell_center(p.ix, p.iy);
    points.push_back(p);
  }
  for (int y = 0; y < sk.spec.height; ++y)
    for (int x = 0; x < sk.spec.width; ++x) {
      size_t idx = (size_t)y * sk.spec.width + x;
      if (!sk.mask[idx] || cl.label[idx] >= 0) continue;
      if (g.degree(x, y) <= 1) {
        ConvergingPoint p;
        p.id = (int)points.size();
        p.kind = PointKind::Endpoint;
        p.ix = x;
        p.iy = y;
        p.position = sk.spec.cell_center(x, y);
        points.push_back(p);
      }
    }
  return points;
}

std::vector<ConvergingLine> build_converging_lines(
    const SkeletonGrid& sk, std::vector<ConvergingPoint>& points) {
  const int w = sk.spec.width, h = sk.spec.height;
  Clusters cl = find_clusters(sk);

  for (int i = 0; i < cl.count; ++i)
    if (i >= (int)points.size() || points[i].kind != PointKind::Joint)
      throw ContractError("points do not match this skeleton's joints");

  std::map<std::pair<int, int>, int> endpoint_at;  // (iy,ix) -> point id
  for (const auto& p : points)
    if (p.kind == PointKind::Endpoint) endpoint_at[{p.iy, p.ix}] = p.id;

  auto res = sk.spec.resolution;
  auto step_len = [&](std::pair<int, int> a, std::pair<int, int> b) {
    int dx = a.first - b.first, dy = a.second - b.second;
    return (dx && dy) ? res * std::sqrt(2.0) : res;
  };

  // Chain-degree: neighbors that are skeleton but not in any joint cluster.
  auto subdeg = [&](int x, int y) {
    int d = 0;
    for (int k = 0; k < 8; ++k) {
      int tx = x + kRing[k][0], ty = y + kRing[k][1];
      if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
      size_t t = (size_t)ty * w + tx;
      if (sk.mask[t] && cl.label[t] < 0) ++d;
    }
    return d;
  };

  // Resolve a ridge end to a converging point: joints win (lowest adjacent
  // cluster), otherwise the cell itself must be an endpoint.
  auto adjacent_clusters = [&](int x, int y) {
    std::vector<int> labels;
    for (auto& o : kScan) {
      int tx = x + o[0], ty = y + o[1];
      if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
      int lb = cl.label[(size_t)ty * w + tx];
      if (lb >= 0) labels.push_back(lb);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
  };
  auto resolve_end = [&](std::pair<int, int> cell) {
    auto labels = adjacent_clusters(cell.first, cell.second);
    if (!labels.empty()) return labels.front();
    auto it = endpoint_at.find({cell.second, cell.first});
    if (it == endpoint_at.end())
      throw ContractError("ridge end is neither joint-adjacent nor a leaf");
    return it->second;
  };

  std::vector<uint8_t> visited((size_t)w * h, 0);
  std::vector<ConvergingLine> lines;

  auto trace = [&](int sx, int sy) {
    ConvergingLine line;
    line.path.push_back({sx, sy});
    visited[(size_t)sy * w + sx] = 1;
    int cx = sx, cy = sy;
    while (true) {
      int nx = -1, ny = -1;
      for (auto& o : kScan) {
        int tx = cx + o[0], ty = cy + o[1];
        if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
        size_t t = (size_t)ty * w + tx;
        if (sk.mask[t] && cl.label[t] < 0 && !visited[t]) {
          nx = tx;
          ny = ty;
          break;
        }
      }
      if (nx < 0) break;
      line.length += step_len({cx, cy}, {nx, ny});
      line.path.push_back({nx, ny});
      visited[(size_t)ny * w + nx] = 1;
      cx = nx;
      cy = ny;
    }
    return line;
  };

  // Open ridges first: start from cells with at most one chain neighbor.
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      size_t idx = (size_t)y * w + x;
      if (!sk.mask[idx] || cl.label[idx] >= 0 || visited[idx]) continue;
      if (subdeg(x, y) > 1) continue;
      ConvergingLine line = trace(x, y);
      if (line.path.size() == 1) {
        auto labels = adjacent_clusters(x, y);
        if (labels.size() >= 2) {
          line.a = labels[0];
          line.b = labels[1];
        } else if (labels.size() == 1) {
          line.a = line.b = labels[0];
        } else {
          auto it = endpoint_at.find({y, x});
          if (it == endpoint_at.end())
            throw ContractError("isolated skeleton cell has no endpoint");
          line.a = line.b = it->second;
        }
      } else {
        line.a = resolve_end(line.path.front());
        line.b = resolve_end(line.path.back());
      }
      lines.push_back(std::move(line));
    }

  // Whatever remains is closed loops of chain cells.
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      size_t idx = (size_t)y * w + x;
      if (!sk.mask[idx] || cl.label[idx] >= 0 || visited[idx]) continue;
      ConvergingLine line = trace(x, y);
      line.closed = true;
      line.length += step_len(line.path.back(), line.path.front());
      ConvergingPoint p;
      p.id = (int)points.size();
      p.kind = PointKind::Endpoint;
      p.ix = x;
      p.iy = y;
      p.position = sk.spec.cell_center(x, y);
      points.push_back(p);
      line.a = line.b = p.id;
      lines.push_back(std::move(line));
    }

  return lines;
}

RefineOutcome refine_candidates(
    const SkeletonGrid& sk, const std::vector<ConvergingLine>& lines,
    const std::vector<ConvergingPoint>& points,
    const std::function<double(Point2, Point2)>& overlap_fn, double tau) {
  RefineOutcome out;
  out.candidates = points;
  const double res = sk.spec.resolution;

  std::vector<double> cum;
  for (const auto& line : lines) {
    if (line.path.empty()) continue;
    size_t n = line.path.size();
    cum.assign(n, 0.0);
    for (size_t i = 1; i < n; ++i) {
      auto [ax, ay] = line.path[i - 1];
      auto [bx, by] = line.path[i];
      int dx = bx - ax, dy = by - ay;
      cum[i] = cum[i - 1] + ((dx && dy) ? res * std::sqrt(2.0) : res);
    }

    auto midpoint_index = [&](size_t ia, size_t ib) {
      double target = 0.5 * (cum[ia] + cum[ib]);
      size_t best = ia;
      double best_d = 0;
      bool first = true;
      for (size_t i = ia + 1; i < ib; ++i) {
        double d = std::abs(cum[i] - target);
        if (first || d < best_d - 1e-12) {
          best = i;
          best_d = d;
          first = false;
        }
      }
      return best;
    };

    auto make_point = [&](size_t i) {
      ConvergingPoint p;
      p.id = (int)out.candidates.size();
      p.kind = PointKind::InsertedMidpoint;
      p.ix = line.path[i].first;
      p.iy = line.path[i].second;
      p.position = sk.spec.cell_center(p.ix, p.iy);
      out.candidates.push_back(p);
      return p.id;
    };

    auto split = [&](auto&& self, size_t ia, size_t ib, int id_a,
                     int id_b) -> void {
      double o = overlap_fn(out.candidates[id_a].position,
                            out.candidates[id_b].position);
      if (o >= tau - 1e-12) return;
      if (cum[ib] - cum[ia] < 2.0 * res - 1e-12 || ib - ia < 2) {
        out.flagged.push_back({id_a, id_b});
        return;
      }
      size_t mid = midpoint_index(ia, ib);
      int nid = make_point(mid);
      self(self, ia, mid, id_a, nid);
      self(self, mid, ib, nid, id_b);
    };

    size_t last = line.path.size() - 1;
    if (!line.closed) {
      if (last >= 1) split(split, 0, last, line.a, line.b);
      // Single-cell ridges between two joints can take no midpoint; flag
      // the pair if it falls short.
      else if (line.a != line.b &&
               overlap_fn(out.candidates[line.a].position,
                          out.candidates[line.b].position) < tau - 1e-12)
        out.flagged.push_back({line.a, line.b});
    } else if (last >= 2) {
      // A loop has one converging point, so probe its antipode to decide
      // whether the ring needs densifying at all.
      size_t mid = midpoint_index(0, last);
      double o = overlap_fn(out.candidates[line.a].position,
                            sk.spec.cell_center(line.path[mid].first,
                                                line.path[mid].second));
      if (o < tau - 1e-12) {
        int nid = make_point(mid);
        split(split, 0, mid, line.a, nid);
        split(split, mid, last, nid, line.b);
      }
    }
  }
  return out;
}

}  // namespace vfplan
