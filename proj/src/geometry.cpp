#include "vfplan/geometry.hpp"

#include <algorithm>

namespace vfplan {

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= kGeomEps * kGeomEps) return dist(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + ab * t);
}

bool segment_blocks(Point2 p, Point2 q, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const Point2 pq = q - p;
  const double lab = norm(ab);
  const double lpq = norm(pq);
  if (lab < kGeomEps || lpq < kGeomEps) return false;

  // Signed distances, so the tolerance is in meters at any scale.
  const double sp = cross(ab, p - a) / lab;
  const double sq = cross(ab, q - a) / lab;
  const double sa = cross(pq, a - p) / lpq;
  const double sb = cross(pq, b - p) / lpq;

  const bool pq_straddles = (sp > kGeomEps && sq < -kGeomEps) ||
                            (sp < -kGeomEps && sq > kGeomEps);
  const bool ab_straddles = (sa > kGeomEps && sb < -kGeomEps) ||
                            (sa < -kGeomEps && sb > kGeomEps);
  if (pq_straddles && ab_straddles) return true;

  // Collinear overlap longer than the tolerance blocks; a point touch does
  // not.
  if (std::abs(sp) <= kGeomEps && std::abs(sq) <= kGeomEps &&
      std::abs(sa) <= kGeomEps && std::abs(sb) <= kGeomEps) {
    const double tp = dot(p - a, ab) / (lab * lab);
    const double tq = dot(q - a, ab) / (lab * lab);
    const double lo = std::max(std::min(tp, tq), 0.0);
    const double hi = std::min(std::max(tp, tq), 1.0);
    return (hi - lo) * lab > kGeomEps;
  }
  return false;
}

bool point_in_ring(Point2 p, const std::vector<Point2>& ring) {
  bool inside = false;
  const size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& vi = ring[i];
    const Point2& vj = ring[j];
    if ((vi.y > p.y) != (vj.y > p.y)) {
      const double xint = vj.x + (p.y - vj.y) / (vi.y - vj.y) * (vi.x - vj.x);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

double ring_signed_area(const std::vector<Point2>& ring) {
  double acc = 0.0;
  const size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    acc += cross(ring[j], ring[i]);
  }
  return 0.5 * acc;
}

namespace {

bool proper_or_touching_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  // Closed-segment intersection test, used for structural validation where
  // any contact between distinct edges is an error.
  const Point2 ab = b - a;
  const Point2 cd = d - c;
  const double lab = norm(ab);
  const double lcd = norm(cd);
  if (lab < kGeomEps || lcd < kGeomEps) return false;
  const double sc = cross(ab, c - a) / lab;
  const double sd = cross(ab, d - a) / lab;
  const double sa = cross(cd, a - c) / lcd;
  const double sb = cross(cd, b - c) / lcd;
  if ((sc > kGeomEps && sd > kGeomEps) || (sc < -kGeomEps && sd < -kGeomEps))
    return false;
  if ((sa > kGeomEps && sb > kGeomEps) || (sa < -kGeomEps && sb < -kGeomEps))
    return false;
  if (std::abs(sc) <= kGeomEps && std::abs(sd) <= kGeomEps) {
    // Collinear: overlapping extents touch.
    const double t1 = dot(c - a, ab) / (lab * lab);
    const double t2 = dot(d - a, ab) / (lab * lab);
    const double lo = std::min(t1, t2);
    const double hi = std::max(t1, t2);
    return hi >= -kGeomEps / lab && lo <= 1.0 + kGeomEps / lab;
  }
  return true;
}

}  // namespace

bool segments_intersect_closed(Point2 a, Point2 b, Point2 c, Point2 d) {
  if (norm(b - a) < kGeomEps) return point_segment_distance(a, c, d) <= kGeomEps;
  if (norm(d - c) < kGeomEps) return point_segment_distance(c, a, b) <= kGeomEps;
  return proper_or_touching_cross(a, b, c, d);
}

bool ring_self_intersects(const std::vector<Point2>& ring) {
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2 a = ring[i];
    const Point2 b = ring[(i + 1) % n];
    for (size_t j = i + 1; j < n; ++j) {
      // Skip the shared-vertex adjacency of consecutive edges.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const Point2 c = ring[j];
      const Point2 d = ring[(j + 1) % n];
      if (proper_or_touching_cross(a, b, c, d)) return true;
    }
  }
  return false;
}

bool rings_properly_intersect(const std::vector<Point2>& a,
                              const std::vector<Point2>& b) {
  const size_t n = a.size();
  const size_t m = b.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      if (proper_or_touching_cross(a[i], a[(i + 1) % n], b[j],
                                   b[(j + 1) % m]))
        return true;
    }
  }
  return false;
}

std::vector<Interval> interval_union(std::vector<Interval> xs) {
  std::vector<Interval> out;
  std::sort(xs.begin(), xs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& x : xs) {
    if (x.hi - x.lo <= 0.0) continue;
    if (!out.empty() && x.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, x.hi);
    } else {
      out.push_back(x);
    }
  }
  return out;
}

std::vector<Interval> interval_intersect(const std::vector<Interval>& a,
                                         const std::vector<Interval>& b) {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

std::vector<Interval> interval_subtract(const std::vector<Interval>& a,
                                        const std::vector<Interval>& b) {
  std::vector<Interval> out;
  size_t j = 0;
  for (Interval cur : a) {
    double lo = cur.lo;
    while (j < b.size() && b[j].hi <= lo) ++j;
    size_t k = j;
    while (k < b.size() && b[k].lo < cur.hi) {
      if (b[k].lo > lo) out.push_back({lo, b[k].lo});
      lo = std::max(lo, b[k].hi);
      if (lo >= cur.hi) break;
      ++k;
    }
    if (lo < cur.hi) out.push_back({lo, cur.hi});
  }
  return out;
}

double interval_measure(const std::vector<Interval>& xs) {
  double acc = 0.0;
  for (const Interval& x : xs) acc += x.hi - x.lo;
  return acc;
}

void AngleSet::add_arc(double alpha, double beta) {
  constexpr double kTwoPi = 2.0 * M_PI;
  // Minor arc from alpha to beta.
  double delta = std::remainder(beta - alpha, kTwoPi);
  double start = delta >= 0.0 ? alpha : beta;
  double width = std::abs(delta);
  if (width <= 0.0) return;
  start = std::fmod(start, kTwoPi);
  if (start < 0.0) start += kTwoPi;
  if (start + width > kTwoPi) {
    arcs_.push_back({start, kTwoPi});
    arcs_.push_back({0.0, start + width - kTwoPi});
  } else {
    arcs_.push_back({start, start + width});
  }
}

double AngleSet::measure() const {
  const double total = interval_measure(interval_union(arcs_));
  return std::min(total, 2.0 * M_PI);
}

}  // namespace vfplan
