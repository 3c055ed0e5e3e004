#include "vfplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vfplan/errors.hpp"

namespace vfplan {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool subset_connected(const std::vector<int>& idx,
                      const CandidateGraph& graph) {
  int k = (int)idx.size();
  if (k <= 1) return true;
  UnionFind uf(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (graph.has_edge(idx[i], idx[j])) uf.unite(i, j);
  int root = uf.find(0);
  for (int i = 1; i < k; ++i)
    if (uf.find(i) != root) return false;
  return true;
}

bool next_combination(std::vector<int>& idx, int n) {
  int k = (int)idx.size();
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

// Conservative: does the occluder touch the triangle (p, a, b)?
bool touches_triangle(const Segment& occ, Point2 p, Point2 a, Point2 b) {
  if (segments_intersect_closed(occ.a, occ.b, p, a)) return true;
  if (segments_intersect_closed(occ.a, occ.b, p, b)) return true;
  if (segments_intersect_closed(occ.a, occ.b, a, b)) return true;
  auto inside = [&](Point2 q) {
    double d1 = cross(a - p, q - p);
    double d2 = cross(b - a, q - a);
    double d3 = cross(p - b, q - b);
    bool all_nonneg = d1 >= -kGeomEps && d2 >= -kGeomEps && d3 >= -kGeomEps;
    bool all_nonpos = d1 <= kGeomEps && d2 <= kGeomEps && d3 <= kGeomEps;
    return all_nonneg || all_nonpos;
  };
  return inside(occ.a) || inside(occ.b);
}

}  // namespace

ExactSolution exact_solve(const CoverageTable& table,
                          const CandidateGraph& graph, int max_candidates) {
  if (table.candidates != graph.n)
    throw ContractError("coverage table and candidate graph disagree");
  if (table.candidates > max_candidates)
    throw ContractError("exact_solve refuses instances above its cap");

  ExactSolution sol;
  int n = table.candidates;
  if (n == 0) return sol;
  if (!table.uncoverable.empty()) return sol;  // nothing can cover everything

  int words = table.words;
  std::vector<uint64_t> full(words, ~uint64_t{0});
  int tail = table.segments & 63;
  if (tail) full[words - 1] = (uint64_t{1} << tail) - 1;

  std::vector<uint64_t> acc(words);
  for (int k = 1; k <= n; ++k) {
    if (sol.opt_full >= 0) break;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      std::fill(acc.begin(), acc.end(), 0);
      for (int c : idx) {
        const uint64_t* row = table.row(c);
        for (int w = 0; w < words; ++w) acc[w] |= row[w];
      }
      if (!std::equal(acc.begin(), acc.end(), full.begin())) continue;
      if (sol.opt_cover < 0) {
        sol.opt_cover = k;
        sol.cover_witness = idx;
      }
      if (subset_connected(idx, graph)) {
        sol.opt_full = k;
        sol.full_witness = idx;
        break;
      }
    } while (next_combination(idx, n));
  }
  return sol;
}

double sampling_visibility_oracle(Point2 p, const Segment& target,
                                  const ScannerModel& scanner,
                                  const std::vector<Segment>& occluders,
                                  long rays) {
  if (rays < 1) throw ContractError("ray count must be positive");
  Point2 a = target.a, b = target.b;
  Point2 e = b - a;
  Point2 w = a - p;  // target origin relative to the viewpoint

  double alpha0 = std::atan2(a.y - p.y, a.x - p.x);
  double alpha1 = std::atan2(b.y - p.y, b.x - p.x);
  double delta = std::remainder(alpha1 - alpha0, 2.0 * M_PI);
  if (std::abs(delta) < 1e-12) return 0.0;

  struct Cand {
    Point2 va, vb, g;  // endpoints relative to p, and the direction
  };
  std::vector<Cand> cands;
  for (const Segment& occ : occluders)
    if (touches_triangle(occ, p, a, b))
      cands.push_back({occ.a - p, occ.b - p, occ.b - occ.a});

  const double step = delta / (double)rays;
  const double rc = std::cos(step), rs = std::sin(step);
  double c = 0.0, s = 0.0;
  long visible = 0;

  for (long i = 0; i < rays; ++i) {
    if ((i & 1023) == 0) {
      double ang = alpha0 + ((double)i + 0.5) * step;
      c = std::cos(ang);
      s = std::sin(ang);
    } else {
      double nc = c * rc - s * rs;
      s = s * rc + c * rs;
      c = nc;
    }
    Point2 d{c, s};
    double denom = cross(d, e);
    if (std::abs(denom) < 1e-15) continue;
    double t = cross(w, d) / denom;
    if (t < -1e-9 || t > 1.0 + 1e-9) continue;
    double range = cross(w, e) / denom;
    if (range <= scanner.r_min || range > scanner.r_max) continue;

    bool blocked = false;
    for (const Cand& cd : cands) {
      double ca = cross(d, cd.va);
      double cb = cross(d, cd.vb);
      if (!((ca > 0.0 && cb < 0.0) || (ca < 0.0 && cb > 0.0))) continue;
      double hd = cross(d, cd.g);
      if (hd == 0.0) continue;
      double s_hit = cross(cd.va, cd.g) / hd;
      if (s_hit > 1e-9 && s_hit < range - 1e-9) {
        blocked = true;
        break;
      }
    }
    if (!blocked) ++visible;
  }
  return std::abs(delta) * (double)visible / (double)rays;
}

}  // namespace vfplan
