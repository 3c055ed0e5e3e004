#include "vfplan/planner.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <string>

#include "vfplan/errors.hpp"
#include "vfplan/parallel.hpp"

namespace vfplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int popcount_and(const uint64_t* a, const uint64_t* b, int words) {
  int n = 0;
  for (int w = 0; w < words; ++w) n += std::popcount(a[w] & b[w]);
  return n;
}

// Connected components of the selected set under graph adjacency; returns
// component index per selected position.
std::vector<int> selected_components(const std::vector<int>& selected,
                                     const CandidateGraph& graph,
                                     int* count_out) {
  int m = (int)selected.size();
  std::vector<int> comp(m, -1);
  std::vector<int> pos_of(graph.n, -1);
  for (int i = 0; i < m; ++i) pos_of[selected[i]] = i;
  int count = 0;
  std::vector<int> stack;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = count;
    stack.assign(1, i);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : graph.adj[selected[u]]) {
        int j = pos_of[w];
        if (j >= 0 && comp[j] < 0) {
          comp[j] = count;
          stack.push_back(j);
        }
      }
    }
    ++count;
  }
  if (count_out) *count_out = count;
  return comp;
}

}  // namespace

bool ViewpointNetwork::contains(int candidate) const {
  return std::find(selected.begin(), selected.end(), candidate) !=
         selected.end();
}

CoverageTable build_coverage_table(const std::vector<VisRecord>& recs,
                                   const BoundarySet& bounds,
                                   double coverage_fraction) {
  if (coverage_fraction <= 0.0 || coverage_fraction > 1.0)
    throw ContractError("coverage fraction must be in (0,1]");
  CoverageTable table;
  table.candidates = (int)recs.size();
  table.segments = (int)bounds.segments.size();
  table.words = (table.segments + 63) / 64;
  table.bits.assign((size_t)table.candidates * table.words, 0);
  table.cover_counts.assign(table.candidates, 0);

  for (int c = 0; c < table.candidates; ++c) {
    const VisRecord& rec = recs[c];
    if (rec.bounds != &bounds)
      throw ContractError("record was built over a different boundary set");
    uint64_t* row = table.bits.data() + (size_t)c * table.words;
    for (int s = 0; s < table.segments; ++s) {
      const BoundarySegment& seg = bounds.segments[s];
      std::vector<Interval> clip{{seg.t0, seg.t1}};
      double span_len = bounds.spans[seg.span].length();
      double vis_len =
          interval_measure(interval_intersect(rec.vis[seg.span], clip)) *
          span_len;
      if (vis_len >= coverage_fraction * seg.length() - 1e-9) {
        row[s >> 6] |= uint64_t{1} << (s & 63);
        ++table.cover_counts[c];
      }
    }
  }

  for (int s = 0; s < table.segments; ++s) {
    bool any = false;
    for (int c = 0; c < table.candidates && !any; ++c)
      any = table.covers(c, s);
    if (!any) table.uncoverable.push_back(s);
  }
  return table;
}

CandidateGraph build_candidate_graph(const std::vector<VisRecord>& recs,
                                     double tau, OverlapMetric metric,
                                     int threads) {
  CandidateGraph g;
  g.n = (int)recs.size();
  g.tau = tau;
  g.metric = metric;
  g.overlap.assign((size_t)g.n * g.n, 0.0);
  for (int i = 0; i < g.n; ++i) g.overlap[(size_t)i * g.n + i] = 1.0;

  parallel_for(g.n, threads, [&](int a) {
    for (int b = a + 1; b < g.n; ++b) {
      double o = select_ratio(overlap_ratios(recs[a], recs[b]), metric);
      g.overlap[(size_t)a * g.n + b] = o;
      g.overlap[(size_t)b * g.n + a] = o;
    }
  });

  g.adj.assign(g.n, {});
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.has_edge(a, b)) g.adj[a].push_back(b);
  return g;
}

ViewpointNetwork greedy_select(const CoverageTable& table,
                               const CandidateGraph& graph) {
  if (table.candidates != graph.n)
    throw ContractError("coverage table and candidate graph disagree");
  if (!table.uncoverable.empty())
    throw InfeasibleError(
        "no candidate viewpoint can observe " +
            std::to_string(table.uncoverable.size()) +
            " boundary segment(s); increase r_max or refine the scene",
        table.uncoverable);

  ViewpointNetwork net;
  if (table.segments == 0 || table.candidates == 0) return net;

  int words = table.words;
  std::vector<uint64_t> uncovered(words, ~uint64_t{0});
  int tail = table.segments & 63;
  if (tail) uncovered[words - 1] = (uint64_t{1} << tail) - 1;
  int remaining = table.segments;

  std::vector<uint8_t> in_net(table.candidates, 0);
  std::vector<uint8_t> frontier(table.candidates, 0);

  auto add = [&](int c) {
    net.selected.push_back(c);
    net.roles.push_back(Role::Cover);
    in_net[c] = 1;
    frontier[c] = 0;
    const uint64_t* row = table.row(c);
    for (int w = 0; w < words; ++w) {
      remaining -= std::popcount(uncovered[w] & row[w]);
      uncovered[w] &= ~row[w];
    }
    for (int w : graph.adj[c])
      if (!in_net[w]) frontier[w] = 1;
  };

  auto overlap_with_net = [&](int c) {
    double best = 0.0;
    for (int s : net.selected) best = std::max(best, graph.at(c, s));
    return best;
  };

  while (remaining > 0) {
    int best = -1, best_gain = 0;
    double best_ovl = 0.0;
    // Frontier first; ascending ids with strict comparisons give the
    // lowest-id winner on exact ties.
    for (int c = 0; c < table.candidates; ++c) {
      if (!frontier[c] || in_net[c]) continue;
      int gain = popcount_and(table.row(c), uncovered.data(), words);
      if (gain == 0) continue;
      double ovl = overlap_with_net(c);
      if (best < 0 || gain > best_gain ||
          (gain == best_gain && ovl > best_ovl)) {
        best = c;
        best_gain = gain;
        best_ovl = ovl;
      }
    }
    if (best < 0) {
      // Frontier exhausted: reseed on the best remaining coverer.
      for (int c = 0; c < table.candidates; ++c) {
        if (in_net[c]) continue;
        int gain = popcount_and(table.row(c), uncovered.data(), words);
        if (gain > best_gain) {
          best = c;
          best_gain = gain;
        }
      }
    }
    if (best < 0)
      throw ContractError("uncovered segments with no eligible candidate");
    add(best);
  }

  net.cover_stage_count = (int)net.selected.size();
  return net;
}

ViewpointNetwork augment_connectivity(ViewpointNetwork net,
                                      const CandidateGraph& graph) {
  if (net.selected.size() <= 1) return net;

  while (true) {
    int comp_count = 0;
    std::vector<int> comp =
        selected_components(net.selected, graph, &comp_count);
    if (comp_count <= 1) break;

    std::vector<int> rep(comp_count, graph.n);
    for (size_t i = 0; i < net.selected.size(); ++i)
      rep[comp[i]] = std::min(rep[comp[i]], net.selected[i]);

    std::vector<int> comp_of(graph.n, -1);
    for (size_t i = 0; i < net.selected.size(); ++i)
      comp_of[net.selected[i]] = comp[i];

    // Best bridge found so far: (distance, low rep, high rep) minimized.
    double best_dist = kInf;
    int best_lo = -1, best_hi = -1, best_target = -1, best_src_comp = -1;
    std::vector<int> best_parent;

    std::vector<double> dist(graph.n);
    std::vector<int> parent(graph.n);
    for (int ci = 0; ci < comp_count; ++ci) {
      dist.assign(graph.n, kInf);
      parent.assign(graph.n, -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
      for (size_t i = 0; i < net.selected.size(); ++i)
        if (comp[i] == ci) {
          dist[net.selected[i]] = 0.0;
          heap.push({0.0, net.selected[i]});
        }
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (int w : graph.adj[u]) {
          double nd = d + graph.weight(u, w);
          if (nd < dist[w]) {
            dist[w] = nd;
            parent[w] = u;
            heap.push({nd, w});
          }
        }
      }
      for (int cj = 0; cj < comp_count; ++cj) {
        if (cj == ci) continue;
        int target = -1;
        double td = kInf;
        for (size_t i = 0; i < net.selected.size(); ++i)
          if (comp[i] == cj && dist[net.selected[i]] < td) {
            td = dist[net.selected[i]];
            target = net.selected[i];
          }
        if (target < 0) continue;
        int lo = std::min(rep[ci], rep[cj]), hi = std::max(rep[ci], rep[cj]);
        if (td < best_dist ||
            (td == best_dist &&
             (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
          best_dist = td;
          best_lo = lo;
          best_hi = hi;
          best_target = target;
          best_src_comp = ci;
          best_parent = parent;
        }
      }
    }

    if (best_target < 0)
      throw InfeasibleError(
          "selected viewpoints cannot be connected: no overlap path at "
          "this tau",
          {});

    // Walk the path back to the source component; interiors become
    // connectors.
    std::vector<int> path;
    for (int u = best_target; u >= 0; u = best_parent[u]) {
      path.push_back(u);
      if (comp_of[u] == best_src_comp) break;
    }
    std::reverse(path.begin(), path.end());
    for (int u : path)
      if (comp_of[u] < 0 && !net.contains(u)) {
        net.selected.push_back(u);
        net.roles.push_back(Role::Connector);
      }
  }
  return net;
}

ViewpointNetwork reinforce_cycles(ViewpointNetwork net,
                                  const CandidateGraph& graph) {
  if (net.selected.size() <= 1) return net;
  double budget = 2.0 * (1.0 - graph.tau) + 1e-12;

  std::vector<uint8_t> in_net(graph.n, 0);
  for (int c : net.selected) in_net[c] = 1;
  auto degree = [&](int u) {
    int d = 0;
    for (int w : graph.adj[u]) d += in_net[w];
    return d;
  };

  std::vector<int> order = net.selected;
  std::sort(order.begin(), order.end());
  for (int u : order) {
    if (degree(u) != 1) continue;
    int best_w = -1;
    double best_cost = kInf;
    for (int w : graph.adj[u]) {
      if (in_net[w]) continue;
      double second = kInf;
      for (int v : graph.adj[w])
        if (in_net[v] && v != u) second = std::min(second, graph.weight(w, v));
      if (second == kInf) continue;
      double cost = graph.weight(u, w) + second;
      if (cost <= budget && cost < best_cost) {
        best_cost = cost;
        best_w = w;
      }
    }
    if (best_w >= 0) {
      net.selected.push_back(best_w);
      net.roles.push_back(Role::Connector);
      in_net[best_w] = 1;
    } else {
      net.accepted_leaves.push_back(u);
    }
  }
  return net;
}

ViewpointNetwork prune_redundant(ViewpointNetwork net,
                                 const CoverageTable& table,
                                 const CandidateGraph& graph) {
  if (net.selected.empty()) return net;

  std::vector<int> cover_count(table.segments, 0);
  for (int c : net.selected)
    for (int s = 0; s < table.segments; ++s)
      if (table.covers(c, s)) ++cover_count[s];

  bool removed = true;
  while (removed) {
    removed = false;
    std::vector<size_t> order(net.selected.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return net.selected[a] > net.selected[b];
    });

    for (size_t pos : order) {
      int c = net.selected[pos];
      if (net.selected.size() == 1) break;
      bool coverage_ok = true;
      for (int s = 0; s < table.segments && coverage_ok; ++s)
        if (table.covers(c, s) && cover_count[s] < 2) coverage_ok = false;
      if (!coverage_ok) continue;

      std::vector<int> rest;
      rest.reserve(net.selected.size() - 1);
      for (size_t i = 0; i < net.selected.size(); ++i)
        if (i != pos) rest.push_back(net.selected[i]);
      int comp_count = 0;
      selected_components(rest, graph, &comp_count);
      if (comp_count > 1) continue;

      for (int s = 0; s < table.segments; ++s)
        if (table.covers(c, s)) --cover_count[s];
      net.selected.erase(net.selected.begin() + pos);
      net.roles.erase(net.roles.begin() + pos);
      net.accepted_leaves.erase(
          std::remove(net.accepted_leaves.begin(), net.accepted_leaves.end(),
                      c),
          net.accepted_leaves.end());
      removed = true;
      break;  // restart the scan: degrees and counts changed
    }
  }
  return net;
}

}  // namespace vfplan
