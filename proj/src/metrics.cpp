#include "vfplan/metrics.hpp"

#include <limits>
#include <queue>
#include <vector>

namespace vfplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDisconnectedPenalty = 100.0;

// Shortest weighted paths from selected[src] to every other selected node,
// restricted to the induced subgraph.
std::vector<double> induced_dijkstra(const std::vector<int>& selected,
                                     const CandidateGraph& graph, size_t src) {
  size_t m = selected.size();
  std::vector<int> pos_of(graph.n, -1);
  for (size_t i = 0; i < m; ++i) pos_of[selected[i]] = (int)i;

  std::vector<double> dist(m, kInf);
  dist[src] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, (int)src});
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (d > dist[i]) continue;
    for (int w : graph.adj[selected[i]]) {
      int j = pos_of[w];
      if (j < 0) continue;
      double nd = d + graph.weight(selected[i], w);
      if (nd < dist[j]) {
        dist[j] = nd;
        heap.push({nd, j});
      }
    }
  }
  return dist;
}

}  // namespace

double compute_wapl(const ViewpointNetwork& net, const CandidateGraph& graph) {
  size_t m = net.selected.size();
  if (m <= 1) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < m; ++i) {
    std::vector<double> dist = induced_dijkstra(net.selected, graph, i);
    for (size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      total += dist[j] == kInf ? kDisconnectedPenalty : dist[j];
    }
  }
  return total / ((double)m * (double)(m - 1));
}

MetricsReport compute_report(const ViewpointNetwork& net,
                             const CoverageTable& table,
                             const CandidateGraph& graph) {
  MetricsReport rep;
  rep.vc = (int)net.selected.size();
  rep.wapl = compute_wapl(net, graph);

  int covered = 0;
  for (int s = 0; s < table.segments; ++s) {
    bool any = false;
    for (int c : net.selected)
      if (table.covers(c, s)) {
        any = true;
        break;
      }
    covered += any;
  }
  rep.coverage_percent =
      table.segments == 0 ? 100.0 : 100.0 * covered / table.segments;

  if (!net.selected.empty()) {
    std::vector<int> comp;
    {
      // Reuse the WAPL machinery: unreachable distance means a different
      // component.
      size_t m = net.selected.size();
      comp.assign(m, -1);
      int count = 0;
      for (size_t i = 0; i < m; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<double> dist = induced_dijkstra(net.selected, graph, i);
        for (size_t j = 0; j < m; ++j)
          if (dist[j] != kInf) comp[j] = count;
        ++count;
      }
      rep.component_count = count;
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
          if (i != j && comp[i] != comp[j]) ++rep.disconnected_pairs;
    }
  }
  return rep;
}

}  // namespace vfplan
