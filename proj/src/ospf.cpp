#include "capplan/ospf.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "capplan/error.hpp"

namespace capplan {
namespace {

struct QueueEntry {
  double distance;
  int rank;
  NodeIndex node;
  bool operator>(const QueueEntry& o) const {
    if (distance != o.distance) return distance > o.distance;
    return rank > o.rank;
  }
};

using MinQueue =
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

// Distances from `origin` to every node (metrics are symmetric).
std::vector<double> dijkstra(const Topology& topology, NodeIndex origin,
                             const std::vector<bool>& blocked) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  std::vector<double> dist(n, kUnreachable);
  std::vector<bool> done(n, false);
  MinQueue queue;
  dist[origin] = 0.0;
  queue.push({0.0, topology.node_rank(origin), origin});
  while (!queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    if (done[top.node]) continue;
    done[top.node] = true;
    if (top.node != origin && !blocked.empty() && blocked[top.node]) continue;
    for (ArcIndex arc : topology.out_arcs(top.node)) {
      const NodeIndex w = topology.arc_head(arc);
      const double d = top.distance + topology.arc_metric(arc);
      if (d < dist[w]) {
        dist[w] = d;
        queue.push({d, topology.node_rank(w), w});
      }
    }
  }
  // Blocked nodes are reachable as endpoints only, never as transit.
  return dist;
}

}  // namespace

bool same_distance(double x, double y) {
  return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
}

PathsToward shortest_paths_toward(const Topology& topology, NodeIndex destination,
                                  const std::vector<bool>& blocked) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  PathsToward out;
  out.destination = destination;
  out.distance = dijkstra(topology, destination, blocked);
  out.next_arc.assign(n, -1);
  for (NodeIndex u = 0; u < n; ++u) {
    if (u == destination || out.distance[u] == kUnreachable) continue;
    for (ArcIndex arc : topology.out_arcs(u)) {
      const NodeIndex w = topology.arc_head(arc);
      if (w != destination && !blocked.empty() && blocked[w]) continue;
      if (out.distance[w] == kUnreachable) continue;
      if (same_distance(topology.arc_metric(arc) + out.distance[w], out.distance[u])) {
        out.next_arc[u] = arc;  // out_arcs is sorted by head rank, then link rank
        break;
      }
    }
  }
  return out;
}

std::vector<ArcIndex> SpfTree::path_to(NodeIndex target) const {
  std::vector<ArcIndex> arcs;
  if (distance.at(target) == kUnreachable) return arcs;
  for (NodeIndex v = target; v != source; v = parent[v]) {
    arcs.push_back(parent_arc[v]);
  }
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

SpfTree spf(const Topology& topology, NodeIndex source) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  SpfTree tree;
  tree.source = source;
  tree.distance = dijkstra(topology, source, {});
  tree.parent_arc.assign(n, -1);
  tree.parent.assign(n, -1);
  for (NodeIndex v = 0; v < n; ++v) {
    if (tree.distance[v] == kUnreachable) {
      throw ValidationError("node '" + topology.node(v).id +
                            "' is unreachable from '" + topology.node(source).id + "'");
    }
  }

  std::vector<NodeIndex> order(n);
  for (NodeIndex v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](NodeIndex x, NodeIndex y) {
    if (tree.distance[x] != tree.distance[y]) return tree.distance[x] < tree.distance[y];
    return topology.node_rank(x) < topology.node_rank(y);
  });

  // Rank sequence of the chosen path to each node; the lexicographically
  // smallest shortest paths are prefix-closed, so they form a tree.
  std::vector<std::vector<int>> seq(n);
  std::vector<bool> settled(n, false);
  seq[source] = {topology.node_rank(source)};
  settled[source] = true;
  for (NodeIndex x : order) {
    if (x == source) continue;
    ArcIndex best_arc = -1;
    std::vector<int> best_seq;
    for (ArcIndex out : topology.out_arcs(x)) {
      const ArcIndex in = reverse_arc(out);  // w -> x
      const NodeIndex w = topology.arc_head(out);
      if (!settled[w]) continue;
      if (!same_distance(tree.distance[w] + topology.arc_metric(in), tree.distance[x])) {
        continue;
      }
      std::vector<int> candidate = seq[w];
      candidate.push_back(topology.node_rank(x));
      const bool better =
          best_arc == -1 || candidate < best_seq ||
          (candidate == best_seq &&
           topology.link_rank(arc_link(in)) < topology.link_rank(arc_link(best_arc)));
      if (better) {
        best_arc = in;
        best_seq = std::move(candidate);
      }
    }
    tree.parent_arc[x] = best_arc;
    tree.parent[x] = topology.arc_tail(best_arc);
    seq[x] = std::move(best_seq);
    settled[x] = true;
  }
  return tree;
}

std::vector<ArcIndex> ForwardingMap::path(const Topology& topology, NodeIndex source,
                                          NodeIndex destination) const {
  std::vector<ArcIndex> arcs;
  NodeIndex v = source;
  while (v != destination) {
    const ArcIndex arc = next_arc(v, destination);
    if (arc < 0 || arcs.size() > n_) return {};
    arcs.push_back(arc);
    v = topology.arc_head(arc);
  }
  return arcs;
}

ForwardingMap ospf_forwarding(const Topology& topology) {
  const std::size_t n = topology.node_count();
  std::vector<ArcIndex> next(n * n, -1);
  for (NodeIndex d = 0; d < static_cast<NodeIndex>(n); ++d) {
    PathsToward paths = shortest_paths_toward(topology, d);
    std::copy(paths.next_arc.begin(), paths.next_arc.end(),
              next.begin() + static_cast<std::ptrdiff_t>(d * n));
  }
  return ForwardingMap(n, std::move(next));
}

LoadMap ospf_loads(const Topology& topology, const DemandMatrix& demands) {
  return ospf_loads(topology, ospf_forwarding(topology), demands);
}

LoadMap ospf_loads(const Topology& topology, const ForwardingMap& forwarding,
                   const DemandMatrix& demands) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  LoadMap loads(topology.arc_count(), 0.0);
  std::string unrouted;
  for (NodeIndex s = 0; s < n; ++s) {
    for (NodeIndex t = 0; t < n; ++t) {
      const double volume = demands.at(s, t);
      if (volume == 0.0) continue;
      NodeIndex v = s;
      std::size_t hops = 0;
      while (v != t) {
        const ArcIndex arc = forwarding.next_arc(v, t);
        if (arc < 0 || ++hops > static_cast<std::size_t>(n)) break;
        loads[arc] += volume;
        v = topology.arc_head(arc);
      }
      if (v != t) {
        unrouted += " " + topology.node(s).id + "->" + topology.node(t).id;
      }
    }
  }
  if (!unrouted.empty()) throw InfeasibleError("no route for demand pairs:" + unrouted);
  return loads;
}

double max_arc_load(const LoadMap& loads) {
  double m = 0.0;
  for (double v : loads) m = std::max(m, v);
  return m;
}

double max_utilization(const LoadMap& loads, const std::vector<double>& link_capacity) {
  double u = 0.0;
  for (ArcIndex a = 0; a < static_cast<ArcIndex>(loads.size()); ++a) {
    if (loads[a] <= 0.0) continue;
    const double c = link_capacity[arc_link(a)];
    if (c <= 0.0) return kUnreachable;
    u = std::max(u, loads[a] / c);
  }
  return u;
}

}  // namespace capplan
