#pragma once

#include <limits>
#include <vector>

#include "capplan/topology.hpp"

namespace capplan {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Per directed link (ArcIndex), Gbps.
using LoadMap = std::vector<double>;

// Equal-cost paths are resolved to the lexicographically smallest node-id
// sequence. Distances that agree within this relative tolerance are ties.
bool same_distance(double x, double y);

// Single-destination shortest paths under link metrics. Nodes flagged in
// `blocked` are never traversed (the destination itself always is).
struct PathsToward {
  NodeIndex destination = -1;
  std::vector<double> distance;
  std::vector<ArcIndex> next_arc;  // -1 at the destination or if unreachable
};

PathsToward shortest_paths_toward(const Topology& topology, NodeIndex destination,
                                  const std::vector<bool>& blocked = {});

struct SpfTree {
  NodeIndex source = -1;
  std::vector<double> distance;
  std::vector<ArcIndex> parent_arc;  // arc entering the node; -1 at the source
  std::vector<NodeIndex> parent;     // -1 at the source

  // Arcs from the source to `target`, in travel order.
  std::vector<ArcIndex> path_to(NodeIndex target) const;
};

// Throws ValidationError naming the first unreachable node.
SpfTree spf(const Topology& topology, NodeIndex source);

// Destination-based next hops.
class ForwardingMap {
 public:
  ForwardingMap() = default;
  ForwardingMap(std::size_t node_count, std::vector<ArcIndex> next_arc)
      : n_(node_count), next_arc_(std::move(next_arc)) {}

  std::size_t node_count() const { return n_; }
  ArcIndex next_arc(NodeIndex node, NodeIndex destination) const {
    return next_arc_[static_cast<std::size_t>(destination) * n_ + node];
  }
  // Arcs from `source` to `destination`; empty if unreachable or equal.
  std::vector<ArcIndex> path(const Topology& topology, NodeIndex source,
                             NodeIndex destination) const;

 private:
  std::size_t n_ = 0;
  std::vector<ArcIndex> next_arc_;
};

ForwardingMap ospf_forwarding(const Topology& topology);

// Throws InfeasibleError listing demand pairs without a route.
LoadMap ospf_loads(const Topology& topology, const DemandMatrix& demands);
LoadMap ospf_loads(const Topology& topology, const ForwardingMap& forwarding,
                   const DemandMatrix& demands);

double max_arc_load(const LoadMap& loads);
// max(load / capacity) over arcs; +inf when a loaded arc has zero capacity.
double max_utilization(const LoadMap& loads, const std::vector<double>& link_capacity);

}  // namespace capplan
