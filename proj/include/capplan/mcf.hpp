#pragma once

#include <vector>

#include "capplan/ospf.hpp"
#include "capplan/topology.hpp"

namespace capplan {

// Destination-based splittable routing that minimizes the maximum link
// utilization. Solved by Dantzig-Wolfe column generation: the master LP
// mixes, per destination, in-trees of allowed arcs; pricing is a
// shortest-path tree under the master's dual arc lengths. The dual lengths
// also give the lower bound carried as the optimality certificate.

// Optional per-(destination, node) forced next arc. -1 means the node may
// use any outgoing arc with positive capacity. An empty `forced` vector
// leaves every node free (full SDN).
struct ArcRestriction {
  std::vector<ArcIndex> forced;  // index: destination * node_count + node

  bool empty() const { return forced.empty(); }
  ArcIndex at(std::size_t node_count, NodeIndex destination, NodeIndex node) const {
    return forced.empty() ? -1 : forced[destination * node_count + node];
  }
};

struct FlowSolution {
  // Aggregate flow toward each destination per arc; empty for destinations
  // without demand. Acyclic per destination.
  std::vector<std::vector<double>> destination_flow;
  LoadMap loads;
  double max_utilization = 0.0;
  // Lower bound on the optimal max utilization, from `arc_weights`.
  double lower_bound = 0.0;
  // Dual arc lengths normalized so that sum(weight * capacity) = 1; the
  // bound equals sum over demands of volume * weighted distance.
  std::vector<double> arc_weights;
  int column_generation_rounds = 0;

  double relative_gap() const;
  // Flow of one commodity per arc, splitting at every node in proportion
  // to the destination's aggregate outflow.
  std::vector<double> commodity_flow(const Topology& topology,
                                     const DemandMatrix& demands, NodeIndex source,
                                     NodeIndex destination) const;
};

struct McfOptions {
  double gap_tolerance = 1e-9;
  int max_rounds = 10000;
};

// Columns kept between solves of the same (topology, demands) instance under
// changing capacities.
struct McfWarmStart {
  struct Column {
    std::vector<std::pair<int, double>> arc_load;  // (arc, Gbps)
  };
  std::vector<std::vector<Column>> by_destination;
};

// Links with zero capacity are treated as absent for free nodes; a forced
// arc on such a link makes the instance infeasible. Throws InfeasibleError
// when a demand has no usable route.
FlowSolution solve_min_max_utilization(const Topology& topology,
                                       const DemandMatrix& demands,
                                       const std::vector<double>& link_capacity,
                                       const ArcRestriction& restriction,
                                       const McfOptions& options = {},
                                       McfWarmStart* warm_start = nullptr);

// Full-SDN routing model.
FlowSolution min_max_utilization_flow(const Topology& topology,
                                      const DemandMatrix& demands,
                                      const std::vector<double>& link_capacity,
                                      const McfOptions& options = {});

struct Overload {
  ArcIndex arc = -1;
  double overload = 0.0;  // load * op_factor - capacity; <= 0 means no congestion
};

// Directed link with the largest overload. Ties go to the smaller link id,
// then a->b before b->a.
Overload max_overload(const Topology& topology, const LoadMap& loads,
                      const std::vector<double>& link_capacity, double op_factor);

// Overloads up to this many Gbps are numerical noise, not congestion.
inline constexpr double kOverloadTolerance = 1e-6;

inline bool congested(double overload) { return overload > kOverloadTolerance; }

// Number of directed links whose overload is congestion.
int congested_arc_count(const Topology& topology, const LoadMap& loads,
                        const std::vector<double>& link_capacity, double op_factor);

// Removes flow cycles of a single-destination arc flow in place.
void cancel_cycles(const Topology& topology, std::vector<double>& arc_flow);

}  // namespace capplan
