#pragma once

#include <set>
#include <string>
#include <vector>

#include "capplan/ospf.hpp"
#include "capplan/topology.hpp"

namespace capplan {

// Links cut in one failure state. Empty means nominal operation.
struct FailureScenario {
  std::vector<LinkIndex> failed_links;

  bool nominal() const { return failed_links.empty(); }
  // "nominal" or the failed link ids joined by '+'.
  std::string label(const Topology& topology) const;
  bool operator==(const FailureScenario&) const = default;
};

// One scenario per link in canonical link order, the nominal scenario first
// when requested.
std::vector<FailureScenario> enumerate_single_link_failures(const Topology& topology,
                                                            bool include_nominal);

// Topology without the failed links.
Topology apply_failure(const Topology& topology, const FailureScenario& scenario);
// Same, and throws InfeasibleError naming the scenario when a pair with
// nonzero demand is disconnected.
Topology apply_failure(const Topology& topology, const FailureScenario& scenario,
                       const DemandMatrix& demands);

// A topology with some links removed plus the map back to the original link
// indices. Node indices are shared with the original.
struct Subgraph {
  Topology topology;
  std::vector<LinkIndex> original_link;  // per subgraph link

  std::vector<double> restrict_links(const std::vector<double>& per_original_link) const;
  // Per-arc values back on the original arc indexing; removed arcs get 0.
  LoadMap lift_arcs(const LoadMap& per_subgraph_arc, std::size_t original_arc_count) const;
};

Subgraph remove_links(const Topology& topology, const std::set<LinkIndex>& removed);
// Links with zero capacity are dropped.
Subgraph drop_zero_capacity(const Topology& topology,
                            const std::vector<double>& link_capacity);

}  // namespace capplan
