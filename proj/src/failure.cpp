#include "capplan/failure.hpp"

#include <algorithm>

#include "capplan/error.hpp"
#include "capplan/graph_checks.hpp"

namespace capplan {

std::string FailureScenario::label(const Topology& topology) const {
  if (failed_links.empty()) return "nominal";
  std::string out;
  for (LinkIndex l : failed_links) {
    if (!out.empty()) out += '+';
    out += topology.link(l).id;
  }
  return out;
}

std::vector<FailureScenario> enumerate_single_link_failures(const Topology& topology,
                                                            bool include_nominal) {
  std::vector<FailureScenario> out;
  if (include_nominal) out.push_back({});
  for (LinkIndex l : topology.canonical_link_order()) out.push_back({{l}});
  return out;
}

Topology apply_failure(const Topology& topology, const FailureScenario& scenario) {
  for (LinkIndex l : scenario.failed_links) {
    if (l < 0 || l >= static_cast<LinkIndex>(topology.link_count())) {
      throw ValidationError("failure scenario references an unknown link");
    }
  }
  return topology.without_links({scenario.failed_links.begin(), scenario.failed_links.end()});
}

Topology apply_failure(const Topology& topology, const FailureScenario& scenario,
                       const DemandMatrix& demands) {
  Topology out = apply_failure(topology, scenario);
  const Components comp = connected_components(out);
  if (comp.count <= 1) return out;
  const auto n = static_cast<NodeIndex>(out.node_count());
  for (NodeIndex s = 0; s < n; ++s) {
    for (NodeIndex t = 0; t < n; ++t) {
      if (demands.at(s, t) > 0.0 && comp.label[s] != comp.label[t]) {
        throw InfeasibleError("scenario " + scenario.label(topology) + " disconnects " +
                              out.node(s).id + " from " + out.node(t).id);
      }
    }
  }
  return out;
}

std::vector<double> Subgraph::restrict_links(
    const std::vector<double>& per_original_link) const {
  std::vector<double> out(original_link.size());
  for (std::size_t l = 0; l < original_link.size(); ++l) {
    out[l] = per_original_link.at(original_link[l]);
  }
  return out;
}

LoadMap Subgraph::lift_arcs(const LoadMap& per_subgraph_arc,
                            std::size_t original_arc_count) const {
  LoadMap out(original_arc_count, 0.0);
  for (std::size_t l = 0; l < original_link.size(); ++l) {
    out[2 * original_link[l]] = per_subgraph_arc[2 * l];
    out[2 * original_link[l] + 1] = per_subgraph_arc[2 * l + 1];
  }
  return out;
}

Subgraph remove_links(const Topology& topology, const std::set<LinkIndex>& removed) {
  Subgraph out{topology.without_links(removed), {}};
  for (LinkIndex l = 0; l < static_cast<LinkIndex>(topology.link_count()); ++l) {
    if (!removed.contains(l)) out.original_link.push_back(l);
  }
  return out;
}

Subgraph drop_zero_capacity(const Topology& topology,
                            const std::vector<double>& link_capacity) {
  std::set<LinkIndex> removed;
  for (LinkIndex l = 0; l < static_cast<LinkIndex>(topology.link_count()); ++l) {
    if (!(link_capacity.at(l) > 0.0)) removed.insert(l);
  }
  return remove_links(topology, removed);
}

}  // namespace capplan
