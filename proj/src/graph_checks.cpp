#include "capplan/graph_checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "capplan/error.hpp"

namespace capplan {

Components connected_components(const Topology& topology,
                                const std::vector<bool>& excluded) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  Components out;
  out.label.assign(n, -1);

  std::vector<NodeIndex> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::sort(by_rank.begin(), by_rank.end(), [&](NodeIndex x, NodeIndex y) {
    return topology.node_rank(x) < topology.node_rank(y);
  });
  auto is_excluded = [&](NodeIndex v) {
    return !excluded.empty() && excluded[v];
  };

  std::vector<NodeIndex> stack;
  for (NodeIndex root : by_rank) {
    if (is_excluded(root) || out.label[root] != -1) continue;
    const int label = out.count++;
    out.label[root] = label;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeIndex v = stack.back();
      stack.pop_back();
      for (ArcIndex arc : topology.out_arcs(v)) {
        const NodeIndex w = topology.arc_head(arc);
        if (is_excluded(w) || out.label[w] != -1) continue;
        out.label[w] = label;
        stack.push_back(w);
      }
    }
  }
  return out;
}

bool is_connected(const Topology& topology) {
  return connected_components(topology).count <= 1;
}

BridgeReport check_two_edge_connected(const Topology& topology) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  if (!is_connected(topology)) {
    throw ValidationError("topology is not connected");
  }
  BridgeReport report;
  if (n == 0) return report;

  // Iterative Tarjan lowlink; parallel links are distinguished by link index.
  std::vector<int> disc(n, -1), low(n, 0);
  struct Frame {
    NodeIndex v;
    LinkIndex via;
    std::size_t next;
  };
  int timer = 0;
  std::vector<Frame> stack{{0, -1, 0}};
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto arcs = topology.out_arcs(f.v);
    if (f.next < arcs.size()) {
      const ArcIndex arc = arcs[f.next++];
      const LinkIndex l = arc_link(arc);
      if (l == f.via) continue;
      const NodeIndex w = topology.arc_head(arc);
      if (disc[w] == -1) {
        disc[w] = low[w] = timer++;
        stack.push_back({w, l, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    const Frame done = f;
    stack.pop_back();
    if (!stack.empty()) {
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (low[done.v] > disc[parent.v]) report.bridges.push_back(done.via);
    }
  }
  std::sort(report.bridges.begin(), report.bridges.end(),
            [&](LinkIndex x, LinkIndex y) {
              return topology.link_rank(x) < topology.link_rank(y);
            });
  report.two_edge_connected = report.bridges.empty();
  return report;
}

std::string PartitionReport::to_string() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    out += "- " + v.message + "\n";
  }
  return out;
}

PartitionReport validate_partition(const Topology& topology,
                                   const Partition& partition) {
  using Kind = PartitionViolation::Kind;
  PartitionReport report;
  const auto n = static_cast<NodeIndex>(topology.node_count());
  auto add = [&](Kind kind, std::string message) {
    report.violations.push_back({kind, std::move(message)});
  };
  auto id = [&](NodeIndex v) { return topology.node(v).id; };

  for (NodeIndex v : partition.borders) {
    if (v < 0 || v >= n) add(Kind::kUnknownNode, "border index out of range");
  }
  for (const auto& [v, label] : partition.subdomain_of) {
    if (v < 0 || v >= n) {
      add(Kind::kUnknownNode, "sub-domain entry for unknown node");
      continue;
    }
    if (label < 0) add(Kind::kBadLabel, "node " + id(v) + " has negative sub-domain");
    if (partition.borders.contains(v)) {
      add(Kind::kOverlap, "node " + id(v) + " is both a border and in sub-domain " +
                              std::to_string(label));
    }
  }
  if (!report.ok()) return report;

  std::vector<bool> border(n, false);
  for (NodeIndex v : partition.borders) border[v] = true;
  for (NodeIndex v = 0; v < n; ++v) {
    if (!border[v] && !partition.subdomain_of.contains(v)) {
      add(Kind::kUnassigned, "node " + id(v) + " is neither a border nor assigned");
    }
  }

  for (LinkIndex l : topology.canonical_link_order()) {
    const Link& link = topology.link(l);
    if (border[link.a] || border[link.b]) continue;
    auto ia = partition.subdomain_of.find(link.a);
    auto ib = partition.subdomain_of.find(link.b);
    if (ia == partition.subdomain_of.end() || ib == partition.subdomain_of.end()) continue;
    if (ia->second != ib->second) {
      add(Kind::kCrossLink, "link " + topology.link_label(l) + " joins sub-domains " +
                                std::to_string(ia->second) + " and " +
                                std::to_string(ib->second));
    }
  }

  const Components comps = connected_components(topology, border);
  const int k = partition.subdomain_count();
  // Each component must carry one label, and each label one component.
  std::map<int, std::set<int>> labels_of_component;
  std::map<int, std::set<int>> components_of_label;
  for (NodeIndex v = 0; v < n; ++v) {
    if (border[v]) continue;
    auto it = partition.subdomain_of.find(v);
    if (it == partition.subdomain_of.end()) continue;
    labels_of_component[comps.label[v]].insert(it->second);
    components_of_label[it->second].insert(comps.label[v]);
  }
  for (const auto& [label, cs] : components_of_label) {
    if (cs.size() > 1) {
      add(Kind::kComponentMismatch,
          "sub-domain " + std::to_string(label) + " spans " +
              std::to_string(cs.size()) + " components once borders are removed");
    }
  }
  for (const auto& [c, labels] : labels_of_component) {
    if (labels.size() > 1) {
      add(Kind::kComponentMismatch,
          "a connected component without borders mixes " +
              std::to_string(labels.size()) + " sub-domain labels");
    }
  }
  if (comps.count != k) {
    add(Kind::kComponentCount,
        "removing the borders leaves " + std::to_string(comps.count) +
            " components, expected " + std::to_string(k));
  }
  for (int label = 0; label < k; ++label) {
    if (!components_of_label.contains(label)) {
      add(Kind::kBadLabel, "sub-domain label " + std::to_string(label) + " is unused");
    }
  }
  return report;
}

}  // namespace capplan
