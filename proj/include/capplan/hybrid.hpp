#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "capplan/mcf.hpp"
#include "capplan/ospf.hpp"
#include "capplan/topology.hpp"

namespace capplan {

// Stacked hybrid SDN/OSPF.

struct OverlayArc {
  NodeIndex from = -1;
  NodeIndex to = -1;
  std::vector<ArcIndex> links;  // physical directed links in travel order
  bool forced = false;          // OSPF segment; otherwise an SDN link
};

// Choice graph toward one destination. Every OSPF node has one forced arc:
// its OSPF path cut at the first SDN node or at the destination. Every SDN
// node has one arc per outgoing physical link.
struct StackedOverlay {
  NodeIndex destination = -1;
  std::vector<OverlayArc> arcs;
};

StackedOverlay build_stacked_overlay(const Topology& topology,
                                     const SdnPlacement& placement,
                                     NodeIndex destination);

// OSPF nodes are pinned to their OSPF next hop, SDN nodes are free.
ArcRestriction stacked_restriction(const Topology& topology, const ForwardingMap& ospf,
                                   const SdnPlacement& placement);

// Min-max-utilization routing in which only SDN nodes may leave the OSPF
// path or split traffic. Zero-capacity links are removed before the OSPF
// paths are computed.
FlowSolution stacked_route(const Topology& topology, const SdnPlacement& placement,
                           const DemandMatrix& demands,
                           const std::vector<double>& link_capacity,
                           const McfOptions& options = {},
                           McfWarmStart* warm_start = nullptr);

// SDN Partitioning.

// Egress choice per (sub-domain, destination outside it). kOspfEgress keeps
// the honest advertisements, so traffic follows its plain OSPF path.
struct BorderRoutingPolicy {
  static constexpr NodeIndex kOspfEgress = -1;

  std::map<std::pair<int, NodeIndex>, NodeIndex> egress;
  // (border, ingress sub-domain, destination) -> next node of steered traffic.
  std::map<std::tuple<NodeIndex, int, NodeIndex>, NodeIndex> next_hop;

  NodeIndex egress_of(int subdomain, NodeIndex destination) const;
};

struct PartitionOptions {
  int max_moves = 1000;
  // Policy spaces up to this size (counted in distinct per-destination flow
  // patterns) are searched exhaustively instead of by local search.
  std::size_t exhaustive_limit = 65536;
  // Overload counts load * op_factor above capacity.
  double op_factor = 1.0;
};

struct PartitionRouteResult {
  FlowSolution flow;  // lower_bound and arc_weights are not computed
  BorderRoutingPolicy policy;
  std::vector<int> subdomain;  // per node, -1 for borders
  int moves = 0;
  bool exhaustive = false;
};

struct AdvertisedMetrics {
  // (sub-domain, destination) -> border -> advertised metric
  std::map<std::pair<int, NodeIndex>, std::map<NodeIndex, double>> metric;
  std::vector<std::string> not_realizable;

  bool ok() const { return not_realizable.empty(); }
};

// Routing state of one topology with a fixed border set. Sub-domains are the
// components left after removing the borders, so they follow link failures.
//
// Forwarding of a commodity (s, t):
//  - inside t's own sub-domain, and for sources that are borders: OSPF;
//  - at a node of sub-domain i with egress border b for t: shortest path to b
//    inside i, then from b the shortest path to t that avoids i, up to the
//    first non-border node;
//  - with the OSPF egress: one OSPF hop at a time.
// A policy under which some route revisits a node is invalid.
// route() fills internal caches, so one instance must not be shared across
// threads.
class PartitionRouter {
 public:
  PartitionRouter(Topology topology, const std::set<NodeIndex>& borders,
                  DemandMatrix demands);

  const Topology& topology() const { return topology_; }
  int subdomain_count() const { return subdomain_count_; }
  const std::vector<int>& subdomain() const { return label_; }
  const std::vector<NodeIndex>& adjacent_borders(int subdomain) const {
    return adjacent_[subdomain];
  }

  // (sub-domain, destination) pairs a policy decides, in canonical order:
  // sub-domain, then destination id. Only destinations with demand.
  std::vector<std::pair<int, NodeIndex>> policy_keys() const;

  // nullopt when the route revisits a node or does not exist.
  std::optional<std::vector<ArcIndex>> route_commodity(
      NodeIndex source, NodeIndex destination, const BorderRoutingPolicy& policy) const;
  // nullopt when any demand has no valid route.
  std::optional<LoadMap> loads(const BorderRoutingPolicy& policy) const;

  // Policy search minimizing max utilization, then total overload, starting
  // from the OSPF policy.
  PartitionRouteResult route(const std::vector<double>& link_capacity,
                             const PartitionOptions& options = {}) const;

  AdvertisedMetrics advertised_metrics(const BorderRoutingPolicy& policy) const;

 private:
  using Choice = std::vector<int>;  // option per (sub-domain * n + destination)
  using SparseFlow = std::vector<std::pair<ArcIndex, double>>;
  struct Candidate {
    bool ready = false;
    bool valid = false;
    SparseFlow flow;
  };
  using SteerLog = std::vector<std::tuple<NodeIndex, int, NodeIndex>>;

  bool walk(NodeIndex s, NodeIndex t, const Choice& choice, std::vector<ArcIndex>& arcs,
            SteerLog* log) const;
  bool destination_flow(NodeIndex t, const Choice& choice, std::vector<double>& flow) const;
  Choice to_choice(const BorderRoutingPolicy& policy) const;
  BorderRoutingPolicy to_policy(const Choice& choice) const;
  std::size_t slot(int subdomain, NodeIndex destination) const {
    return static_cast<std::size_t>(subdomain) * topology_.node_count() + destination;
  }
  bool exhaustive_search(const std::vector<double>& link_capacity,
                         const std::vector<NodeIndex>& destinations,
                         std::size_t limit, double op_factor, Choice& choice) const;
  SparseFlow sparse_flow(NodeIndex t, const Choice& choice, bool& valid) const;
  // Flow of one destination when only `key` deviates from the OSPF policy.
  // Capacity-independent, so cached across route() calls.
  const Candidate& baseline_candidate(std::size_t key, int option) const;
  const std::vector<std::pair<int, NodeIndex>>& policy_keys_cache() const;
  int local_search(const std::vector<double>& link_capacity,
                   const std::vector<NodeIndex>& destinations,
                   const PartitionOptions& options, Choice& choice) const;

  Topology topology_;
  DemandMatrix demands_;
  std::vector<int> label_;
  int subdomain_count_ = 0;
  std::vector<std::vector<NodeIndex>> adjacent_;
  ForwardingMap ospf_;
  std::vector<std::vector<double>> ospf_distance_;       // per destination
  std::vector<std::vector<PathsToward>> to_border_;      // [sub-domain][border option]
  std::vector<PathsToward> steer_;                       // [sub-domain * n + destination]
  mutable std::vector<std::vector<Candidate>> baseline_;  // [key][option]
  mutable std::vector<std::pair<int, NodeIndex>> keys_;
  mutable bool keys_ready_ = false;
};

// Validates the partition (ValidationError otherwise), drops zero-capacity
// links and routes.
PartitionRouteResult partition_route(const Topology& topology, const Partition& partition,
                                     const DemandMatrix& demands,
                                     const std::vector<double>& link_capacity,
                                     const PartitionOptions& options = {});

// Advertised metrics that make every source of a sub-domain pick the policy's
// egress: 0 at the chosen border and more than the sub-domain's diameter at
// the others; honest OSPF distances for the OSPF egress.
AdvertisedMetrics realizable_metrics(const BorderRoutingPolicy& policy,
                                     const Topology& topology, const Partition& partition);

std::string policy_to_json(const BorderRoutingPolicy& policy, const Topology& topology,
                           const std::vector<int>& subdomain);

}  // namespace capplan
