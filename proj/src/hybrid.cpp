#include "capplan/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numeric>

#include "capplan/error.hpp"
#include "capplan/failure.hpp"
#include "capplan/graph_checks.hpp"

namespace capplan {

StackedOverlay build_stacked_overlay(const Topology& topology,
                                     const SdnPlacement& placement,
                                     NodeIndex destination) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  const PathsToward ospf = shortest_paths_toward(topology, destination);
  StackedOverlay out;
  out.destination = destination;
  for (NodeIndex v = 0; v < n; ++v) {
    if (v == destination) continue;
    if (placement.sdn_nodes.contains(v)) {
      for (ArcIndex a : topology.out_arcs(v)) {
        out.arcs.push_back({v, topology.arc_head(a), {a}, false});
      }
      continue;
    }
    if (ospf.next_arc[v] < 0) continue;
    OverlayArc arc{v, v, {}, true};
    NodeIndex u = v;
    do {
      const ArcIndex a = ospf.next_arc[u];
      arc.links.push_back(a);
      u = topology.arc_head(a);
    } while (u != destination && !placement.sdn_nodes.contains(u));
    arc.to = u;
    out.arcs.push_back(std::move(arc));
  }
  return out;
}

ArcRestriction stacked_restriction(const Topology& topology, const ForwardingMap& ospf,
                                   const SdnPlacement& placement) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  ArcRestriction r;
  r.forced.assign(static_cast<std::size_t>(n) * n, -1);
  for (NodeIndex t = 0; t < n; ++t) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (v == t || placement.sdn_nodes.contains(v)) continue;
      r.forced[static_cast<std::size_t>(t) * n + v] = ospf.next_arc(v, t);
    }
  }
  return r;
}

namespace {

FlowSolution lift_solution(const Subgraph& sub, FlowSolution sol, std::size_t arc_count) {
  sol.loads = sub.lift_arcs(sol.loads, arc_count);
  for (auto& f : sol.destination_flow) {
    if (!f.empty()) f = sub.lift_arcs(f, arc_count);
  }
  if (!sol.arc_weights.empty()) sol.arc_weights = sub.lift_arcs(sol.arc_weights, arc_count);
  return sol;
}

}  // namespace

FlowSolution stacked_route(const Topology& topology, const SdnPlacement& placement,
                           const DemandMatrix& demands,
                           const std::vector<double>& link_capacity,
                           const McfOptions& options, McfWarmStart* warm_start) {
  const Subgraph sub = drop_zero_capacity(topology, link_capacity);
  const bool dropped = sub.original_link.size() != topology.link_count();
  const ForwardingMap ospf = ospf_forwarding(sub.topology);
  FlowSolution sol = solve_min_max_utilization(
      sub.topology, demands, sub.restrict_links(link_capacity),
      stacked_restriction(sub.topology, ospf, placement), options,
      dropped ? nullptr : warm_start);
  if (!dropped) return sol;
  return lift_solution(sub, std::move(sol), topology.arc_count());
}

NodeIndex BorderRoutingPolicy::egress_of(int subdomain, NodeIndex destination) const {
  auto it = egress.find({subdomain, destination});
  return it == egress.end() ? kOspfEgress : it->second;
}

PartitionRouter::PartitionRouter(Topology topology, const std::set<NodeIndex>& borders,
                                 DemandMatrix demands)
    : topology_(std::move(topology)), demands_(std::move(demands)) {
  const auto n = static_cast<NodeIndex>(topology_.node_count());
  if (demands_.node_count() != topology_.node_count()) {
    throw ValidationError("demand matrix does not match the topology");
  }
  std::vector<bool> is_border(n, false);
  for (NodeIndex b : borders) is_border.at(b) = true;
  const Components comp = connected_components(topology_, is_border);
  label_ = comp.label;
  subdomain_count_ = comp.count;

  adjacent_.assign(subdomain_count_, {});
  for (NodeIndex b : borders) {
    for (ArcIndex a : topology_.out_arcs(b)) {
      const int i = label_[topology_.arc_head(a)];
      if (i >= 0) adjacent_[i].push_back(b);
    }
  }
  for (auto& list : adjacent_) {
    std::sort(list.begin(), list.end(), [this](NodeIndex x, NodeIndex y) {
      return topology_.node_rank(x) < topology_.node_rank(y);
    });
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  std::vector<ArcIndex> next(static_cast<std::size_t>(n) * n, -1);
  ospf_distance_.resize(n);
  for (NodeIndex t = 0; t < n; ++t) {
    PathsToward p = shortest_paths_toward(topology_, t);
    std::copy(p.next_arc.begin(), p.next_arc.end(),
              next.begin() + static_cast<std::ptrdiff_t>(t) * n);
    ospf_distance_[t] = std::move(p.distance);
  }
  ospf_ = ForwardingMap(n, std::move(next));

  to_border_.resize(subdomain_count_);
  for (int i = 0; i < subdomain_count_; ++i) {
    for (NodeIndex b : adjacent_[i]) {
      std::vector<bool> blocked(n);
      for (NodeIndex v = 0; v < n; ++v) blocked[v] = label_[v] != i && v != b;
      to_border_[i].push_back(shortest_paths_toward(topology_, b, blocked));
    }
  }
  steer_.resize(static_cast<std::size_t>(subdomain_count_) * n);
  for (int i = 0; i < subdomain_count_; ++i) {
    std::vector<bool> blocked(n);
    for (NodeIndex v = 0; v < n; ++v) blocked[v] = label_[v] == i;
    for (NodeIndex t = 0; t < n; ++t) {
      if (label_[t] == i) continue;
      steer_[slot(i, t)] = shortest_paths_toward(topology_, t, blocked);
    }
  }
}

bool PartitionRouter::walk(NodeIndex s, NodeIndex t, const Choice& choice,
                           std::vector<ArcIndex>& arcs, SteerLog* log) const {
  arcs.clear();
  std::vector<char> seen(topology_.node_count(), 0);
  NodeIndex v = s;
  seen[v] = 1;
  auto step = [&](ArcIndex a) {
    if (a < 0) return false;
    arcs.push_back(a);
    v = topology_.arc_head(a);
    if (seen[v]) return false;
    seen[v] = 1;
    return true;
  };

  const int home = label_[t];
  int steered_from = -1;
  while (v != t) {
    const int i = label_[v];
    if (i >= 0 && i == home) {
      while (v != t) {
        if (!step(ospf_.next_arc(v, t))) return false;
      }
      break;
    }
    if (i >= 0) {
      steered_from = -1;
      const int option = choice[slot(i, t)];
      if (option == 0) {
        if (!step(ospf_.next_arc(v, t))) return false;
        continue;
      }
      const NodeIndex b = adjacent_[i][option - 1];
      const PathsToward& p = to_border_[i][option - 1];
      while (v != b) {
        if (!step(p.next_arc[v])) return false;
      }
      steered_from = i;
      continue;
    }
    if (steered_from >= 0) {
      const PathsToward& p = steer_[slot(steered_from, t)];
      do {
        const ArcIndex a = p.next_arc[v];
        if (log && a >= 0) log->emplace_back(v, steered_from, topology_.arc_head(a));
        if (!step(a)) return false;
      } while (v != t && label_[v] < 0);
      steered_from = -1;
      continue;
    }
    if (!step(ospf_.next_arc(v, t))) return false;
  }
  return true;
}

bool PartitionRouter::destination_flow(NodeIndex t, const Choice& choice,
                                       std::vector<double>& flow) const {
  flow.assign(topology_.arc_count(), 0.0);
  std::vector<ArcIndex> arcs;
  for (NodeIndex s = 0; s < static_cast<NodeIndex>(topology_.node_count()); ++s) {
    const double volume = demands_.at(s, t);
    if (volume <= 0.0) continue;
    if (!walk(s, t, choice, arcs, nullptr)) return false;
    for (ArcIndex a : arcs) flow[a] += volume;
  }
  return true;
}

PartitionRouter::Choice PartitionRouter::to_choice(const BorderRoutingPolicy& policy) const {
  Choice choice(static_cast<std::size_t>(subdomain_count_) * topology_.node_count(), 0);
  for (const auto& [key, border] : policy.egress) {
    const auto [i, t] = key;
    if (border == BorderRoutingPolicy::kOspfEgress) continue;
    if (i < 0 || i >= subdomain_count_ || label_.at(t) == i) {
      throw ValidationError("policy entry does not name an external destination");
    }
    const auto& list = adjacent_[i];
    auto it = std::find(list.begin(), list.end(), border);
    if (it == list.end()) {
      throw ValidationError("egress '" + topology_.node(border).id +
                            "' is not a border of sub-domain " + std::to_string(i));
    }
    choice[slot(i, t)] = static_cast<int>(it - list.begin()) + 1;
  }
  return choice;
}

BorderRoutingPolicy PartitionRouter::to_policy(const Choice& choice) const {
  BorderRoutingPolicy policy;
  for (const auto& [i, t] : policy_keys()) {
    const int option = choice[slot(i, t)];
    policy.egress[{i, t}] =
        option == 0 ? BorderRoutingPolicy::kOspfEgress : adjacent_[i][option - 1];
  }
  SteerLog log;
  std::vector<ArcIndex> arcs;
  const auto n = static_cast<NodeIndex>(topology_.node_count());
  for (NodeIndex t = 0; t < n; ++t) {
    for (NodeIndex s = 0; s < n; ++s) {
      if (demands_.at(s, t) <= 0.0) continue;
      walk(s, t, choice, arcs, &log);
      for (const auto& [b, i, next] : log) policy.next_hop[{b, i, t}] = next;
      log.clear();
    }
  }
  return policy;
}

std::vector<std::pair<int, NodeIndex>> PartitionRouter::policy_keys() const {
  const auto n = static_cast<NodeIndex>(topology_.node_count());
  std::vector<NodeIndex> by_rank(n);
  for (NodeIndex v = 0; v < n; ++v) by_rank[topology_.node_rank(v)] = v;
  std::vector<bool> has_demand(n, false);
  for (NodeIndex t = 0; t < n; ++t) {
    for (NodeIndex s = 0; s < n && !has_demand[t]; ++s) has_demand[t] = demands_.at(s, t) > 0.0;
  }
  std::vector<std::pair<int, NodeIndex>> keys;
  for (int i = 0; i < subdomain_count_; ++i) {
    if (adjacent_[i].empty()) continue;
    for (NodeIndex t : by_rank) {
      if (has_demand[t] && label_[t] != i) keys.emplace_back(i, t);
    }
  }
  return keys;
}

std::optional<std::vector<ArcIndex>> PartitionRouter::route_commodity(
    NodeIndex source, NodeIndex destination, const BorderRoutingPolicy& policy) const {
  std::vector<ArcIndex> arcs;
  if (source == destination) return arcs;
  if (!walk(source, destination, to_choice(policy), arcs, nullptr)) return std::nullopt;
  return arcs;
}

std::optional<LoadMap> PartitionRouter::loads(const BorderRoutingPolicy& policy) const {
  const Choice choice = to_choice(policy);
  LoadMap total(topology_.arc_count(), 0.0);
  std::vector<double> flow;
  for (NodeIndex t = 0; t < static_cast<NodeIndex>(topology_.node_count()); ++t) {
    if (!destination_flow(t, choice, flow)) return std::nullopt;
    for (std::size_t a = 0; a < flow.size(); ++a) total[a] += flow[a];
  }
  return total;
}

namespace {


// Max utilization first, then total overload in Gbps.
struct Score {
  double utilization = 0.0;
  double overload = 0.0;

  bool better_than(const Score& o) const {
    if (std::isinf(o.utilization)) return !std::isinf(utilization);
    const double tol = 1e-12 * std::max(1.0, o.utilization);
    if (utilization < o.utilization - tol) return true;
    if (utilization > o.utilization + tol) return false;
    return overload < o.overload - 1e-9 * std::max(1.0, o.overload);
  }
};

Score score_of(const std::vector<double>& loads, const std::vector<double>& cap,
               double op_factor) {
  Score sc;
  for (std::size_t a = 0; a < loads.size(); ++a) {
    if (loads[a] <= 0.0) continue;
    const double c = cap[arc_link(static_cast<ArcIndex>(a))];
    sc.utilization =
        std::max(sc.utilization, c > 0.0 ? loads[a] / c : std::numeric_limits<double>::infinity());
    sc.overload += std::max(0.0, loads[a] * op_factor - c);
  }
  return sc;
}

}  // namespace

bool PartitionRouter::exhaustive_search(const std::vector<double>& link_capacity,
                                        const std::vector<NodeIndex>& destinations,
                                        std::size_t limit, double op_factor,
                                        Choice& choice) const {
  struct Pattern {
    std::vector<double> flow;
    std::vector<int> options;  // per sub-domain
  };
  std::vector<std::vector<Pattern>> patterns(destinations.size());
  std::size_t product = 1;
  for (std::size_t d = 0; d < destinations.size(); ++d) {
    const NodeIndex t = destinations[d];
    std::vector<int> subdomains;
    std::size_t count = 1;
    for (int i = 0; i < subdomain_count_; ++i) {
      if (label_[t] == i || adjacent_[i].empty()) continue;
      subdomains.push_back(i);
      count *= adjacent_[i].size() + 1;
      if (count > limit) return false;
    }
    Choice trial = choice;
    std::vector<int> options(subdomains.size(), 0);
    std::vector<double> flow;
    for (std::size_t k = 0; k < count; ++k) {
      // Odometer over the sub-domains' options, the last one fastest.
      std::size_t rest = k;
      for (std::size_t j = subdomains.size(); j-- > 0;) {
        const std::size_t base = adjacent_[subdomains[j]].size() + 1;
        options[j] = static_cast<int>(rest % base);
        rest /= base;
        trial[slot(subdomains[j], t)] = options[j];
      }
      if (!destination_flow(t, trial, flow)) continue;
      bool duplicate = false;
      for (const Pattern& p : patterns[d]) {
        if (p.flow == flow) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        std::vector<int> full(subdomain_count_, 0);
        for (std::size_t j = 0; j < subdomains.size(); ++j) full[subdomains[j]] = options[j];
        patterns[d].push_back({flow, std::move(full)});
      }
    }
    product *= patterns[d].size();
    if (product > limit) return false;
  }

  const std::size_t arcs = topology_.arc_count();
  std::vector<std::size_t> index(destinations.size(), 0);
  std::vector<std::size_t> best_index = index;
  Score best{std::numeric_limits<double>::infinity(), 0.0};
  std::vector<double> total(arcs);
  for (std::size_t k = 0; k < product; ++k) {
    std::size_t rest = k;
    for (std::size_t d = destinations.size(); d-- > 0;) {
      index[d] = rest % patterns[d].size();
      rest /= patterns[d].size();
    }
    std::fill(total.begin(), total.end(), 0.0);
    for (std::size_t d = 0; d < destinations.size(); ++d) {
      const auto& f = patterns[d][index[d]].flow;
      for (std::size_t a = 0; a < arcs; ++a) total[a] += f[a];
    }
    const Score sc = score_of(total, link_capacity, op_factor);
    if (sc.better_than(best)) {
      best = sc;
      best_index = index;
    }
  }
  for (std::size_t d = 0; d < destinations.size(); ++d) {
    const auto& options = patterns[d][best_index[d]].options;
    for (int i = 0; i < subdomain_count_; ++i) {
      choice[slot(i, destinations[d])] = options[i];
    }
  }
  return true;
}

PartitionRouter::SparseFlow PartitionRouter::sparse_flow(NodeIndex t, const Choice& choice,
                                                         bool& valid) const {
  std::vector<double> dense;
  SparseFlow out;
  valid = destination_flow(t, choice, dense);
  if (!valid) return out;
  for (std::size_t a = 0; a < dense.size(); ++a) {
    if (dense[a] != 0.0) out.emplace_back(static_cast<ArcIndex>(a), dense[a]);
  }
  return out;
}

const PartitionRouter::Candidate& PartitionRouter::baseline_candidate(std::size_t key,
                                                                      int option) const {
  if (baseline_.empty()) {
    const auto keys = policy_keys();
    baseline_.resize(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k) {
      baseline_[k].resize(adjacent_[keys[k].first].size() + 1);
    }
  }
  Candidate& c = baseline_[key][option];
  if (!c.ready) {
    const auto [i, t] = policy_keys_cache()[key];
    Choice choice(static_cast<std::size_t>(subdomain_count_) * topology_.node_count(), 0);
    choice[slot(i, t)] = option;
    c.flow = sparse_flow(t, choice, c.valid);
    c.ready = true;
  }
  return c;
}

const std::vector<std::pair<int, NodeIndex>>& PartitionRouter::policy_keys_cache() const {
  if (!keys_ready_) {
    keys_ = policy_keys();
    keys_ready_ = true;
  }
  return keys_;
}

int PartitionRouter::local_search(const std::vector<double>& link_capacity,
                                  const std::vector<NodeIndex>& destinations,
                                  const PartitionOptions& options, Choice& choice) const {
  const auto n = static_cast<NodeIndex>(topology_.node_count());
  const std::size_t arcs = topology_.arc_count();
  const auto& keys = policy_keys_cache();
  const double op = options.op_factor;
  auto cap_of = [&](std::size_t a) { return link_capacity[arc_link(static_cast<ArcIndex>(a))]; };
  auto util_of = [&](std::size_t a, double load) {
    if (load <= 0.0) return 0.0;
    const double c = cap_of(a);
    return c > 0.0 ? load / c : std::numeric_limits<double>::infinity();
  };
  auto over_of = [&](std::size_t a, double load) { return std::max(0.0, load * op - cap_of(a)); };

  // The search starts from the all-OSPF choice; per-destination state.
  std::vector<SparseFlow> flow(n);
  std::vector<int> version(n, 0);
  for (NodeIndex t : destinations) {
    bool valid = false;
    flow[t] = sparse_flow(t, choice, valid);
  }
  std::vector<std::vector<Candidate>> local(keys.size());
  std::vector<std::vector<int>> local_version(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    local[k].resize(adjacent_[keys[k].first].size() + 1);
    local_version[k].assign(local[k].size(), -1);
  }
  auto candidate = [&](std::size_t k, int option) -> const Candidate& {
    const auto [i, t] = keys[k];
    if (version[t] == 0) return baseline_candidate(k, option);
    Candidate& c = local[k][option];
    if (local_version[k][option] != version[t]) {
      const std::size_t s = slot(i, t);
      const int original = choice[s];
      choice[s] = option;
      c.flow = sparse_flow(t, choice, c.valid);
      c.ready = true;
      choice[s] = original;
      local_version[k][option] = version[t];
    }
    return c;
  };

  std::vector<double> total(arcs), util(arcs), over(arcs);
  std::vector<std::size_t> order(arcs);
  Score current;
  auto refresh = [&] {
    std::fill(total.begin(), total.end(), 0.0);
    for (NodeIndex t : destinations) {
      for (const auto& [a, v] : flow[t]) total[a] += v;
    }
    current = {};
    for (std::size_t a = 0; a < arcs; ++a) {
      util[a] = util_of(a, total[a]);
      over[a] = over_of(a, total[a]);
      current.utilization = std::max(current.utilization, util[a]);
      current.overload += over[a];
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return util[x] > util[y] || (util[x] == util[y] && x < y); });
  };
  refresh();

  std::vector<double> delta(arcs, 0.0);
  std::vector<char> touched(arcs, 0);
  std::vector<std::size_t> touched_list;
  auto evaluate = [&](NodeIndex t, const SparseFlow& trial) {
    for (const auto& [a, v] : flow[t]) {
      delta[a] -= v;
      if (!touched[a]) touched[a] = 1, touched_list.push_back(a);
    }
    for (const auto& [a, v] : trial) {
      delta[a] += v;
      if (!touched[a]) touched[a] = 1, touched_list.push_back(a);
    }
    Score sc;
    sc.overload = current.overload;
    for (std::size_t a : order) {
      if (!touched[a]) {
        sc.utilization = util[a];
        break;
      }
    }
    for (std::size_t a : touched_list) {
      const double load = total[a] + delta[a];
      sc.utilization = std::max(sc.utilization, util_of(a, load));
      sc.overload += over_of(a, load) - over[a];
      delta[a] = 0.0;
      touched[a] = 0;
    }
    touched_list.clear();
    return sc;
  };

  int moves = 0;
  while (moves < options.max_moves) {
    Score best = current;
    std::size_t best_key = 0;
    int best_option = -1;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      const auto [i, t] = keys[k];
      const int original = choice[slot(i, t)];
      for (int option = 0; option < static_cast<int>(local[k].size()); ++option) {
        if (option == original) continue;
        const Candidate& c = candidate(k, option);
        if (!c.valid) continue;
        const Score sc = evaluate(t, c.flow);
        if (sc.better_than(best)) {
          best = sc;
          best_key = k;
          best_option = option;
        }
      }
    }
    if (best_option < 0) break;
    const auto [i, t] = keys[best_key];
    flow[t] = candidate(best_key, best_option).flow;
    choice[slot(i, t)] = best_option;
    ++version[t];
    refresh();
    ++moves;
  }
  return moves;
}

PartitionRouteResult PartitionRouter::route(const std::vector<double>& link_capacity,
                                            const PartitionOptions& options) const {
  const auto n = static_cast<NodeIndex>(topology_.node_count());
  if (link_capacity.size() != topology_.link_count()) {
    throw ValidationError("capacity vector does not match the topology");
  }
  std::vector<NodeIndex> destinations;
  for (NodeIndex t = 0; t < n; ++t) {
    for (NodeIndex s = 0; s < n; ++s) {
      if (demands_.at(s, t) > 0.0) {
        destinations.push_back(t);
        break;
      }
    }
  }

  Choice choice(static_cast<std::size_t>(subdomain_count_) * n, 0);
  std::vector<double> flow;
  for (NodeIndex t : destinations) {
    if (!destination_flow(t, choice, flow)) {
      std::string pairs;
      for (NodeIndex s = 0; s < n; ++s) {
        if (demands_.at(s, t) > 0.0 && ospf_distance_[t][s] == kUnreachable) {
          pairs += " " + topology_.node(s).id + "->" + topology_.node(t).id;
        }
      }
      throw InfeasibleError("no route for demand pairs:" + pairs);
    }
  }

  PartitionRouteResult result;
  result.exhaustive =
      exhaustive_search(link_capacity, destinations, options.exhaustive_limit,
                        options.op_factor, choice);
  if (!result.exhaustive) {
    result.moves = local_search(link_capacity, destinations, options, choice);
  }

  FlowSolution& sol = result.flow;
  sol.destination_flow.assign(n, {});
  sol.loads.assign(topology_.arc_count(), 0.0);
  for (NodeIndex t : destinations) {
    destination_flow(t, choice, sol.destination_flow[t]);
    for (std::size_t a = 0; a < sol.loads.size(); ++a) sol.loads[a] += sol.destination_flow[t][a];
  }
  sol.max_utilization = max_utilization(sol.loads, link_capacity);
  result.policy = to_policy(choice);
  result.subdomain = label_;
  return result;
}

AdvertisedMetrics PartitionRouter::advertised_metrics(const BorderRoutingPolicy& policy) const {
  const auto n = static_cast<NodeIndex>(topology_.node_count());
  const Choice choice = to_choice(policy);
  AdvertisedMetrics out;

  std::vector<double> diameter(subdomain_count_, 0.0);
  for (int i = 0; i < subdomain_count_; ++i) {
    for (const PathsToward& p : to_border_[i]) {
      for (NodeIndex s = 0; s < n; ++s) {
        if (label_[s] == i) diameter[i] = std::max(diameter[i], p.distance[s]);
      }
    }
  }

  std::vector<NodeIndex> by_rank(n);
  for (NodeIndex v = 0; v < n; ++v) by_rank[topology_.node_rank(v)] = v;
  for (int i = 0; i < subdomain_count_; ++i) {
    const auto& borders = adjacent_[i];
    if (borders.empty()) continue;
    for (NodeIndex t : by_rank) {
      if (label_[t] == i) continue;
      const int option = choice[slot(i, t)];
      auto& metric = out.metric[{i, t}];
      for (std::size_t j = 0; j < borders.size(); ++j) {
        if (borders.size() == 1) {
          metric[borders[j]] = 0.0;
        } else if (option == 0) {
          metric[borders[j]] = ospf_distance_[t][borders[j]];
        } else {
          metric[borders[j]] = static_cast<int>(j) == option - 1 ? 0.0 : diameter[i] + 1.0;
        }
      }
      if (borders.size() == 1) continue;

      for (NodeIndex s = 0; s < n; ++s) {
        if (label_[s] != i) continue;
        std::vector<double> value(borders.size());
        double least = kUnreachable;
        for (std::size_t j = 0; j < borders.size(); ++j) {
          value[j] = to_border_[i][j].distance[s] + metric[borders[j]];
          least = std::min(least, value[j]);
        }
        bool good = true;
        if (option == 0) {
          // The honest OSPF path leaves the sub-domain at its first border.
          NodeIndex v = s;
          while (label_[v] == i) v = topology_.arc_head(ospf_.next_arc(v, t));
          auto it = std::find(borders.begin(), borders.end(), v);
          good = it != borders.end() && same_distance(value[it - borders.begin()], least);
        } else {
          for (std::size_t j = 0; j < borders.size(); ++j) {
            const bool chosen = static_cast<int>(j) == option - 1;
            if (chosen != (value[j] == least)) good = false;
          }
        }
        if (!good) {
          out.not_realizable.push_back("sub-domain " + std::to_string(i) + ", destination " +
                                       topology_.node(t).id + ", source " +
                                       topology_.node(s).id);
        }
      }
    }
  }
  return out;
}

PartitionRouteResult partition_route(const Topology& topology, const Partition& partition,
                                     const DemandMatrix& demands,
                                     const std::vector<double>& link_capacity,
                                     const PartitionOptions& options) {
  const PartitionReport report = validate_partition(topology, partition);
  if (!report.ok()) throw ValidationError("invalid partition: " + report.to_string());
  const Subgraph sub = drop_zero_capacity(topology, link_capacity);
  const PartitionRouter router(sub.topology, partition.borders, demands);
  PartitionRouteResult result = router.route(sub.restrict_links(link_capacity), options);
  if (sub.original_link.size() != topology.link_count()) {
    result.flow = lift_solution(sub, std::move(result.flow), topology.arc_count());
  }
  return result;
}

AdvertisedMetrics realizable_metrics(const BorderRoutingPolicy& policy,
                                     const Topology& topology, const Partition& partition) {
  const PartitionRouter router(topology, partition.borders,
                               DemandMatrix(topology.node_count()));
  return router.advertised_metrics(policy);
}

std::string policy_to_json(const BorderRoutingPolicy& policy, const Topology& topology,
                           const std::vector<int>& subdomain) {
  nlohmann::json out;
  int count = 0;
  for (int label : subdomain) count = std::max(count, label + 1);
  nlohmann::json groups = nlohmann::json::array();
  for (int i = 0; i < count; ++i) {
    std::vector<std::string> members;
    for (NodeIndex v = 0; v < static_cast<NodeIndex>(subdomain.size()); ++v) {
      if (subdomain[v] == i) members.push_back(topology.node(v).id);
    }
    std::sort(members.begin(), members.end());
    groups.push_back(members);
  }
  out["subdomains"] = groups;
  nlohmann::json egress = nlohmann::json::object();
  for (const auto& [key, border] : policy.egress) {
    const std::string k = std::to_string(key.first) + "|" + topology.node(key.second).id;
    egress[k] = border == BorderRoutingPolicy::kOspfEgress ? "ospf" : topology.node(border).id;
  }
  out["egress"] = egress;
  nlohmann::json next_hop = nlohmann::json::object();
  for (const auto& [key, next] : policy.next_hop) {
    const auto& [border, from, destination] = key;
    next_hop[topology.node(border).id + "|" + std::to_string(from) + "|" +
             topology.node(destination).id] = topology.node(next).id;
  }
  out["next_hop"] = next_hop;
  return out.dump(2);
}

}  // namespace capplan
