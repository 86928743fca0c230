#include "capplan/mcf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "capplan/error.hpp"
#include "capplan/simplex.hpp"

namespace capplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tree {
  std::vector<std::pair<int, double>> arc_load;  // sorted by arc
  double cost = 0.0;
};

class TreePricer {
 public:
  TreePricer(const Topology& topology, const DemandMatrix& demands,
             const std::vector<bool>& usable, const ArcRestriction& restriction)
      : topology_(topology),
        demands_(demands),
        usable_(usable),
        restriction_(restriction),
        n_(static_cast<NodeIndex>(topology.node_count())) {}

  bool allowed(NodeIndex v, ArcIndex arc, NodeIndex destination) const {
    const ArcIndex forced = restriction_.at(n_, destination, v);
    if (forced != -1) return forced == arc && usable_[arc];
    return usable_[arc];
  }

  // Cheapest in-tree toward `destination` under `weight`. Returns false
  // when a node with demand cannot reach the destination.
  bool build(NodeIndex destination, const std::vector<double>& weight, Tree& tree,
             std::string* unreachable = nullptr) {
    dist_.assign(n_, kInf);
    parent_.assign(n_, -1);
    done_.assign(n_, false);
    order_.clear();
    using Entry = std::tuple<double, int, NodeIndex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist_[destination] = 0.0;
    queue.emplace(0.0, topology_.node_rank(destination), destination);
    while (!queue.empty()) {
      auto [d, rank, h] = queue.top();
      queue.pop();
      if (done_[h]) continue;
      done_[h] = true;
      order_.push_back(h);
      for (ArcIndex out : topology_.out_arcs(h)) {
        const NodeIndex v = topology_.arc_head(out);
        if (done_[v]) continue;
        const ArcIndex in = reverse_arc(out);  // v -> h
        if (!allowed(v, in, destination)) continue;
        const double nd = d + weight[in];
        if (nd < dist_[v]) {
          dist_[v] = nd;
          parent_[v] = in;
          queue.emplace(nd, topology_.node_rank(v), v);
        }
      }
    }

    bool ok = true;
    for (NodeIndex v = 0; v < n_; ++v) {
      if (v != destination && demands_.at(v, destination) > 0.0 && !done_[v]) {
        ok = false;
        if (unreachable) {
          *unreachable += " " + topology_.node(v).id + "->" + topology_.node(destination).id;
        }
      }
    }
    if (!ok) return false;

    flow_.assign(n_, 0.0);
    tree.arc_load.clear();
    tree.cost = 0.0;
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const NodeIndex v = *it;
      if (v == destination) continue;
      flow_[v] += demands_.at(v, destination);
      if (flow_[v] <= 0.0) continue;
      const ArcIndex arc = parent_[v];
      tree.arc_load.emplace_back(arc, flow_[v]);
      tree.cost += flow_[v] * weight[arc];
      flow_[topology_.arc_head(arc)] += flow_[v];
    }
    std::sort(tree.arc_load.begin(), tree.arc_load.end());
    return true;
  }

 private:
  const Topology& topology_;
  const DemandMatrix& demands_;
  const std::vector<bool>& usable_;
  const ArcRestriction& restriction_;
  NodeIndex n_;
  std::vector<double> dist_;
  std::vector<ArcIndex> parent_;
  std::vector<bool> done_;
  std::vector<NodeIndex> order_;
  std::vector<double> flow_;
};

std::vector<int> support_of(const std::vector<std::pair<int, double>>& arc_load) {
  std::vector<int> s;
  s.reserve(arc_load.size());
  for (const auto& [arc, load] : arc_load) s.push_back(arc);
  return s;
}

}  // namespace

double FlowSolution::relative_gap() const {
  if (max_utilization <= 0.0) return 0.0;
  return (max_utilization - lower_bound) / max_utilization;
}

std::vector<double> FlowSolution::commodity_flow(const Topology& topology,
                                                 const DemandMatrix& demands,
                                                 NodeIndex source,
                                                 NodeIndex destination) const {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  std::vector<double> out(topology.arc_count(), 0.0);
  const double volume = demands.at(source, destination);
  if (volume == 0.0 || destination_flow[destination].empty()) return out;
  const std::vector<double>& f = destination_flow[destination];

  std::vector<double> outflow(n, 0.0);
  std::vector<int> indegree(n, 0);
  for (ArcIndex a = 0; a < static_cast<ArcIndex>(f.size()); ++a) {
    if (f[a] <= 0.0) continue;
    outflow[topology.arc_tail(a)] += f[a];
    ++indegree[topology.arc_head(a)];
  }
  std::vector<NodeIndex> ready;
  for (NodeIndex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<double> amount(n, 0.0);
  amount[source] = volume;
  while (!ready.empty()) {
    const NodeIndex v = ready.back();
    ready.pop_back();
    for (ArcIndex a : topology.out_arcs(v)) {
      if (f[a] <= 0.0) continue;
      const NodeIndex w = topology.arc_head(a);
      if (v != destination && amount[v] > 0.0) {
        const double share = amount[v] * f[a] / outflow[v];
        out[a] += share;
        amount[w] += share;
      }
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return out;
}

void cancel_cycles(const Topology& topology, std::vector<double>& arc_flow) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  double scale = 0.0;
  for (double v : arc_flow) scale = std::max(scale, v);
  const double eps = 1e-12 * std::max(scale, 1.0);
  for (double& v : arc_flow) {
    if (v < eps) v = 0.0;
  }

  for (;;) {
    std::vector<int> color(n, 0);
    std::vector<ArcIndex> cycle;
    for (NodeIndex root = 0; root < n && cycle.empty(); ++root) {
      if (color[root] != 0) continue;
      struct Frame {
        NodeIndex v;
        std::size_t next;
        ArcIndex via;
      };
      std::vector<Frame> stack{{root, 0, -1}};
      color[root] = 1;
      while (!stack.empty() && cycle.empty()) {
        Frame& f = stack.back();
        auto arcs = topology.out_arcs(f.v);
        if (f.next == arcs.size()) {
          color[f.v] = 2;
          stack.pop_back();
          continue;
        }
        const ArcIndex a = arcs[f.next++];
        if (arc_flow[a] <= 0.0) continue;
        const NodeIndex w = topology.arc_head(a);
        if (color[w] == 1) {
          cycle.push_back(a);
          for (auto it = stack.rbegin(); it != stack.rend() && it->v != w; ++it) {
            cycle.push_back(it->via);
          }
        } else if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0, a});
        }
      }
    }
    if (cycle.empty()) return;
    double m = kInf;
    for (ArcIndex a : cycle) m = std::min(m, arc_flow[a]);
    for (ArcIndex a : cycle) {
      arc_flow[a] -= m;
      if (arc_flow[a] < eps) arc_flow[a] = 0.0;
    }
  }
}

FlowSolution solve_min_max_utilization(const Topology& topology,
                                       const DemandMatrix& demands,
                                       const std::vector<double>& link_capacity,
                                       const ArcRestriction& restriction,
                                       const McfOptions& options,
                                       McfWarmStart* warm_start) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  const auto arcs = static_cast<ArcIndex>(topology.arc_count());

  std::vector<bool> usable(arcs);
  for (ArcIndex a = 0; a < arcs; ++a) usable[a] = link_capacity.at(arc_link(a)) > 0.0;

  std::vector<NodeIndex> destinations;
  for (NodeIndex t = 0; t < n; ++t) {
    for (NodeIndex s = 0; s < n; ++s) {
      if (demands.at(s, t) > 0.0) {
        destinations.push_back(t);
        break;
      }
    }
  }

  FlowSolution sol;
  sol.destination_flow.assign(n, {});
  sol.loads.assign(arcs, 0.0);
  sol.arc_weights.assign(arcs, 0.0);
  if (destinations.empty()) return sol;

  TreePricer pricer(topology, demands, usable, restriction);

  // Master rows: one per usable arc, then one convexity row per destination.
  std::vector<int> arc_row(arcs, -1);
  int rows = 0;
  for (ArcIndex a = 0; a < arcs; ++a) {
    if (usable[a]) arc_row[a] = rows++;
  }
  const int first_conv_row = rows;
  std::vector<int> conv_row(n, -1);
  for (NodeIndex t : destinations) conv_row[t] = rows++;

  std::vector<double> rhs(rows, 0.0);
  for (NodeIndex t : destinations) rhs[conv_row[t]] = 1.0;
  RevisedSimplex lp(std::move(rhs));

  std::vector<RevisedSimplex::Entry> u_entries;
  for (ArcIndex a = 0; a < arcs; ++a) {
    if (arc_row[a] >= 0) u_entries.emplace_back(arc_row[a], -link_capacity[arc_link(a)]);
  }
  const int u_col = lp.add_column(1.0, std::move(u_entries));
  std::vector<int> slack_col(arcs, -1);
  for (ArcIndex a = 0; a < arcs; ++a) {
    if (arc_row[a] >= 0) slack_col[a] = lp.add_column(0.0, {{arc_row[a], 1.0}});
  }

  struct ColumnInfo {
    NodeIndex destination;
    std::vector<std::pair<int, double>> arc_load;
  };
  std::vector<ColumnInfo> columns;  // lambda columns, in LP order after slacks
  std::vector<int> column_lp_index;
  std::vector<std::set<std::vector<int>>> seen(n);

  auto add_tree_column = [&](NodeIndex t, std::vector<std::pair<int, double>> arc_load) {
    if (!seen[t].insert(support_of(arc_load)).second) return false;
    std::vector<RevisedSimplex::Entry> entries;
    entries.reserve(arc_load.size() + 1);
    for (const auto& [a, load] : arc_load) entries.emplace_back(arc_row[a], load);
    entries.emplace_back(conv_row[t], 1.0);
    column_lp_index.push_back(lp.add_column(0.0, std::move(entries)));
    columns.push_back({t, std::move(arc_load)});
    return true;
  };

  // Starting columns: metric shortest-path trees, then warm-start columns.
  std::vector<double> metric_weight(arcs);
  for (ArcIndex a = 0; a < arcs; ++a) metric_weight[a] = topology.arc_metric(a);
  std::vector<int> first_column(n, -1);
  std::vector<double> start_load(arcs, 0.0);
  std::string unreachable;
  Tree tree;
  for (NodeIndex t : destinations) {
    if (!pricer.build(t, metric_weight, tree, &unreachable)) continue;
    for (const auto& [a, load] : tree.arc_load) start_load[a] += load;
    first_column[t] = static_cast<int>(columns.size());
    add_tree_column(t, tree.arc_load);
  }
  if (!unreachable.empty()) {
    throw InfeasibleError("no usable route for demand pairs:" + unreachable);
  }
  if (warm_start != nullptr && warm_start->by_destination.size() == static_cast<std::size_t>(n)) {
    for (NodeIndex t : destinations) {
      for (const auto& c : warm_start->by_destination[t]) {
        bool valid = true;
        for (const auto& [a, load] : c.arc_load) {
          if (a < 0 || a >= arcs || !pricer.allowed(topology.arc_tail(a), a, t)) {
            valid = false;
            break;
          }
        }
        if (valid) add_tree_column(t, c.arc_load);
      }
    }
  }

  int worst_row_arc = -1;
  double start_u = -1.0;
  for (ArcIndex a = 0; a < arcs; ++a) {
    if (arc_row[a] < 0) continue;
    const double u = start_load[a] / link_capacity[arc_link(a)];
    if (u > start_u) {
      start_u = u;
      worst_row_arc = a;
    }
  }
  std::vector<int> basis(rows, -1);
  for (ArcIndex a = 0; a < arcs; ++a) {
    if (arc_row[a] >= 0) basis[arc_row[a]] = a == worst_row_arc ? u_col : slack_col[a];
  }
  for (NodeIndex t : destinations) basis[conv_row[t]] = column_lp_index[first_column[t]];
  lp.set_basis(basis);

  double best_lower = 0.0;
  std::vector<double> best_weights(arcs, 0.0);
  std::vector<double> weight(arcs, 0.0);
  int round = 0;
  for (; round < options.max_rounds; ++round) {
    if (lp.optimize() != RevisedSimplex::Status::kOptimal) {
      throw std::runtime_error("master LP did not reach optimality");
    }
    const std::vector<double> y = lp.duals();
    double denominator = 0.0;
    for (ArcIndex a = 0; a < arcs; ++a) {
      weight[a] = arc_row[a] >= 0 ? std::max(0.0, -y[arc_row[a]]) : 0.0;
      if (arc_row[a] >= 0) denominator += weight[a] * link_capacity[arc_link(a)];
    }
    double priced = 0.0;
    bool added = false;
    for (NodeIndex t : destinations) {
      pricer.build(t, weight, tree);
      priced += tree.cost;
      const double sigma = y[conv_row[t]];
      if (tree.cost - sigma < -1e-10 * std::max(1.0, std::abs(sigma))) {
        added = add_tree_column(t, tree.arc_load) || added;
      }
    }
    const double upper = lp.objective();
    if (denominator > 0.0) {
      const double lower = priced / denominator;
      if (lower > best_lower) {
        best_lower = lower;
        for (ArcIndex a = 0; a < arcs; ++a) best_weights[a] = weight[a] / denominator;
      }
    }
    if (!added || upper - best_lower <= options.gap_tolerance * upper) {
      ++round;
      break;
    }
  }
  (void)first_conv_row;

  for (NodeIndex t : destinations) sol.destination_flow[t].assign(arcs, 0.0);
  if (warm_start != nullptr) {
    warm_start->by_destination.assign(n, {});
  }
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const double lambda = lp.value(column_lp_index[j]);
    if (lambda <= 0.0) continue;
    std::vector<double>& f = sol.destination_flow[columns[j].destination];
    for (const auto& [a, load] : columns[j].arc_load) f[a] += lambda * load;
    if (warm_start != nullptr) {
      warm_start->by_destination[columns[j].destination].push_back({columns[j].arc_load});
    }
  }
  for (NodeIndex t : destinations) {
    cancel_cycles(topology, sol.destination_flow[t]);
    for (ArcIndex a = 0; a < arcs; ++a) sol.loads[a] += sol.destination_flow[t][a];
  }
  sol.max_utilization = max_utilization(sol.loads, link_capacity);
  sol.lower_bound = std::min(best_lower, sol.max_utilization);
  sol.arc_weights = std::move(best_weights);
  sol.column_generation_rounds = round;
  return sol;
}

FlowSolution min_max_utilization_flow(const Topology& topology,
                                      const DemandMatrix& demands,
                                      const std::vector<double>& link_capacity,
                                      const McfOptions& options) {
  return solve_min_max_utilization(topology, demands, link_capacity, ArcRestriction{},
                                   options);
}

Overload max_overload(const Topology& topology, const LoadMap& loads,
                      const std::vector<double>& link_capacity, double op_factor) {
  Overload best{-1, -kInf};
  for (ArcIndex a : topology.canonical_arc_order()) {
    const double o = loads[a] * op_factor - link_capacity[arc_link(a)];
    if (o > best.overload) best = {a, o};
  }
  return best;
}

int congested_arc_count(const Topology& topology, const LoadMap& loads,
                        const std::vector<double>& link_capacity, double op_factor) {
  int count = 0;
  for (ArcIndex a = 0; a < static_cast<ArcIndex>(topology.arc_count()); ++a) {
    if (congested(loads[a] * op_factor - link_capacity[arc_link(a)])) ++count;
  }
  return count;
}

}  // namespace capplan
