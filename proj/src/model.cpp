#include "capplan/model.hpp"

#include <algorithm>

#include "capplan/error.hpp"

namespace capplan {

ModelKind parse_model_kind(const std::string& text) {
  if (text == "ospf") return ModelKind::kOspf;
  if (text == "sdn") return ModelKind::kFullSdn;
  if (text == "stacked") return ModelKind::kStacked;
  if (text == "partition") return ModelKind::kPartition;
  throw ValidationError("unknown routing model kind '" + text + "'");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kOspf:
      return "ospf";
    case ModelKind::kFullSdn:
      return "sdn";
    case ModelKind::kStacked:
      return "stacked";
    case ModelKind::kPartition:
      return "partition";
  }
  return "?";
}

RoutingModel RoutingModel::ospf() { return {}; }

RoutingModel RoutingModel::full_sdn() {
  RoutingModel m;
  m.kind = ModelKind::kFullSdn;
  m.name = "sdn";
  return m;
}

RoutingModel RoutingModel::stacked(SdnPlacement placement, std::string name) {
  RoutingModel m;
  m.kind = ModelKind::kStacked;
  m.name = std::move(name);
  m.placement = std::move(placement);
  return m;
}

RoutingModel RoutingModel::partitioned(Partition partition, std::string name) {
  RoutingModel m;
  m.kind = ModelKind::kPartition;
  m.name = std::move(name);
  m.partition = std::move(partition);
  return m;
}

ScenarioRouter::ScenarioRouter(const Topology& topology, const DemandMatrix& demands,
                               const RoutingModel& model, const FailureScenario& scenario,
                               double op_factor)
    : model_(model),
      demands_(demands),
      op_factor_(op_factor),
      arc_count_(topology.arc_count()),
      sub_(remove_links(topology, {scenario.failed_links.begin(), scenario.failed_links.end()})) {
  apply_failure(topology, scenario, demands);  // connectivity check
  switch (model_.kind) {
    case ModelKind::kOspf:
      fixed_loads_ = sub_.lift_arcs(ospf_loads(sub_.topology, demands_), arc_count_);
      break;
    case ModelKind::kFullSdn:
      break;
    case ModelKind::kStacked:
      restriction_ = stacked_restriction(sub_.topology, ospf_forwarding(sub_.topology),
                                         model_.placement);
      break;
    case ModelKind::kPartition:
      partition_ = std::make_unique<PartitionRouter>(sub_.topology, model_.partition.borders,
                                                     demands_);
      break;
  }
}

LoadMap ScenarioRouter::route(const std::vector<double>& link_capacity) {
  if (fixed_loads_) return *fixed_loads_;
  const std::vector<double> cap = sub_.restrict_links(link_capacity);
  const bool all_positive =
      std::all_of(cap.begin(), cap.end(), [](double c) { return c > 0.0; });
  LoadMap loads;
  switch (model_.kind) {
    case ModelKind::kOspf:
      break;
    case ModelKind::kFullSdn:
      loads = solve_min_max_utilization(sub_.topology, demands_, cap, {}, {}, &warm_start_)
                  .loads;
      break;
    case ModelKind::kStacked:
      if (all_positive) {
        loads = solve_min_max_utilization(sub_.topology, demands_, cap, restriction_, {},
                                          &warm_start_)
                    .loads;
      } else {
        loads = stacked_route(sub_.topology, model_.placement, demands_, cap).loads;
      }
      break;
    case ModelKind::kPartition: {
      PartitionOptions options;
      options.op_factor = op_factor_;
      if (all_positive) {
        loads = partition_->route(cap, options).flow.loads;
      } else {
        const Subgraph inner = drop_zero_capacity(sub_.topology, cap);
        const PartitionRouter router(inner.topology, model_.partition.borders, demands_);
        loads = inner.lift_arcs(router.route(inner.restrict_links(cap), options).flow.loads,
                                sub_.topology.arc_count());
      }
      break;
    }
  }
  return sub_.lift_arcs(loads, arc_count_);
}

}  // namespace capplan
