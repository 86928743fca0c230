#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "capplan/failure.hpp"
#include "capplan/hybrid.hpp"
#include "capplan/mcf.hpp"
#include "capplan/ospf.hpp"
#include "capplan/topology.hpp"

namespace capplan {

enum class ModelKind { kOspf, kFullSdn, kStacked, kPartition };

// "ospf", "sdn", "stacked", "partition". Throws ValidationError otherwise.
ModelKind parse_model_kind(const std::string& text);
std::string to_string(ModelKind kind);

struct RoutingModel {
  ModelKind kind = ModelKind::kOspf;
  std::string name = "ospf";
  SdnPlacement placement;  // stacked
  Partition partition;     // partition

  static RoutingModel ospf();
  static RoutingModel full_sdn();
  static RoutingModel stacked(SdnPlacement placement, std::string name = "stacked");
  static RoutingModel partitioned(Partition partition, std::string name = "partition");
};

// Routes one demand matrix on one failure scenario. Everything that depends
// only on the degraded topology is computed once; route() may then be called
// for a sequence of capacity vectors. Not thread-safe; use one per worker.
class ScenarioRouter {
 public:
  // Throws InfeasibleError when the scenario disconnects a demand pair.
  ScenarioRouter(const Topology& topology, const DemandMatrix& demands,
                 const RoutingModel& model, const FailureScenario& scenario,
                 double op_factor = 1.0);

  // Capacities per original link; loads per original arc (0 on failed links).
  LoadMap route(const std::vector<double>& link_capacity);

  const Subgraph& subgraph() const { return sub_; }

 private:
  RoutingModel model_;
  DemandMatrix demands_;
  double op_factor_;
  std::size_t arc_count_;
  Subgraph sub_;
  std::optional<LoadMap> fixed_loads_;
  ArcRestriction restriction_;
  McfWarmStart warm_start_;
  std::unique_ptr<PartitionRouter> partition_;
};

}  // namespace capplan
