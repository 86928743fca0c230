#pragma once

#include <memory>
#include <string>
#include <vector>

#include "capplan/failure.hpp"
#include "capplan/mcf.hpp"
#include "capplan/model.hpp"
#include "capplan/topology.hpp"

namespace capplan {

// Installable capacities: the listed rungs, then the last rung plus any
// multiple of `extension`.
class CapacityLadder {
 public:
  CapacityLadder(std::vector<double> rungs = {10.0, 40.0, 100.0}, double extension = 100.0);

  const std::vector<double>& rungs() const { return rungs_; }
  double extension() const { return extension_; }
  // Smallest ladder value >= gbps. Values within kOverloadTolerance above a
  // rung still fit that rung.
  double at_least(double gbps) const;
  // Smallest ladder value strictly above `capacity`.
  double next(double capacity) const;
  // Number of ladder values <= gbps.
  std::size_t values_up_to(double gbps) const;

 private:
  std::vector<double> rungs_;
  double extension_;
};

struct CriticalLink {
  int scenario = -1;
  ArcIndex arc = -1;
  double overload = 0.0;
};
// One entry per scenario, in scenario order.
using CriticalLinkSet = std::vector<CriticalLink>;

struct UpgradeStep {
  int iteration = 0;
  LinkIndex link = -1;
  double old_capacity = 0.0;
  double new_capacity = 0.0;
  int scenario = -1;
  std::string scenario_label;
  ArcIndex arc = -1;
  double overload = 0.0;
};

struct UpgradePlan {
  std::string model;
  std::vector<double> initial_capacities;
  std::vector<double> final_capacities;
  std::vector<UpgradeStep> steps;

  double initial_total() const;
  double final_total() const;
};

struct DimensioningOptions {
  CapacityLadder ladder;
  double op_factor = 1.0;
  int jobs = 1;
};

// Per link, the smallest rung covering its larger directed nominal load
// times the op-factor. Models other than OSPF are routed against the OSPF
// result, which they can always carry, so their capacities never exceed it.
std::vector<double> initial_capacities(const Topology& topology, const DemandMatrix& demands,
                                       const RoutingModel& model,
                                       const DimensioningOptions& options);

CriticalLinkSet find_critical_links(std::vector<std::unique_ptr<ScenarioRouter>>& routers,
                                    const Topology& topology,
                                    const std::vector<double>& link_capacity,
                                    double op_factor, int jobs);

// Upgrades the link with the largest overload over all scenarios by one rung
// until no scenario is congested. Ties: earlier scenario, then smaller link
// id, then a->b first.
UpgradePlan greedy_dimension(const Topology& topology, const DemandMatrix& demands,
                             const RoutingModel& model,
                             const std::vector<FailureScenario>& failures,
                             const std::vector<double>& initial,
                             const DimensioningOptions& options);

struct PlanViolation {
  int scenario = -1;
  std::string scenario_label;
  ArcIndex arc = -1;
  double overload = 0.0;
};

// Re-routes every scenario against `link_capacity` with fresh routers and
// lists every congested directed link.
std::vector<PlanViolation> verify_plan(const Topology& topology, const DemandMatrix& demands,
                                       const RoutingModel& model,
                                       const std::vector<FailureScenario>& failures,
                                       const std::vector<double>& link_capacity,
                                       double op_factor, int jobs = 1);

// 100 * plan total / reference total. Throws ValidationError on a zero
// reference.
double normalized_total(const UpgradePlan& plan, const UpgradePlan& reference);

std::string plan_to_json(const UpgradePlan& plan, const Topology& topology);
std::string plan_to_csv(const UpgradePlan& plan, const Topology& topology);
// Reads "final_capacities" ({link id: Gbps}) from a plan JSON document.
std::vector<double> capacities_from_plan_json(const std::string& json_text,
                                              const Topology& topology);

}  // namespace capplan
