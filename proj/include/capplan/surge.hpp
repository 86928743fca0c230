#pragma once

#include <string>
#include <utility>
#include <vector>

#include "capplan/failure.hpp"
#include "capplan/model.hpp"
#include "capplan/topology.hpp"

namespace capplan {

// Ordered pairs whose demand is scaled in both directions.
struct SurgeSpec {
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  std::vector<double> factors;  // strictly increasing, positive
};

// Throws ValidationError on self-pairs, unknown nodes or bad factors.
void validate_surge_spec(const Topology& topology, const SurgeSpec& spec);

// Demand matrix with the surge pairs (both directions) multiplied by factor.
DemandMatrix surged_demands(const DemandMatrix& demands, const SurgeSpec& spec, double factor);

struct SurgeRow {
  double factor = 1.0;
  double expected_congested_links = 0.0;  // mean over scenarios
  std::vector<int> congested_per_scenario;
};

// For every factor and scenario, routes the surged demands with the model
// against fixed capacities and counts congested directed links.
std::vector<SurgeRow> surge_congestion(const Topology& topology,
                                       const std::vector<double>& link_capacity,
                                       const DemandMatrix& demands, const SurgeSpec& spec,
                                       const RoutingModel& model,
                                       const std::vector<FailureScenario>& failures,
                                       double op_factor, int jobs = 1);

// model,scale_factor,expected_congested_links
std::string surge_to_csv(const std::string& model, const std::vector<SurgeRow>& rows,
                         bool header = true);
// model,scale_factor,scenario,congested_directed_links
std::string surge_detail_to_csv(const std::string& model, const std::vector<SurgeRow>& rows,
                                const Topology& topology,
                                const std::vector<FailureScenario>& failures,
                                bool header = true);

}  // namespace capplan
