#include "capplan/surge.hpp"

#include <set>
#include <sstream>

#include "capplan/error.hpp"
#include "capplan/mcf.hpp"
#include "capplan/parallel.hpp"
#include "capplan/sndlib.hpp"

namespace capplan {

void validate_surge_spec(const Topology& topology, const SurgeSpec& spec) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  for (const auto& [a, b] : spec.pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw ValidationError("surge pair names an unknown node");
    if (a == b) throw ValidationError("surge pair joins a node to itself");
  }
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    if (!(spec.factors[i] > 0.0)) throw ValidationError("surge factors must be positive");
    if (i > 0 && !(spec.factors[i] > spec.factors[i - 1])) {
      throw ValidationError("surge factors must be strictly increasing");
    }
  }
}

DemandMatrix surged_demands(const DemandMatrix& demands, const SurgeSpec& spec, double factor) {
  std::set<std::pair<NodeIndex, NodeIndex>> ordered;
  for (const auto& [a, b] : spec.pairs) {
    ordered.emplace(a, b);
    ordered.emplace(b, a);
  }
  DemandMatrix out = demands;
  for (const auto& [s, t] : ordered) out.set(s, t, demands.at(s, t) * factor);
  return out;
}

std::vector<SurgeRow> surge_congestion(const Topology& topology,
                                       const std::vector<double>& link_capacity,
                                       const DemandMatrix& demands, const SurgeSpec& spec,
                                       const RoutingModel& model,
                                       const std::vector<FailureScenario>& failures,
                                       double op_factor, int jobs) {
  validate_surge_spec(topology, spec);
  const std::size_t scenarios = failures.size();
  std::vector<DemandMatrix> surged;
  for (double f : spec.factors) surged.push_back(surged_demands(demands, spec, f));

  std::vector<int> counts(spec.factors.size() * scenarios, 0);
  parallel_for(counts.size(), jobs, [&](std::size_t cell) {
    const std::size_t f = cell / scenarios;
    const std::size_t s = cell % scenarios;
    ScenarioRouter router(topology, surged[f], model, failures[s], op_factor);
    counts[cell] =
        congested_arc_count(topology, router.route(link_capacity), link_capacity, op_factor);
  });

  std::vector<SurgeRow> rows;
  for (std::size_t f = 0; f < spec.factors.size(); ++f) {
    SurgeRow row;
    row.factor = spec.factors[f];
    long sum = 0;
    for (std::size_t s = 0; s < scenarios; ++s) {
      row.congested_per_scenario.push_back(counts[f * scenarios + s]);
      sum += counts[f * scenarios + s];
    }
    row.expected_congested_links =
        scenarios == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(scenarios);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string surge_to_csv(const std::string& model, const std::vector<SurgeRow>& rows,
                         bool header) {
  std::ostringstream out;
  if (header) out << "model,scale_factor,expected_congested_links\n";
  for (const SurgeRow& r : rows) {
    out << model << ',' << format_number(r.factor) << ','
        << format_number(r.expected_congested_links) << '\n';
  }
  return out.str();
}

std::string surge_detail_to_csv(const std::string& model, const std::vector<SurgeRow>& rows,
                                const Topology& topology,
                                const std::vector<FailureScenario>& failures, bool header) {
  std::ostringstream out;
  if (header) out << "model,scale_factor,scenario,congested_directed_links\n";
  for (const SurgeRow& r : rows) {
    for (std::size_t s = 0; s < r.congested_per_scenario.size(); ++s) {
      out << model << ',' << format_number(r.factor) << ',' << failures[s].label(topology)
          << ',' << r.congested_per_scenario[s] << '\n';
    }
  }
  return out.str();
}

}  // namespace capplan
