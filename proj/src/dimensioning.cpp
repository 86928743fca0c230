#include "capplan/dimensioning.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "capplan/error.hpp"
#include "capplan/parallel.hpp"
#include "capplan/sndlib.hpp"

namespace capplan {

CapacityLadder::CapacityLadder(std::vector<double> rungs, double extension)
    : rungs_(std::move(rungs)), extension_(extension) {
  if (rungs_.empty() || !(rungs_.front() > 0.0)) {
    throw ValidationError("capacity ladder needs a positive first rung");
  }
  for (std::size_t i = 1; i < rungs_.size(); ++i) {
    if (!(rungs_[i] > rungs_[i - 1])) {
      throw ValidationError("capacity ladder rungs must be strictly increasing");
    }
  }
  if (!(extension_ > 0.0)) throw ValidationError("ladder extension must be positive");
}

double CapacityLadder::at_least(double gbps) const {
  const double need = gbps - kOverloadTolerance;
  for (double r : rungs_) {
    if (r >= need) return r;
  }
  const double last = rungs_.back();
  return last + std::ceil((need - last) / extension_) * extension_;
}

double CapacityLadder::next(double capacity) const {
  const double above = capacity + kOverloadTolerance;
  for (double r : rungs_) {
    if (r > above) return r;
  }
  const double last = rungs_.back();
  return last + (std::floor((above - last) / extension_) + 1.0) * extension_;
}

std::size_t CapacityLadder::values_up_to(double gbps) const {
  const double limit = gbps + kOverloadTolerance;
  std::size_t count = 0;
  for (double r : rungs_) {
    if (r <= limit) ++count;
  }
  if (limit >= rungs_.back()) {
    count += static_cast<std::size_t>(std::floor((limit - rungs_.back()) / extension_));
  }
  return count;
}

double UpgradePlan::initial_total() const {
  double s = 0.0;
  for (double c : initial_capacities) s += c;
  return s;
}

double UpgradePlan::final_total() const {
  double s = 0.0;
  for (double c : final_capacities) s += c;
  return s;
}

namespace {

std::vector<std::unique_ptr<ScenarioRouter>> make_routers(
    const Topology& topology, const DemandMatrix& demands, const RoutingModel& model,
    const std::vector<FailureScenario>& failures, double op_factor, int jobs) {
  std::vector<std::unique_ptr<ScenarioRouter>> routers(failures.size());
  parallel_for(failures.size(), jobs, [&](std::size_t i) {
    routers[i] =
        std::make_unique<ScenarioRouter>(topology, demands, model, failures[i], op_factor);
  });
  return routers;
}

std::vector<double> covering_capacities(const Topology& topology, const LoadMap& loads,
                                        const CapacityLadder& ladder, double op_factor) {
  std::vector<double> cap(topology.link_count());
  for (LinkIndex l = 0; l < static_cast<LinkIndex>(cap.size()); ++l) {
    const double load = std::max(loads[arc_of(l, false)], loads[arc_of(l, true)]);
    cap[l] = ladder.at_least(load * op_factor);
  }
  return cap;
}

}  // namespace

std::vector<double> initial_capacities(const Topology& topology, const DemandMatrix& demands,
                                       const RoutingModel& model,
                                       const DimensioningOptions& options) {
  const std::vector<double> ospf = covering_capacities(
      topology, ospf_loads(topology, demands), options.ladder, options.op_factor);
  if (model.kind == ModelKind::kOspf) return ospf;
  ScenarioRouter router(topology, demands, model, FailureScenario{}, options.op_factor);
  return covering_capacities(topology, router.route(ospf), options.ladder, options.op_factor);
}

CriticalLinkSet find_critical_links(std::vector<std::unique_ptr<ScenarioRouter>>& routers,
                                    const Topology& topology,
                                    const std::vector<double>& link_capacity,
                                    double op_factor, int jobs) {
  CriticalLinkSet out(routers.size());
  parallel_for(routers.size(), jobs, [&](std::size_t i) {
    const LoadMap loads = routers[i]->route(link_capacity);
    const Overload o = max_overload(topology, loads, link_capacity, op_factor);
    out[i] = {static_cast<int>(i), o.arc, o.overload};
  });
  return out;
}

UpgradePlan greedy_dimension(const Topology& topology, const DemandMatrix& demands,
                             const RoutingModel& model,
                             const std::vector<FailureScenario>& failures,
                             const std::vector<double>& initial,
                             const DimensioningOptions& options) {
  if (initial.size() != topology.link_count()) {
    throw ValidationError("initial capacity vector does not match the topology");
  }
  UpgradePlan plan;
  plan.model = model.name;
  plan.initial_capacities = initial;
  plan.final_capacities = initial;
  if (failures.empty()) return plan;

  auto routers = make_routers(topology, demands, model, failures, options.op_factor, options.jobs);
  const double ceiling = options.ladder.at_least(demands.total() * options.op_factor);
  const std::size_t bound =
      std::max<std::size_t>(1, topology.link_count() * options.ladder.values_up_to(ceiling));

  std::vector<double>& cap = plan.final_capacities;
  for (int iteration = 0;; ++iteration) {
    const CriticalLinkSet critical =
        find_critical_links(routers, topology, cap, options.op_factor, options.jobs);
    const CriticalLink* worst = nullptr;
    for (const CriticalLink& c : critical) {
      if (c.arc < 0) continue;
      if (worst == nullptr || c.overload > worst->overload) worst = &c;
    }
    if (worst == nullptr || !congested(worst->overload)) break;
    if (plan.steps.size() >= bound) {
      throw std::logic_error("greedy dimensioning exceeded its step bound");
    }
    UpgradeStep step;
    step.iteration = iteration;
    step.link = arc_link(worst->arc);
    step.old_capacity = cap[step.link];
    step.new_capacity = options.ladder.next(step.old_capacity);
    step.scenario = worst->scenario;
    step.scenario_label = failures[worst->scenario].label(topology);
    step.arc = worst->arc;
    step.overload = worst->overload;
    cap[step.link] = step.new_capacity;
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

std::vector<PlanViolation> verify_plan(const Topology& topology, const DemandMatrix& demands,
                                       const RoutingModel& model,
                                       const std::vector<FailureScenario>& failures,
                                       const std::vector<double>& link_capacity,
                                       double op_factor, int jobs) {
  std::vector<std::vector<PlanViolation>> per(failures.size());
  parallel_for(failures.size(), jobs, [&](std::size_t i) {
    ScenarioRouter router(topology, demands, model, failures[i], op_factor);
    const LoadMap loads = router.route(link_capacity);
    for (ArcIndex a : topology.canonical_arc_order()) {
      const double o = loads[a] * op_factor - link_capacity[arc_link(a)];
      if (congested(o)) {
        per[i].push_back({static_cast<int>(i), failures[i].label(topology), a, o});
      }
    }
  });
  std::vector<PlanViolation> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

double normalized_total(const UpgradePlan& plan, const UpgradePlan& reference) {
  const double ref = reference.final_total();
  if (!(ref > 0.0)) throw ValidationError("reference plan has zero total capacity");
  return 100.0 * plan.final_total() / ref;
}

std::string plan_to_json(const UpgradePlan& plan, const Topology& topology) {
  nlohmann::json out;
  out["model"] = plan.model;
  out["initial_total_gbps"] = plan.initial_total();
  out["final_total_gbps"] = plan.final_total();
  nlohmann::json initial = nlohmann::json::object();
  nlohmann::json final_caps = nlohmann::json::object();
  for (LinkIndex l = 0; l < static_cast<LinkIndex>(topology.link_count()); ++l) {
    initial[topology.link(l).id] = plan.initial_capacities.at(l);
    final_caps[topology.link(l).id] = plan.final_capacities.at(l);
  }
  out["initial_capacities"] = initial;
  out["final_capacities"] = final_caps;
  nlohmann::json steps = nlohmann::json::array();
  for (const UpgradeStep& s : plan.steps) {
    steps.push_back({{"iteration", s.iteration},
                     {"link", topology.link(s.link).id},
                     {"old_capacity", s.old_capacity},
                     {"new_capacity", s.new_capacity},
                     {"scenario", s.scenario_label},
                     {"direction", topology.node(topology.arc_tail(s.arc)).id + "->" +
                                       topology.node(topology.arc_head(s.arc)).id},
                     {"overload", s.overload}});
  }
  out["steps"] = steps;
  return out.dump(2) + "\n";
}

std::string plan_to_csv(const UpgradePlan& plan, const Topology& topology) {
  std::ostringstream out;
  out << "iteration,link,old_capacity_gbps,new_capacity_gbps,scenario,direction,overload_gbps\n";
  for (const UpgradeStep& s : plan.steps) {
    out << s.iteration << ',' << topology.link(s.link).id << ','
        << format_number(s.old_capacity) << ',' << format_number(s.new_capacity) << ','
        << s.scenario_label << ',' << topology.node(topology.arc_tail(s.arc)).id << "->"
        << topology.node(topology.arc_head(s.arc)).id << ',' << format_number(s.overload)
        << '\n';
  }
  return out.str();
}

std::vector<double> capacities_from_plan_json(const std::string& json_text,
                                              const Topology& topology) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("capacity file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("final_capacities") ||
      !doc["final_capacities"].is_object()) {
    throw ValidationError("capacity file lacks a \"final_capacities\" object");
  }
  std::vector<double> cap(topology.link_count(), -1.0);
  for (const auto& [id, value] : doc["final_capacities"].items()) {
    const LinkIndex l = topology.link_index(id);
    if (!value.is_number() || value.get<double>() < 0.0) {
      throw ValidationError("capacity of link '" + id + "' must be a non-negative number");
    }
    cap[l] = value.get<double>();
  }
  for (LinkIndex l = 0; l < static_cast<LinkIndex>(cap.size()); ++l) {
    if (cap[l] < 0.0) {
      throw ValidationError("capacity file has no entry for link '" + topology.link(l).id + "'");
    }
  }
  return cap;
}

}  // namespace capplan
