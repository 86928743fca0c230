#include "capplan/demands.hpp"

#include "capplan/error.hpp"
#include "capplan/ospf.hpp"

namespace capplan {

DemandMatrix uniform_demands(const Topology& topology, double volume) {
  const auto n = static_cast<NodeIndex>(topology.node_count());
  DemandMatrix out(topology.node_count());
  for (NodeIndex s = 0; s < n; ++s) {
    for (NodeIndex t = 0; t < n; ++t) {
      if (s != t) out.set(s, t, volume);
    }
  }
  return out;
}

DemandMatrix scale_demands(const Topology& topology, const DemandMatrix& demands,
                           double target_max_load) {
  if (target_max_load < 0.0) throw ValidationError("target load must be non-negative");
  if (demands.all_zero()) throw ValidationError("cannot scale an all-zero demand matrix");
  const double current = max_arc_load(ospf_loads(topology, demands));
  if (!(current > 0.0)) throw ValidationError("OSPF routing produces no link load");
  return demands.scaled(target_max_load / current);
}

}  // namespace capplan
