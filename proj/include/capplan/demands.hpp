#pragma once

#include "capplan/topology.hpp"

namespace capplan {

// `volume` Gbps for every ordered node pair.
DemandMatrix uniform_demands(const Topology& topology, double volume = 1.0);

// Rescales `demands` so that OSPF routing on `topology` yields a maximum
// directed-link load of `target_max_load`. Throws ValidationError when the
// demands are all zero.
DemandMatrix scale_demands(const Topology& topology, const DemandMatrix& demands,
                           double target_max_load);

}  // namespace capplan
