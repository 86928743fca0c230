#pragma once

// Independent reference implementations used as test oracles. They read
// topologies and demand matrices but never call the library's routing code.

#include <random>
#include <set>
#include <vector>

#include "capplan/topology.hpp"

namespace oracle {

using capplan::DemandMatrix;
using capplan::Topology;

// Random 2-edge-connected graph: a Hamiltonian cycle plus random chords.
// Node ids n0..n9, link ids e00..e99, metrics 1..3, capacities 10..40.
Topology random_topology(std::mt19937& rng, int nodes, int chords);
// Random demands on `pairs` distinct ordered pairs, volumes 1..10.
DemandMatrix random_demands(std::mt19937& rng, const Topology& t, int pairs,
                            const std::vector<int>& destinations = {});

// All-pairs shortest distances by Floyd-Warshall over allowed nodes
// (empty = all); intermediate nodes outside `allowed` are never used.
std::vector<std::vector<double>> floyd(const Topology& t, const std::vector<bool>& allowed = {});

// Next link toward `target`: among neighbors w with d(v) = metric + d(w),
// the smallest node id, then the smallest link id. -1 if none.
// Returns the directed arc index (2*link + dir).
int next_arc(const Topology& t, const std::vector<std::vector<double>>& dist, int v, int target,
             const std::vector<bool>& allowed = {});

// Exhaustive simple-path enumeration; minimal metric sum from s to t.
double brute_force_distance(const Topology& t, int s, int target);

// Per-commodity arc-flow LP minimizing max utilization, solved by a dense
// two-phase tableau simplex with Bland's rule.
double lp_min_max_utilization(const Topology& t, const DemandMatrix& d,
                              const std::vector<double>& cap);

// Stacked hybrid with exactly one SDN node: grid search over its split
// fractions per destination in steps of 0.01, then a 0.001 refinement
// around the best grid point. OSPF paths by `next_arc`.
double stacked_grid_oracle(const Topology& t, int sdn_node, const DemandMatrix& d,
                           const std::vector<double>& cap);

// SDN Partitioning: enumerates every egress assignment per (sub-domain,
// destination with demand) and returns the smallest max utilization over
// the valid ones. `count` receives the number of assignments.
double partition_oracle(const Topology& t, const std::set<int>& borders, const DemandMatrix& d,
                        const std::vector<double>& cap, long long* count = nullptr);

// Max over arcs of load / capacity.
double max_util(const Topology& t, const std::vector<double>& arc_load,
                const std::vector<double>& cap);

}  // namespace oracle
