#pragma once

#include <string>
#include <vector>

#include "capplan/topology.hpp"

namespace capplan {

// Component label per node (-1 for excluded nodes); labels are assigned in
// order of the smallest node rank inside each component.
struct Components {
  std::vector<int> label;
  int count = 0;
};

Components connected_components(const Topology& topology,
                                 const std::vector<bool>& excluded = {});
bool is_connected(const Topology& topology);

struct BridgeReport {
  bool two_edge_connected = true;
  std::vector<LinkIndex> bridges;  // canonical link order
};

// Throws ValidationError on a disconnected topology.
BridgeReport check_two_edge_connected(const Topology& topology);

struct PartitionViolation {
  enum class Kind {
    kUnknownNode,
    kOverlap,
    kUnassigned,
    kBadLabel,
    kCrossLink,
    kComponentMismatch,
    kComponentCount,
  };
  Kind kind;
  std::string message;
};

struct PartitionReport {
  std::vector<PartitionViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Checks that the borders form a vertex separator whose removal leaves
// exactly the labelled sub-domains as connected components.
PartitionReport validate_partition(const Topology& topology,
                                   const Partition& partition);

}  // namespace capplan
