#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "capplan/topology.hpp"

namespace capplan {

// Placement/partition sidecar:
//   { "sdn_nodes": [ids], "subdomains": {id: int} }
// "subdomains" is absent for stacked-hybrid placements.
struct Sidecar {
  SdnPlacement placement;
  std::optional<Partition> partition;
};

// Throws ValidationError on malformed JSON or unknown node ids.
Sidecar parse_sidecar(const std::string& json_text, const Topology& topology);
Sidecar load_sidecar(const std::filesystem::path& path, const Topology& topology);

std::string sidecar_to_json(const Topology& topology, const Partition& partition);
std::string sidecar_to_json(const Topology& topology, const SdnPlacement& placement);

}  // namespace capplan
