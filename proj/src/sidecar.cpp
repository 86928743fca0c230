#include "capplan/sidecar.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "capplan/error.hpp"

namespace capplan {

using nlohmann::json;

Sidecar parse_sidecar(const std::string& json_text, const Topology& topology) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("sidecar is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("sidecar must be a JSON object");

  Sidecar out;
  if (!doc.contains("sdn_nodes") || !doc["sdn_nodes"].is_array()) {
    throw ValidationError("sidecar lacks an 'sdn_nodes' array");
  }
  for (const auto& id : doc["sdn_nodes"]) {
    if (!id.is_string()) throw ValidationError("sdn_nodes entries must be strings");
    const NodeIndex v = topology.node_index(id.get<std::string>());
    if (!out.placement.sdn_nodes.insert(v).second) {
      throw ValidationError("node '" + id.get<std::string>() +
                            "' listed twice in sdn_nodes");
    }
  }
  if (doc.contains("subdomains")) {
    if (!doc["subdomains"].is_object()) {
      throw ValidationError("'subdomains' must be an object");
    }
    Partition p;
    p.borders = out.placement.sdn_nodes;
    for (const auto& [id, label] : doc["subdomains"].items()) {
      if (!label.is_number_integer() || label.get<int>() < 0) {
        throw ValidationError("sub-domain of '" + id +
                              "' must be a non-negative integer");
      }
      p.subdomain_of[topology.node_index(id)] = label.get<int>();
    }
    out.partition = std::move(p);
  }
  return out;
}

Sidecar load_sidecar(const std::filesystem::path& path, const Topology& topology) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sidecar(buf.str(), topology);
}

std::string sidecar_to_json(const Topology& topology, const Partition& partition) {
  json doc;
  doc["sdn_nodes"] = json::array();
  for (NodeIndex v : partition.borders) doc["sdn_nodes"].push_back(topology.node(v).id);
  doc["subdomains"] = json::object();
  for (const auto& [v, label] : partition.subdomain_of) {
    doc["subdomains"][topology.node(v).id] = label;
  }
  return doc.dump(2) + "\n";
}

std::string sidecar_to_json(const Topology& topology, const SdnPlacement& placement) {
  json doc;
  doc["sdn_nodes"] = json::array();
  for (NodeIndex v : placement.sdn_nodes) doc["sdn_nodes"].push_back(topology.node(v).id);
  return doc.dump(2) + "\n";
}

}  // namespace capplan
