#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "capplan/topology.hpp"

namespace capplan {

struct Network {
  Topology topology;
  DemandMatrix demands;
};

// SNDlib native plain-text format. Reads the NODES, LINKS and DEMANDS
// sections and skips any other section (META, ADMISSIBLE_PATHS, ...).
//
// Links: metric is the routing-cost field when it is present and positive,
// otherwise 1 (hop count). Capacity is the pre-installed capacity field when
// present, otherwise 0. Demands with the same (source, target) accumulate.
//
// Throws ParseError naming the line and the offending entity.
Network parse_sndlib(std::istream& in);
Network parse_sndlib(const std::string& text);
// Throws IoError when the file cannot be read.
Network load_sndlib(const std::filesystem::path& path);

std::string serialize_sndlib(const Topology& topology,
                             const DemandMatrix& demands,
                             const std::string& network_name = "network");

// Shortest round-trippable decimal form of a double.
std::string format_number(double value);

}  // namespace capplan
