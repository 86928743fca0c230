#pragma once

#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "capplan/topology.hpp"

namespace testing_util {

struct L {
  std::string id, a, b;
  double metric = 1.0;
  double capacity = 10.0;
};

inline capplan::Topology make_topology(std::initializer_list<const char*> nodes,
                                       std::initializer_list<L> links) {
  capplan::Topology t;
  for (const char* id : nodes) {
    capplan::Node n;
    n.id = id;
    n.name = id;
    t.add_node(n);
  }
  for (const L& l : links) t.add_link(l.id, l.a, l.b, l.metric, l.capacity);
  return t;
}

inline std::vector<double> capacities(const capplan::Topology& t) {
  std::vector<double> c;
  for (const auto& l : t.links()) c.push_back(l.capacity);
  return c;
}

inline capplan::DemandMatrix demand(const capplan::Topology& t,
                                    std::initializer_list<std::tuple<const char*, const char*, double>> entries) {
  capplan::DemandMatrix d(t.node_count());
  for (const auto& [s, x, v] : entries) d.set(t.node_index(s), t.node_index(x), v);
  return d;
}

inline capplan::ArcIndex arc(const capplan::Topology& t, const char* from, const char* to) {
  for (capplan::LinkIndex l = 0; l < static_cast<capplan::LinkIndex>(t.link_count()); ++l) {
    const auto& link = t.link(l);
    if (t.node(link.a).id == from && t.node(link.b).id == to) return capplan::arc_of(l, false);
    if (t.node(link.b).id == from && t.node(link.a).id == to) return capplan::arc_of(l, true);
  }
  return -1;
}

}  // namespace testing_util
