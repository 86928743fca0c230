#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace capplan {

using NodeIndex = int;
using LinkIndex = int;
// Directed view of a link: arc 2*l runs a->b, arc 2*l+1 runs b->a.
using ArcIndex = int;

inline constexpr LinkIndex arc_link(ArcIndex arc) { return arc / 2; }
inline constexpr ArcIndex arc_of(LinkIndex link, bool reverse) {
  return 2 * link + (reverse ? 1 : 0);
}
inline constexpr ArcIndex reverse_arc(ArcIndex arc) { return arc ^ 1; }

struct Coordinates {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Coordinates&) const = default;
};

struct Node {
  std::string id;
  std::string name;
  std::optional<Coordinates> coords;
};

struct Link {
  std::string id;
  NodeIndex a = -1;
  NodeIndex b = -1;
  double metric = 1.0;
  double capacity = 0.0;  // Gbps
};

// Undirected multigraph with per-link routing metric and installed capacity.
// Nodes and links keep insertion order; tie-breaks use the lexicographic
// order of ids, exposed as ranks.
class Topology {
 public:
  NodeIndex add_node(Node node);
  LinkIndex add_link(std::string id, std::string_view a, std::string_view b,
                     double metric, double capacity);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  std::size_t arc_count() const { return 2 * links_.size(); }

  const Node& node(NodeIndex v) const { return nodes_.at(v); }
  const Link& link(LinkIndex l) const { return links_.at(l); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::optional<LinkIndex> find_link(std::string_view id) const;
  // Throws ValidationError naming the id.
  NodeIndex node_index(std::string_view id) const;
  LinkIndex link_index(std::string_view id) const;

  NodeIndex arc_tail(ArcIndex arc) const {
    const Link& l = links_[arc_link(arc)];
    return (arc & 1) ? l.b : l.a;
  }
  NodeIndex arc_head(ArcIndex arc) const {
    const Link& l = links_[arc_link(arc)];
    return (arc & 1) ? l.a : l.b;
  }
  double arc_metric(ArcIndex arc) const { return links_[arc_link(arc)].metric; }

  // Outgoing arcs of v, sorted by (head rank, link rank).
  std::span<const ArcIndex> out_arcs(NodeIndex v) const { return out_[v]; }

  int node_rank(NodeIndex v) const { return node_rank_[v]; }
  int link_rank(LinkIndex l) const { return link_rank_[l]; }
  // Link indices sorted by id.
  std::vector<LinkIndex> canonical_link_order() const;
  // Arcs sorted by (link id, a->b before b->a).
  std::vector<ArcIndex> canonical_arc_order() const;

  std::string link_label(LinkIndex l) const;
  std::string arc_label(ArcIndex arc) const;

  // Copy without the given links; node indices are preserved.
  Topology without_links(const std::set<LinkIndex>& removed) const;

  void set_capacity(LinkIndex l, double capacity) {
    links_.at(l).capacity = capacity;
  }

 private:
  void rebuild_indexes();

  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::unordered_map<std::string, NodeIndex> node_by_id_;
  std::unordered_map<std::string, LinkIndex> link_by_id_;
  std::vector<std::vector<ArcIndex>> out_;
  std::vector<int> node_rank_;
  std::vector<int> link_rank_;
};

// Traffic volume per ordered node pair, Gbps. Dense, indexed like the
// topology it was built for.
class DemandMatrix {
 public:
  DemandMatrix() = default;
  explicit DemandMatrix(std::size_t node_count)
      : n_(node_count), volume_(node_count * node_count, 0.0) {}

  std::size_t node_count() const { return n_; }
  double at(NodeIndex s, NodeIndex t) const { return volume_[s * n_ + t]; }
  // Throws ValidationError on self-demands or negative volumes.
  void set(NodeIndex s, NodeIndex t, double gbps);
  void add(NodeIndex s, NodeIndex t, double gbps) { set(s, t, at(s, t) + gbps); }

  double total() const;
  bool all_zero() const;
  std::size_t nonzero_count() const;
  DemandMatrix scaled(double factor) const;

  bool operator==(const DemandMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> volume_;
};

// SDN Partitioning input: non-SDN nodes carry a sub-domain label, the SDN
// border nodes form the separator.
struct Partition {
  std::map<NodeIndex, int> subdomain_of;
  std::set<NodeIndex> borders;

  int subdomain_count() const;
};

// Stacked hybrid input.
struct SdnPlacement {
  std::set<NodeIndex> sdn_nodes;
};

}  // namespace capplan
