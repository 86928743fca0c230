#include "capplan/topology.hpp"

#include <algorithm>
#include <numeric>

#include "capplan/error.hpp"

namespace capplan {

NodeIndex Topology::add_node(Node node) {
  if (node.id.empty()) throw ValidationError("empty node id");
  if (node_by_id_.contains(node.id)) {
    throw ValidationError("duplicate node id '" + node.id + "'");
  }
  if (node.name.empty()) node.name = node.id;
  const auto index = static_cast<NodeIndex>(nodes_.size());
  node_by_id_.emplace(node.id, index);
  nodes_.push_back(std::move(node));
  rebuild_indexes();
  return index;
}

LinkIndex Topology::add_link(std::string id, std::string_view a,
                             std::string_view b, double metric,
                             double capacity) {
  if (id.empty()) throw ValidationError("empty link id");
  if (link_by_id_.contains(id)) {
    throw ValidationError("duplicate link id '" + id + "'");
  }
  auto ia = find_node(a);
  auto ib = find_node(b);
  if (!ia) {
    throw ValidationError("link '" + id + "' references unknown node '" +
                          std::string(a) + "'");
  }
  if (!ib) {
    throw ValidationError("link '" + id + "' references unknown node '" +
                          std::string(b) + "'");
  }
  if (*ia == *ib) throw ValidationError("link '" + id + "' is a self-loop");
  if (!(metric > 0.0)) {
    throw ValidationError("link '" + id + "' has non-positive metric");
  }
  if (!(capacity >= 0.0)) {
    throw ValidationError("link '" + id + "' has negative capacity");
  }
  const auto index = static_cast<LinkIndex>(links_.size());
  link_by_id_.emplace(id, index);
  links_.push_back(Link{std::move(id), *ia, *ib, metric, capacity});
  rebuild_indexes();
  return index;
}

std::optional<NodeIndex> Topology::find_node(std::string_view id) const {
  auto it = node_by_id_.find(std::string(id));
  if (it == node_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<LinkIndex> Topology::find_link(std::string_view id) const {
  auto it = link_by_id_.find(std::string(id));
  if (it == link_by_id_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Topology::node_index(std::string_view id) const {
  auto v = find_node(id);
  if (!v) throw ValidationError("unknown node '" + std::string(id) + "'");
  return *v;
}

LinkIndex Topology::link_index(std::string_view id) const {
  auto l = find_link(id);
  if (!l) throw ValidationError("unknown link '" + std::string(id) + "'");
  return *l;
}

std::vector<LinkIndex> Topology::canonical_link_order() const {
  std::vector<LinkIndex> order(links_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [this](LinkIndex x, LinkIndex y) {
    return link_rank_[x] < link_rank_[y];
  });
  return order;
}

std::vector<ArcIndex> Topology::canonical_arc_order() const {
  std::vector<ArcIndex> order;
  order.reserve(arc_count());
  for (LinkIndex l : canonical_link_order()) {
    order.push_back(arc_of(l, false));
    order.push_back(arc_of(l, true));
  }
  return order;
}

std::string Topology::link_label(LinkIndex l) const {
  const Link& link = links_.at(l);
  return link.id + " (" + nodes_[link.a].id + "--" + nodes_[link.b].id + ")";
}

std::string Topology::arc_label(ArcIndex arc) const {
  return links_.at(arc_link(arc)).id + " (" + nodes_[arc_tail(arc)].id +
         "->" + nodes_[arc_head(arc)].id + ")";
}

Topology Topology::without_links(const std::set<LinkIndex>& removed) const {
  Topology out;
  out.nodes_ = nodes_;
  out.node_by_id_ = node_by_id_;
  for (LinkIndex l = 0; l < static_cast<LinkIndex>(links_.size()); ++l) {
    if (removed.contains(l)) continue;
    out.link_by_id_.emplace(links_[l].id, static_cast<LinkIndex>(out.links_.size()));
    out.links_.push_back(links_[l]);
  }
  out.rebuild_indexes();
  return out;
}

void Topology::rebuild_indexes() {
  const std::size_t n = nodes_.size();
  const std::size_t m = links_.size();

  std::vector<NodeIndex> by_id(n);
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(), [this](NodeIndex x, NodeIndex y) {
    return nodes_[x].id < nodes_[y].id;
  });
  node_rank_.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) node_rank_[by_id[r]] = static_cast<int>(r);

  std::vector<LinkIndex> links_by_id(m);
  std::iota(links_by_id.begin(), links_by_id.end(), 0);
  std::sort(links_by_id.begin(), links_by_id.end(),
            [this](LinkIndex x, LinkIndex y) { return links_[x].id < links_[y].id; });
  link_rank_.assign(m, 0);
  for (std::size_t r = 0; r < m; ++r) link_rank_[links_by_id[r]] = static_cast<int>(r);

  out_.assign(n, {});
  for (LinkIndex l = 0; l < static_cast<LinkIndex>(m); ++l) {
    out_[links_[l].a].push_back(arc_of(l, false));
    out_[links_[l].b].push_back(arc_of(l, true));
  }
  for (auto& arcs : out_) {
    std::sort(arcs.begin(), arcs.end(), [this](ArcIndex x, ArcIndex y) {
      const int hx = node_rank_[arc_head(x)];
      const int hy = node_rank_[arc_head(y)];
      if (hx != hy) return hx < hy;
      return link_rank_[arc_link(x)] < link_rank_[arc_link(y)];
    });
  }
}

void DemandMatrix::set(NodeIndex s, NodeIndex t, double gbps) {
  if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= n_ ||
      static_cast<std::size_t>(t) >= n_) {
    throw ValidationError("demand references a node outside the topology");
  }
  if (!(gbps >= 0.0)) throw ValidationError("negative demand volume");
  if (s == t && gbps != 0.0) throw ValidationError("self-demand is not allowed");
  volume_[s * n_ + t] = gbps;
}

double DemandMatrix::total() const {
  return std::accumulate(volume_.begin(), volume_.end(), 0.0);
}

bool DemandMatrix::all_zero() const {
  return std::all_of(volume_.begin(), volume_.end(),
                     [](double v) { return v == 0.0; });
}

std::size_t DemandMatrix::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(
      volume_.begin(), volume_.end(), [](double v) { return v != 0.0; }));
}

DemandMatrix DemandMatrix::scaled(double factor) const {
  DemandMatrix out = *this;
  for (double& v : out.volume_) v *= factor;
  return out;
}

int Partition::subdomain_count() const {
  int k = 0;
  for (const auto& [node, label] : subdomain_of) k = std::max(k, label + 1);
  return k;
}

}  // namespace capplan
