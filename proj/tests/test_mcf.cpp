#include <doctest.h>

#include <cmath>
#include <random>

#include "capplan/error.hpp"
#include "capplan/mcf.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace capplan;
using testing_util::arc;
using testing_util::capacities;
using testing_util::make_topology;

namespace {

// Recomputes the certificate from the reported arc weights: with
// sum(w * c) = 1, every routing has max utilization >= sum of
// volume * (w-shortest distance).
double recomputed_bound(const Topology& t, const DemandMatrix& d, const std::vector<double>& cap,
                        const std::vector<double>& w) {
  const int n = static_cast<int>(t.node_count());
  double norm = 0.0;
  for (std::size_t a = 0; a < w.size(); ++a) norm += w[a] * cap[a / 2];
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, INFINITY));
  for (int v = 0; v < n; ++v) dist[v][v] = 0.0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (cap[a / 2] <= 0.0) continue;
    const int u = t.arc_tail(static_cast<ArcIndex>(a)), v = t.arc_head(static_cast<ArcIndex>(a));
    dist[u][v] = std::min(dist[u][v], std::max(0.0, w[a]));
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
    }
  }
  double bound = 0.0;
  for (int s = 0; s < n; ++s) {
    for (int x = 0; x < n; ++x) bound += d.at(s, x) * dist[s][x];
  }
  return norm > 0.0 ? bound / norm : 0.0;
}

}  // namespace

TEST_CASE("two disjoint equal paths split a demand evenly") {
  const Topology t = make_topology({"s", "u", "v", "x"}, {{"su", "s", "u", 1, 10},
                                                         {"ux", "u", "x", 1, 10},
                                                         {"sv", "s", "v", 1, 10},
                                                         {"vx", "v", "x", 1, 10}});
  const FlowSolution f =
      min_max_utilization_flow(t, testing_util::demand(t, {{"s", "x", 10.0}}), capacities(t));
  CHECK(f.max_utilization == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(f.loads[arc(t, "s", "u")] + f.loads[arc(t, "s", "v")] == doctest::Approx(10.0));
  CHECK(f.loads[arc(t, "s", "u")] == doctest::Approx(5.0));
}

TEST_CASE("single path network: demand over bottleneck") {
  const Topology t =
      make_topology({"a", "b", "c"}, {{"ab", "a", "b", 1, 40}, {"bc", "b", "c", 1, 10}});
  const FlowSolution f =
      min_max_utilization_flow(t, testing_util::demand(t, {{"a", "c", 8.0}}), capacities(t));
  CHECK(f.max_utilization == doctest::Approx(0.8));
}

TEST_CASE("square with crossing demands matches the LP oracle") {
  const Topology t = make_topology({"a", "b", "c", "d"}, {{"ab", "a", "b", 1, 10},
                                                         {"bc", "b", "c", 1, 10},
                                                         {"cd", "c", "d", 1, 10},
                                                         {"da", "d", "a", 1, 10}});
  const DemandMatrix d = testing_util::demand(t, {{"a", "c", 8.0}, {"b", "d", 8.0}});
  const FlowSolution f = min_max_utilization_flow(t, d, capacities(t));
  // Each demand splits over its two 2-hop paths; every arc carries 8.
  CHECK(f.max_utilization == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(f.max_utilization ==
        doctest::Approx(oracle::lp_min_max_utilization(t, d, capacities(t))).epsilon(1e-9));
}

TEST_CASE("disconnected pair and zero-capacity links") {
  const Topology t =
      make_topology({"a", "b", "c"}, {{"ab", "a", "b", 1, 10}, {"bc", "b", "c", 1, 10}});
  CHECK_THROWS_AS(
      min_max_utilization_flow(t, testing_util::demand(t, {{"a", "c", 1.0}}), {10.0, 0.0}),
      InfeasibleError);
  const Topology tri = make_topology(
      {"a", "b", "c"}, {{"ab", "a", "b", 1, 0}, {"bc", "b", "c", 1, 10}, {"ca", "c", "a", 1, 10}});
  const FlowSolution f =
      min_max_utilization_flow(tri, testing_util::demand(tri, {{"a", "b", 5.0}}), capacities(tri));
  CHECK(f.loads[arc(tri, "a", "b")] == 0.0);
  CHECK(f.max_utilization == doctest::Approx(0.5));
}

TEST_CASE("max_overload") {
  const Topology t = make_topology({"a", "b"}, {{"ab", "a", "b", 1, 40}});
  CHECK(max_overload(t, {50.0, 0.0}, {40.0}, 1.0).overload == doctest::Approx(10.0));
  CHECK(max_overload(t, {30.0, 0.0}, {40.0}, 1.0).overload == doctest::Approx(-10.0));
  CHECK(max_overload(t, {30.0, 0.0}, {40.0}, 1.5).overload == doctest::Approx(5.0));
  // Ties: a->b before b->a, then the smaller link id.
  CHECK(max_overload(t, {50.0, 50.0}, {40.0}, 1.0).arc == 0);
  const Topology two = make_topology({"a", "b", "c"}, {{"z", "a", "b", 1, 10}, {"y", "b", "c", 1, 10}});
  CHECK(max_overload(two, {20.0, 0.0, 0.0, 20.0}, {10.0, 10.0}, 1.0).arc == 3);
}

TEST_CASE("random instances match the per-commodity LP oracle") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    CAPTURE(trial);
    const int n = 4 + trial % 3;
    const Topology t = oracle::random_topology(rng, n, 1 + trial % 3);
    const DemandMatrix d = oracle::random_demands(rng, t, 3 + trial % 5);
    const auto cap = capacities(t);
    const FlowSolution f = min_max_utilization_flow(t, d, cap);
    const double lp = oracle::lp_min_max_utilization(t, d, cap);
    CHECK(f.max_utilization == doctest::Approx(lp).epsilon(1e-6));
    // Certificate: reported bound is valid and tight.
    const double bound = recomputed_bound(t, d, cap, f.arc_weights);
    CHECK(bound <= lp * (1 + 1e-9) + 1e-12);
    CHECK(f.lower_bound == doctest::Approx(bound).epsilon(1e-6));
    CHECK(f.relative_gap() <= 1e-6);
    // Never worse than OSPF; scales linearly with the demands.
    CHECK(f.max_utilization <= max_utilization(ospf_loads(t, d), cap) * (1 + 1e-9));
    const FlowSolution g = min_max_utilization_flow(t, d.scaled(3.0), cap);
    CHECK(g.max_utilization == doctest::Approx(3.0 * f.max_utilization).epsilon(1e-6));
    // Deterministic.
    CHECK(min_max_utilization_flow(t, d, cap).loads == f.loads);

    // Per-commodity conservation and acyclic destination flows.
    for (NodeIndex s = 0; s < n; ++s) {
      for (NodeIndex x = 0; x < n; ++x) {
        if (d.at(s, x) <= 0.0) continue;
        const auto cf = f.commodity_flow(t, d, s, x);
        for (NodeIndex v = 0; v < n; ++v) {
          double net = 0.0;
          for (std::size_t a = 0; a < cf.size(); ++a) {
            if (t.arc_tail(static_cast<ArcIndex>(a)) == v) net += cf[a];
            if (t.arc_head(static_cast<ArcIndex>(a)) == v) net -= cf[a];
          }
          const double expect = v == s ? d.at(s, x) : (v == x ? -d.at(s, x) : 0.0);
          CHECK(net == doctest::Approx(expect).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("cancel_cycles removes a circulation") {
  const Topology tri = make_topology(
      {"a", "b", "c"}, {{"ab", "a", "b", 1, 10}, {"bc", "b", "c", 1, 10}, {"ca", "c", "a", 1, 10}});
  std::vector<double> flow(6, 0.0);
  flow[arc(tri, "a", "b")] = 3.0;
  flow[arc(tri, "b", "c")] = 1.0;
  flow[arc(tri, "c", "a")] = 1.0;
  cancel_cycles(tri, flow);
  CHECK(flow[arc(tri, "a", "b")] == doctest::Approx(2.0));
  CHECK(flow[arc(tri, "b", "c")] == doctest::Approx(0.0));
  CHECK(flow[arc(tri, "c", "a")] == doctest::Approx(0.0));
}
