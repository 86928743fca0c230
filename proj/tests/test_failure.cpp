#include <doctest.h>

#include "capplan/error.hpp"
#include "capplan/failure.hpp"
#include "capplan/graph_checks.hpp"
#include "capplan/sndlib.hpp"
#include "helpers.hpp"

using namespace capplan;
using testing_util::make_topology;

namespace {

const std::string kData = CAPPLAN_SOURCE_DIR "/data/";

Topology triangle() {
  return make_topology({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}});
}

}  // namespace

TEST_CASE("single-link failures are enumerated in link-id order") {
  const Network n = load_sndlib(kData + "nobel-eu.txt");
  const auto without = enumerate_single_link_failures(n.topology, false);
  const auto with = enumerate_single_link_failures(n.topology, true);
  CHECK(without.size() == 41);
  CHECK(with.size() == 42);
  CHECK(with.front().nominal());
  for (std::size_t i = 1; i < without.size(); ++i) {
    CHECK(n.topology.link(without[i - 1].failed_links[0]).id <
          n.topology.link(without[i].failed_links[0]).id);
  }
  CHECK(enumerate_single_link_failures(n.topology, true) == with);

  const Topology two = make_topology({"a", "b"}, {{"ab", "a", "b"}});
  CHECK(enumerate_single_link_failures(two, false).size() == 1);
}

TEST_CASE("labels") {
  const Topology t = triangle();
  CHECK(FailureScenario{}.label(t) == "nominal");
  CHECK(FailureScenario{{1}}.label(t) == "bc");
}

TEST_CASE("apply_failure") {
  const Topology t = triangle();
  SUBCASE("nominal is the identity") {
    const Topology same = apply_failure(t, FailureScenario{});
    CHECK(same.link_count() == 3);
    for (LinkIndex l = 0; l < 3; ++l) CHECK(same.link(l).id == t.link(l).id);
  }
  SUBCASE("triangle minus one link is a path") {
    const Topology path = apply_failure(t, FailureScenario{{0}});
    CHECK(path.link_count() == 2);
    CHECK(path.node_count() == 3);
    CHECK(connected_components(path).count == 1);
    CHECK_FALSE(check_two_edge_connected(path).two_edge_connected);
  }
  SUBCASE("disconnecting a demand pair names the scenario") {
    const Topology path = make_topology({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}});
    CHECK_THROWS_WITH_AS(
        apply_failure(path, FailureScenario{{0}}, testing_util::demand(path, {{"a", "c", 1.0}})),
        doctest::Contains("ab"), InfeasibleError);
    // No demand across the cut is fine.
    CHECK_NOTHROW(
        apply_failure(path, FailureScenario{{0}}, testing_util::demand(path, {{"b", "c", 1.0}})));
  }
}

TEST_CASE("every single cut of the backbones stays connected") {
  for (const char* net : {"nobel-eu", "cost266", "janos-us-ca"}) {
    CAPTURE(net);
    const Network n = load_sndlib(kData + net + ".txt");
    for (const FailureScenario& s : enumerate_single_link_failures(n.topology, false)) {
      CHECK(connected_components(apply_failure(n.topology, s)).count == 1);
    }
  }
}

TEST_CASE("subgraph index maps") {
  const Topology t = triangle();
  const Subgraph sub = remove_links(t, {1});
  CHECK(sub.original_link == std::vector<LinkIndex>{0, 2});
  CHECK(sub.restrict_links({1.0, 2.0, 3.0}) == std::vector<double>{1.0, 3.0});
  CHECK(sub.lift_arcs({1, 2, 3, 4}, 6) == LoadMap{1, 2, 0, 0, 3, 4});
  const Subgraph dropped = drop_zero_capacity(t, {10.0, 0.0, 10.0});
  CHECK(dropped.original_link == std::vector<LinkIndex>{0, 2});
}
