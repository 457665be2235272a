#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>

#include "trilat/topology.hpp"

using namespace trilat;

TEST_SUITE("topology") {

TEST_CASE("generate_random honors counts, bounds, and kinds") {
  const Topology topo = Topology::generate_random(240, 40, 1000.0, 42);
  REQUIRE(topo.size() == 240);
  CHECK(topo.anchor_count() == 40);
  CHECK(topo.blind_count() == 200);
  CHECK(topo.field_side == 1000.0);
  for (std::size_t i = 0; i < topo.size(); ++i) {
    const Node& n = topo.nodes[i];
    CHECK(n.id == i);
    CHECK(n.x >= 0.0);
    CHECK(n.x <= 1000.0);
    CHECK(n.y >= 0.0);
    CHECK(n.y <= 1000.0);
    CHECK((n.kind == (i < 40 ? NodeKind::Anchor : NodeKind::Blind)));
  }
  CHECK_NOTHROW(topo.validate());
}

TEST_CASE("generate_random is seed-deterministic") {
  const Topology a = Topology::generate_random(50, 10, 500.0, 7);
  const Topology b = Topology::generate_random(50, 10, 500.0, 7);
  const Topology c = Topology::generate_random(50, 10, 500.0, 8);
  REQUIRE(a.size() == b.size());
  bool identical = true;
  bool differs_from_c = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    identical = identical && a.nodes[i].x == b.nodes[i].x && a.nodes[i].y == b.nodes[i].y;
    differs_from_c = differs_from_c || a.nodes[i].x != c.nodes[i].x;
  }
  CHECK(identical);
  CHECK(differs_from_c);
}

TEST_CASE("generate_random rejects bad arguments") {
  CHECK_THROWS_AS(Topology::generate_random(5, 6, 100.0, 1), TopologyError);
  CHECK_THROWS_AS(Topology::generate_random(5, 2, 0.0, 1), TopologyError);
  CHECK_THROWS_AS(Topology::generate_random(5, 2, -3.0, 1), TopologyError);
}

TEST_CASE("text round-trip preserves every field exactly") {
  const Topology a = Topology::generate_random(60, 12, 750.0, 99);
  const Topology b = Topology::from_text(a.to_text());
  REQUIRE(b.size() == a.size());
  CHECK(b.field_side == a.field_side);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b.nodes[i].id == a.nodes[i].id);
    CHECK(b.nodes[i].kind == a.nodes[i].kind);
    CHECK(b.nodes[i].x == a.nodes[i].x);  // bit-exact via shortest round-trip
    CHECK(b.nodes[i].y == a.nodes[i].y);
  }
  // Serialization itself is stable.
  CHECK(b.to_text() == a.to_text());
}

TEST_CASE("file round-trip via save/load") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "trilat_topo_roundtrip.txt";
  const Topology a = Topology::generate_random(30, 5, 300.0, 5);
  a.save(path.string());
  const Topology b = Topology::load(path.string());
  CHECK(b.to_text() == a.to_text());
  fs::remove(path);
  CHECK_THROWS_AS(Topology::load(path.string()), TopologyError);
}

TEST_CASE("parser accepts comments, blank lines, and unordered ids") {
  const std::string text =
      "# deployment for the bench rig\n"
      "\n"
      "trilat-topology v1 400\n"
      "3,A,130,110\n"
      "# middle of the field\n"
      "0, A, 130, 220\n"
      "2,B,100,100\n";
  const Topology topo = Topology::from_text(text);
  REQUIRE(topo.size() == 3);
  CHECK(topo.field_side == 400.0);
  // Sorted by id regardless of file order.
  CHECK(topo.nodes[0].id == 0);
  CHECK(topo.nodes[1].id == 2);
  CHECK(topo.nodes[2].id == 3);
  CHECK(topo.nodes[0].x == 130.0);
  CHECK(topo.nodes[0].y == 220.0);
  CHECK(topo.nodes[1].kind == NodeKind::Blind);
}

TEST_CASE("parser reports the offending line") {
  SUBCASE("missing header") {
    try {
      Topology::from_text("0,A,1,1\n");
      FAIL("expected TopologyError");
    } catch (const TopologyError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("unsupported version") {
    CHECK_THROWS_AS(Topology::from_text("trilat-topology v2 100\n"), TopologyError);
  }
  SUBCASE("bad kind") {
    try {
      Topology::from_text("trilat-topology v1 100\n0,X,1,1\n");
      FAIL("expected TopologyError");
    } catch (const TopologyError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("bad number") {
    try {
      Topology::from_text("trilat-topology v1 100\n0,A,oops,1\n");
      FAIL("expected TopologyError");
    } catch (const TopologyError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("wrong field count") {
    CHECK_THROWS_AS(Topology::from_text("trilat-topology v1 100\n0,A,1\n"),
                    TopologyError);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(Topology::from_text(""), TopologyError);
  }
}

TEST_CASE("validate rejects broken deployments") {
  SUBCASE("duplicate id") {
    Topology t;
    t.field_side = 100.0;
    t.nodes = {{0, NodeKind::Anchor, 1, 1}, {0, NodeKind::Blind, 2, 2}};
    CHECK_THROWS_AS(t.validate(), TopologyError);
  }
  SUBCASE("coordinate outside the field") {
    Topology t;
    t.field_side = 100.0;
    t.nodes = {{0, NodeKind::Anchor, 1, 101}};
    CHECK_THROWS_AS(t.validate(), TopologyError);
    t.nodes = {{0, NodeKind::Anchor, -0.5, 1}};
    CHECK_THROWS_AS(t.validate(), TopologyError);
  }
  SUBCASE("non-positive field side") {
    Topology t;
    t.field_side = 0.0;
    CHECK_THROWS_AS(t.validate(), TopologyError);
  }
  SUBCASE("parser runs validation too") {
    CHECK_THROWS_AS(Topology::from_text("trilat-topology v1 100\n0,A,1,1\n0,B,2,2\n"),
                    TopologyError);
  }
}

TEST_CASE("node_distance is the Euclidean metric") {
  const Node a{0, NodeKind::Anchor, 0.0, 0.0};
  const Node b{1, NodeKind::Blind, 3.0, 4.0};
  CHECK(node_distance(a, b) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(node_distance(a, a) == 0.0);
  CHECK(node_distance(a, b) == node_distance(b, a));
}

}  // TEST_SUITE
