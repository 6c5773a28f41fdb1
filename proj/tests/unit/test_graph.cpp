#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polycs/errors.hpp"
#include "polycs/graph.hpp"

using namespace polycs;

namespace {

const char* kExample1 = "q=2;m=4; x0*x1*x3 + x0*x3*x2 + x0*x2*x1 + x1*x2";
const char* kExample2 =
    "q=4;m=5; 2*x0*x1*x2 + 2*x0*x1*x3 + 2*x1*x3 + 2*x3*x2 + 2*x0*x4 + x1 + 2*x2 + 2*x3 + 2*x4 + 3";
const char* kExample4 =
    "q=4;m=6; 2*x0*x2*x3 + 2*x0*x3*x4 + 2*x0*x4*x5 + 2*x0*x2*x4 + 2*x0*x1*x4 + 2*x0*x1*x3 + "
    "2*x0*x3*x5 + 2*x2*x4 + 2*x4*x1 + 2*x1*x3 + 2*x3*x5";

RestrictionGraph graph_from(const char* text, Mask restricted = 0) {
  return graph_of(parse_gbf(text), restricted);
}

}  // namespace

TEST_CASE("path, path plus isolated vertex, other") {
  ShapeClass s = classify(graph_from("q=2;m=4; x2*x0 + x0*x3 + x3*x1"));
  CHECK(s.tag == ShapeTag::Path);
  CHECK(s.path_order == std::vector<int>{1, 3, 0, 2});
  CHECK(s.endpoints == std::pair{1, 2});

  s = classify(graph_from("q=2;m=4; x0*x1 + x1*x2"));
  CHECK(s.tag == ShapeTag::PathPlusIsolated);
  CHECK(s.isolated == 3);
  CHECK(s.endpoints == std::pair{0, 2});

  CHECK(classify(graph_from("q=2;m=3; x0*x1 + x1*x2 + x0*x2")).tag == ShapeTag::Other);
  CHECK(classify(graph_from("q=2;m=4; x0*x1 + x1*x2 + x1*x3")).tag == ShapeTag::Other);
  CHECK(classify(graph_from("q=2;m=4; x0*x1 + x2*x3")).tag == ShapeTag::Other);
  // Two isolated vertices are not covered.
  CHECK(classify(graph_from("q=2;m=4; x0*x1")).tag == ShapeTag::Other);
}

TEST_CASE("degenerate graphs") {
  CHECK(classify(graph_from("q=2;m=1; x0")).tag == ShapeTag::Path);
  // Two unconnected vertices: neither a path nor path + isolated (needs >= 3 vertices).
  CHECK(classify(graph_from("q=2;m=2; x0 + x1")).tag == ShapeTag::Other);
  // With x0 restricted the single remaining vertex is a path.
  CHECK(classify(graph_from("q=2;m=2; x1", 0b01)).tag == ShapeTag::Path);
}

TEST_CASE("graph_of rejects cubic terms and restricted variables") {
  CHECK_THROWS_AS(graph_from("q=2;m=3; x0*x1*x2"), DegreeTooHigh);
  CHECK_THROWS_AS(graph_from("q=2;m=3; x0*x1", 0b001), InvalidArgument);
  const RestrictionGraph g = graph_from("q=4;m=3; 2*x0*x1 + x1*x2 + x0");
  CHECK(g.edges.at({0, 1}) == 2);
  CHECK(g.edges.at({1, 2}) == 1);
  CHECK(g.degree(1) == 2);
}

TEST_CASE("four-variable example profile") {
  const TheoremProfile p = analyze(parse_gbf(kExample1), {0});
  CHECK(p.ok);
  CHECK(p.k() == 1);
  CHECK(p.M() == 1);
  CHECK(p.S_M == std::vector<Mask>{1});
  REQUIRE(p.p() == 1);
  CHECK(p.groups[0].l == 3);
  CHECK(p.groups[0].S == std::vector<Mask>{0});
  CHECK(p.groups[0].g_l == 0);
  CHECK(p.groups[0].L.at(0) == 0);
  CHECK(p.endpoint.at(0) == 1);
  CHECK(analyze(parse_gbf(kExample1), {0}, EndpointChoice::Highest).endpoint.at(0) == 2);
}

TEST_CASE("five-variable Z4 example profile") {
  const TheoremProfile p = analyze(parse_gbf(kExample2), {0});
  CHECK(p.M() == 0);
  REQUIRE(p.p() == 1);
  CHECK(p.groups[0].l == 4);
  CHECK(p.groups[0].N() == 2);
  CHECK(p.groups[0].g_l == 2);
  CHECK(p.groups[0].L.at(0) == 0);
  CHECK(p.groups[0].L.at(1) == 2);
}

TEST_CASE("six-variable example profile has L = 0 for the isolated x1") {
  const TheoremProfile p = analyze(parse_gbf(kExample4), {0});
  CHECK(p.M() == 1);
  REQUIRE(p.p() == 1);
  CHECK(p.groups[0].l == 1);
  CHECK(p.groups[0].S == std::vector<Mask>{1});
  CHECK(p.groups[0].L.at(1) == 0);
}

TEST_CASE("unit edge weights over Z4 break the hypothesis") {
  const GbfPoly f = parse_gbf("q=4;m=5; x0*x1*x3 + x0*x3*x4 + x1*x3 + x3*x2");
  const TheoremProfile p = inspect(f, {0});
  CHECK_FALSE(p.ok);
  CHECK_FALSE(p.edge_weight_ok);
  CHECK_FALSE(p.diagnostics.empty());
  CHECK_THROWS_AS(analyze(f, {0}), NotTheorem1Applicable);
}

TEST_CASE("cubic restriction is reported, not thrown, by inspect") {
  const GbfPoly f = parse_gbf("q=2;m=4; x1*x2*x3");
  const TheoremProfile p = inspect(f, {0});
  CHECK_FALSE(p.ok);
  CHECK_THROWS_AS(analyze(f, {0}), NotTheorem1Applicable);
  CHECK_THROWS_AS(inspect(f, {0, 1, 2, 3}), InvalidArgument);
}

TEST_CASE("l_value") {
  // x3 is coupled to x0 only: L_c = coefficient of x3 gained under x0 = c.
  const GbfPoly f = parse_gbf("q=4;m=4; 2*x0*x3 + x3 + 2*x1*x2");
  CHECK(l_value(f, 3, {0}, 0) == 0);
  CHECK(l_value(f, 3, {0}, 1) == 2);
  const GbfPoly g = parse_gbf("q=4;m=4; 2*x0*x3 + 2*x3*x1");
  CHECK_THROWS_AS(l_value(g, 3, {0}, 1), MixedIsolatedCoupling);
  CHECK_THROWS_AS(l_value(f, 0, {0}, 0), InvalidArgument);
}

TEST_CASE("code bits put c_0 first") {
  CHECK(code_bits(0b01, 2) == "10");
  CHECK(code_bits(0b10, 2) == "01");
  CHECK(code_bits(0, 0).empty());
}
