#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "polycs/errors.hpp"
#include "polycs/gbf.hpp"

using namespace polycs;

TEST_CASE("parse and render round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t q = 2u << (rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 6);
    const GbfPoly f = oracle::random_gbf(rng, q, m, 8, 4);
    CHECK(parse_gbf(f.render()) == f);
  }
}

TEST_CASE("parser accepts the documented grammar") {
  const GbfPoly f = parse_gbf("q=4;m=3; 2*x0*x1 + x2 + 3");
  CHECK(f.coeff(0b011) == 2);
  CHECK(f.coeff(0b100) == 1);
  CHECK(f.coeff(0) == 3);
  // Repeated variables collapse since x^2 = x.
  CHECK(parse_gbf("q=2;m=2; x1*x1") == GbfPoly::variable(2, 2, 1));
  CHECK(parse_gbf("q=2;m=2; x0 + x0").is_zero());
  CHECK(parse_gbf(" q = 8 ; m = 2 ; 0 ").is_zero());
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_gbf("q=3;m=2; x0"), ParseError);
  CHECK_THROWS_AS(parse_gbf("q=4;m=2; x2"), ParseError);
  CHECK_THROWS_AS(parse_gbf("q=4;m=2; x0 +"), ParseError);
  CHECK_THROWS_AS(parse_gbf("m=2; x0"), ParseError);
  CHECK_THROWS_AS(parse_gbf("q=4;m=2; y0"), ParseError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(GbfPoly(3, 2), InvalidArgument);
  CHECK_THROWS_AS(GbfPoly(4, kMaxVars + 1), InvalidArgument);
  CHECK_NOTHROW(GbfPoly(6, 3));
}

TEST_CASE("arithmetic is multilinear mod q") {
  const GbfPoly x0 = GbfPoly::variable(4, 3, 0);
  const GbfPoly x1 = GbfPoly::variable(4, 3, 1);
  CHECK((x0 * x0) == x0);
  CHECK(((x0 + x1) * (x0 + x1)) == x0 + x1 + 2 * (x0 * x1));
  CHECK((x0 * 4).is_zero());
  CHECK((x0 - x0).is_zero());
  CHECK_THROWS_AS(x0 + GbfPoly::variable(2, 3, 0), InvalidArgument);
}

TEST_CASE("psi agrees with direct evaluation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const GbfPoly f = oracle::random_gbf(rng, 8, 5, 10, 5);
    CHECK(psi(f).phases() == oracle::eval_all(f));
  }
}

TEST_CASE("x0 is the least significant bit of the index") {
  const auto p = psi(GbfPoly::variable(2, 3, 0)).phases();
  CHECK(p == std::vector<std::uint32_t>{0, 1, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("restriction of the four-variable example") {
  const GbfPoly f = parse_gbf("q=2;m=4; x0*x1*x3 + x0*x3*x2 + x0*x2*x1 + x1*x2");
  CHECK(restrict(f, Restriction::from_code({0}, 0)) == parse_gbf("q=2;m=4; x1*x2"));
  CHECK(restrict(f, Restriction::from_code({0}, 1)) == parse_gbf("q=2;m=4; x1*x3 + x3*x2"));
}

TEST_CASE("restricted sequences mask the other half") {
  const GbfPoly f = parse_gbf("q=2;m=2; x0*x1 + x1");
  const PolyphaseSeq s = psi_restricted(f, Restriction::from_code({1}, 1));
  CHECK(s.is_masked(0));
  CHECK(s.is_masked(1));
  CHECK(s[2] == 1);
  CHECK(s[3] == 0);
  CHECK(s.unmasked_count() == 2);
}

TEST_CASE("restriction codes") {
  const Restriction r = Restriction::from_code({1, 3}, 0b10);
  CHECK(r.vars() == 0b1010);
  CHECK(r.values() == 0b1000);
  CHECK(r.code() == 0b10);
  CHECK(r.matches(0b1001));
  CHECK_FALSE(r.matches(0b1011));
  CHECK_THROWS_AS(index_mask(std::vector<int>{2, 1}, 4), InvalidArgument);
  CHECK_THROWS_AS(index_mask(std::vector<int>{4}, 4), InvalidArgument);
}

TEST_CASE("effective degree") {
  CHECK(effective_degree(parse_gbf("q=4;m=3; x0*x1")) == 2);
  CHECK(effective_degree(parse_gbf("q=4;m=3; 2*x0*x1*x2")) == 2);
  CHECK(effective_degree(parse_gbf("q=4;m=3; 2*x0*x1*x2 + x0")) == 2);
  CHECK(effective_degree(parse_gbf("q=8;m=3; 4*x0*x1*x2")) == 1);
  CHECK(effective_degree(parse_gbf("q=2;m=3; 1")) == 0);
}
