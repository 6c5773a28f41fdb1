#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "oracle.hpp"
#include "polycs/errors.hpp"
#include "polycs/io.hpp"

using namespace polycs;

TEST_CASE("GBF JSON round trip") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const GbfPoly f = oracle::random_gbf(rng, 8, 5, 8, 3);
    const Json j = to_json(f);
    CHECK(gbf_from_json(j) == f);
    CHECK(read_gbf(j.dump()) == f);
  }
  CHECK_THROWS_AS(gbf_from_json(Json::parse(R"({"q":4})")), ParseError);
  CHECK_THROWS_AS(gbf_from_json(Json::parse(R"({"q":4,"m":2,"terms":[{"vars":[5],"coeff":1}]})")),
                  ParseError);
  CHECK_THROWS_AS(read_gbf("{ not json"), ParseError);
}

TEST_CASE("GBF files may carry comment lines") {
  CHECK(read_gbf("# comment\nq=2;m=2;\n x0*x1\n") == parse_gbf("q=2;m=2; x0*x1"));
}

TEST_CASE("CS export and re-import") {
  CsCandidate cs;
  cs.q = 4;
  cs.m = 2;
  cs.members = {parse_gbf("q=4;m=2; 2*x0*x1"), parse_gbf("q=4;m=2; 2*x0*x1 + 2*x0")};
  for (const auto& g : cs.members) cs.sequences.push_back(psi(g));
  cs.pmepr_bound = 2.0;
  cs.provenance = "gdj";
  std::ostringstream os;
  write_cs(os, cs);
  CHECK(os.str().rfind("#CS q=4 m=2 size=2 bound=2 provenance=gdj\n", 0) == 0);
  std::istringstream is(os.str());
  const SequenceFile sf = read_sequences(is);
  CHECK(sf.q == 4);
  CHECK(sf.sequences == cs.sequences);
}

TEST_CASE("sequence file parsing") {
  std::istringstream plain("0,1,- ,1\n\n1 1 1 1\n");
  const SequenceFile sf = read_sequences(plain, 2);
  REQUIRE(sf.sequences.size() == 2);
  CHECK(sf.sequences[0].is_masked(2));

  std::istringstream no_q("0 1\n");
  CHECK_THROWS_AS(read_sequences(no_q), ParseError);
  std::istringstream ragged("#CS q=2\n0 1\n0 1 1 0\n");
  CHECK_THROWS_AS(read_sequences(ragged), ParseError);
  std::istringstream big("#CS q=2\n0 2\n");
  CHECK_THROWS_AS(read_sequences(big), ParseError);
  std::istringstream junk("#CS q=2\n0 x\n");
  CHECK_THROWS_AS(read_sequences(junk), ParseError);
  std::istringstream empty("#CS q=2\n");
  CHECK_THROWS_AS(read_sequences(empty), ParseError);
}

TEST_CASE("AACF report lists nonzero off-peak shifts") {
  const AacfVector A = aacf(PolyphaseSeq(2, {0, 0, 0, 1}));
  const Json j = aacf_report(A);
  CHECK(j["L"] == 4);
  CHECK(j["peak"] == 4);
  // (+,+,+,-): A(1) = 1, A(2) = 0, A(3) = -1.
  REQUIRE(j["offpeak"].size() == 2);
  CHECK(j["offpeak"][0]["tau"] == 1);
  CHECK(j["offpeak"][1]["tau"] == 3);
  CHECK(j["offpeak"][1]["value"] == -1);
  PmeprReport p{1.5, 2.0, 64};
  CHECK(aacf_report(A, &p)["pmepr_bound"] == 2.0);
  const Json z4 = aacf_report(aacf(PolyphaseSeq(4, {0, 1})));
  CHECK(z4["offpeak"][0]["value"].is_string());
}

TEST_CASE("tables CSV header and row shape") {
  std::ostringstream os;
  write_tables_csv(os, reproduce_tables());
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  CHECK(header == "family,m,q_or_h,r,log2_size,rate,rate_reference,d_L,d_E2");
  std::getline(is, row);
  CHECK(row.rfind("S1,5,2,,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 8);
}
