#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tempora/cli.hpp"
#include "tempora/serialization.hpp"

using tempora::cli_main;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFixtures = TEMPORA_FIXTURE_DIR;

}  // namespace

TEST_CASE("verify passes the built-in anchors") {
  const Run r = run({"verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  S=3 anchor") != std::string::npos);
  CHECK(r.out.find("PASS  2sqrt2 anchor: projective") != std::string::npos);
  CHECK(r.out.find("PASS  2sqrt2 anchor: spatial") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("spatial subcommand") {
  const Run r = run({"spatial", "--angles", "0,1.5707963,-0.7853982,0.7853982"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["s_max"].get<double>() == doctest::Approx(2.8284271247461903).epsilon(1e-6));
  CHECK(run({"spatial", "--angles", "0,1"}).code == 2);
  CHECK(run({"spatial", "--angles", "0,a,1,2"}).code == 2);
}

TEST_CASE("sample with zero trials writes an empty result") {
  const Run r = run({"sample", "--kind", "hmm", "--count", "0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"]["total"] == 0);
  CHECK(j["histogram"]["counts"].size() == 400);
  CHECK(j["summary"]["s_max_observed"].is_null());
}

TEST_CASE("sample csv output and --out") {
  const std::string path = "test_cli_sample.csv";
  const Run r = run({"sample", "--kind", "hqmm-proj", "--count", "2000", "--bins", "8",
                     "--format", "csv", "--out", path, "--threads", "2"});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "bin_lo,bin_hi,count");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 8);
  std::remove(path.c_str());
}

TEST_CASE("delay subcommand") {
  const Run r = run({"delay", "--kind", "hmm", "--count", "1000", "--t-list", "0,2",
                     "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,mean_s,max_s,fraction_above_2,min_raw_sum\n0,", 0) == 0);
  CHECK(r.out.find("\n2,") != std::string::npos);
  CHECK(run({"delay", "--kind", "hmm", "--count", "10", "--t-list", "1,-2"}).code == 2);
}

TEST_CASE("score subcommand") {
  const Run r = run({"score", kFixtures + "/s3_example.json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["s_max"] == 3.0);
  CHECK(j["result"]["s_canonical"] == 1.0);

  const Run d = run({"score", kFixtures + "/s3_example_mixing_charlie.json", "--t-list", "0,1",
                     "--convention", "canonical"});
  REQUIRE(d.code == 0);
  const auto dj = nlohmann::json::parse(d.out);
  CHECK(dj["delayed"].size() == 2);
  CHECK(dj["delayed"][1]["result"]["s_canonical"].get<double>() <= 2.0 + 1e-9);

  CHECK(run({"score", kFixtures + "/kind_mismatch.json"}).code == 1);
  CHECK(run({"score", kFixtures + "/does_not_exist.json"}).code == 1);
  CHECK(run({"score", kFixtures + "/s3_example.json", "--t-list", "1"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"sample", "--kind", "qmm"}).code == 2);
  CHECK(run({"sample", "--count", "5", "--full-scale"}).code == 2);
  CHECK(run({"sample", "--count", "5", "--range", "3,1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
