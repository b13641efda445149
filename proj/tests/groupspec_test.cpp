#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "sp2/groupspec.hpp"
#include "testutil.hpp"

using namespace sp2;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string data_file(const std::string& name) {
  for (const char* prefix : {"data/", "../data/", "../../data/"}) {
    std::ifstream probe(prefix + name);
    if (probe.good()) return prefix + name;
  }
  FAIL("data file not found: " << name);
  return name;
}

}  // namespace

TEST_CASE("sample specs round trip through print and parse") {
  for (const char* name : {"sigma3-hinf.json", "sigma1-halpha.json",
                           "sigma3perp-tkinf.json", "sigma2-h0-coboundary.json"}) {
    std::string text = slurp(data_file(name));
    GroupSpec spec = GroupSpec::parse(text);
    std::string printed = spec.print();
    // The printer is the normal form: parsing its own output is a fixed
    // point byte for byte.
    CHECK(GroupSpec::parse(printed).print() == printed);
    INFO(name);
    CHECK(spec.triple.sigma.dim() >= 1);
  }
}

TEST_CASE("parsed fields land in the triple") {
  GroupSpec spec = GroupSpec::parse(slurp(data_file("sigma1-halpha.json")));
  CHECK(spec.triple.h.tag() == hfam::halpha_s1);
  CHECK(spec.triple.h.param().value == Rational(3));
  GroupSpec cb = GroupSpec::parse(slurp(data_file("sigma2-h0-coboundary.json")));
  CHECK(cb.triple.tau.which() == TauMap::kind::coboundary);
  GroupSpec tk = GroupSpec::parse(slurp(data_file("sigma3perp-tkinf.json")));
  CHECK(tk.triple.sigma.dim() == 2);
}

namespace {

void expect_parse_error(const std::string& text, const std::string& needle) {
  try {
    GroupSpec::parse(text);
    FAIL("expected parse to reject: " << needle);
  } catch (const error& e) {
    INFO(e.what());
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("parse rejects malformed input with field-level messages") {
  expect_parse_error("{", "invalid JSON");
  expect_parse_error("[]", "expected an object");
  expect_parse_error(R"js({"sigma_basis": [], "h_family": {"name": "T^0"}})js", "schema_version");
  expect_parse_error(
      R"js({"schema_version": 2, "sigma_basis": [[[1,0],[0,0]]], "h_family": {"name": "T^0"}})js",
      "schema_version");
  expect_parse_error(
      R"js({"schema_version": 1, "sigma_basis": [[[0,1],[0,0]]], "h_family": {"name": "T^0"}})js",
      "symmetric");
  expect_parse_error(
      R"js({"schema_version": 1, "sigma_basis": [[[1,0],[0,0]]], "h_family": {"name": "H_woops"}})js",
      "H_alpha(sigma1)");
  expect_parse_error(
      R"js({"schema_version": 1, "sigma_basis": [[[1,0],[0,0]]],
            "h_family": {"name": "H_gamma0(sigma3)", "gamma": "inf"}})js",
      "gamma");
  expect_parse_error(
      R"js({"schema_version": 1, "sigma_basis": [[[1,0],[0,0]]],
            "h_family": {"name": "H_gamma0(sigma3)"}})js",
      "required by");
  expect_parse_error(
      R"js({"schema_version": 1, "sigma_basis": [[[1,0],[0,0]]],
            "h_family": {"name": "T^0", "conjugator": [[1,2],[2,4]]}})js",
      "singular");
  expect_parse_error(
      R"js({"schema_version": 1, "sigma_basis": [[[1,0],[0,0]]],
            "h_family": {"name": "T^0"}, "tau": {"kind": "mystery"}})js",
      "tau.kind");
  expect_parse_error(
      R"js({"schema_version": 1, "sigma_basis": [[[1,0],[0,0]]],
            "h_family": {"name": "T^0"}, "tau": {"kind": "coboundary"}})js",
      "tau0");
}

TEST_CASE("rational strings and floats parse to the intended scalars") {
  GroupSpec spec = GroupSpec::parse(R"js({
    "schema_version": 1,
    "sigma_basis": [[["1/2", 0.25], [0.25, "-3"]]],
    "h_family": {"name": "T^0"}
  })js");
  // The span echelonizes its basis, so check membership, exactly.
  CHECK(spec.triple.sigma.dim() == 1);
  CHECK(spec.triple.sigma.contains(
      SymMat2(Scalar(Rational(1, 2)), Scalar(Rational(1, 4)), Scalar(-3)), 0.0));
}

TEST_CASE("subalgebra input format") {
  LieSub sub = parse_liesub(R"js({
    "ambient": "sigma3",
    "generators": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]
  })js");
  CHECK(sub.ambient == 3);
  CHECK(sub.basis.size() == 2);
  CHECK_THROWS_AS(parse_liesub(R"js({"ambient": "sigma9", "generators": []})js"), error);
}
