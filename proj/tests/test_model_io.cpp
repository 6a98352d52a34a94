#include "doctest.h"

#include "corpus.hpp"
#include "fixtures.hpp"
#include "kg2/errors.hpp"
#include "kg2/model_io.hpp"

using namespace kg2;

namespace {

Json doc(const char* text) { return Json::parse(text); }

}  // namespace

TEST_CASE("model documents round-trip bit-exactly") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    Model m = kg2::testing::random_model(rng, {.max_worlds = 4});
    Json j = model_to_json(m);
    Model back = model_from_json(j);
    CHECK(back == m);
    CHECK(model_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("file fixture matches the hand-built model") {
  Model m = read_model_file(std::string(KG2_TEST_DATA) + "/four_worlds.json");
  CHECK(m == kg2::testing::four_world_model());
}

TEST_CASE("output layout") {
  Model m = kg2::testing::half_edge_model();
  CHECK(model_to_json(m).dump() ==
        R"({"worlds":["w","v"],"rplus":[["w","v","1/2"]],"rminus":[["w","v","1/2"]],"v1":{"p":{"v":"1"}},"v2":{"p":{"v":"2/3"}}})");
  Json f = frame_to_json(m);
  CHECK_FALSE(f.contains("v1"));
  CHECK(frame_from_json(f) == m.frame());
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(model_from_json(doc(R"([])")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"rplus": []})")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"worlds": ["a", "a"]})")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"worlds": ["a"], "rplus": [["a", "b", "1"]]})")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"worlds": ["a"], "rplus": [["a", "a", "3/2"]]})")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"worlds": ["a"], "rplus": [["a", "a", "1"], ["a", "a", "1"]]})")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"worlds": ["a"], "v1": {"p": {"b": "1"}}})")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"worlds": ["a"], "v1": {"P": {"a": "1"}}})")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"worlds": ["a"], "v1": {"p": {"a": 1}}})")), FormatError);
  CHECK_THROWS_AS(model_from_json(doc(R"({"worlds": ["a"], "colour": "red"})")), FormatError);
  CHECK_THROWS_AS(frame_from_json(doc(R"({"worlds": ["a"], "v1": {}})")), FormatError);
  CHECK_THROWS_AS(read_model_file(std::string(KG2_TEST_DATA) + "/bad_value.json"), FormatError);
  CHECK_THROWS_AS(read_model_file(std::string(KG2_TEST_DATA) + "/missing.json"), FormatError);
}

TEST_CASE("countermodel fields are accepted") {
  Model m = model_from_json(doc(R"({"worlds": ["w0"], "v1": {"p": {"w0": "2/4"}}, "world": "w0", "side": 1})"));
  CHECK(m.get_val(1, "p", "w0") == Rational(1) / 2);
}

TEST_CASE("dot rendering") {
  std::string dot = model_to_dot(kg2::testing::half_edge_model(), std::string("w"));
  CHECK(dot.find("\"w\" [label=\"w\", peripheries=2]") != std::string::npos);
  CHECK(dot.find("[label=\"+:1/2\"]") != std::string::npos);
  CHECK(dot.find("[label=\"-:1/2\"]") != std::string::npos);
  CHECK(dot.find("p=(1, 2/3)") != std::string::npos);
}
