#include <gtest/gtest.h>

#include "ellipt/errors.hpp"
#include "ellipt/model_io.hpp"
#include "ellipt/suite.hpp"
#include "json.hpp"

using namespace ellipt;
using nlohmann::json;

namespace {

GaussRat g(long a, long b, long c, long d) { return GaussRat(mpq_class(a, b), mpq_class(c, d)); }

// A minimal even model of dimension 4 over one generator t:
// TM roots {t, -t}, W = {t, -t}, functional <t^2, M> = 1.
json tiny() {
  return json::parse(R"({
    "meta": {"dimension": 4, "flags": []},
    "generators": ["t"],
    "bundles": {"tm": [[1], [-1]], "w": [[1], [-1]]},
    "functional": [{"monomial": [2], "value": 1}]
  })");
}

}  // namespace

TEST(ModelIo, GaussianRationals) {
  EXPECT_EQ(parse_gauss("1/2"), g(1, 2, 0, 1));
  EXPECT_EQ(parse_gauss("-i"), g(0, 1, -1, 1));
  EXPECT_EQ(parse_gauss("i"), g(0, 1, 1, 1));
  EXPECT_EQ(parse_gauss("3+4i"), g(3, 1, 4, 1));
  EXPECT_EQ(parse_gauss("-1/2-3/4i"), g(-1, 2, -3, 4));
  EXPECT_EQ(parse_gauss(" 2/4 "), g(1, 2, 0, 1));
  EXPECT_EQ(parse_gauss("5/3i"), g(0, 1, 5, 3));
  for (const char* bad : {"", "x", "1/0", "1+", "i2", "1.5", "--1"}) EXPECT_THROW(parse_gauss(bad), ParseError) << bad;
  for (const GaussRat& x : {g(1, 2, 0, 1), g(0, 1, -1, 1), g(-7, 3, 2, 5), g(0, 1, 0, 1), g(4, 1, -1, 1)})
    EXPECT_EQ(parse_gauss(format_gauss(x)), x) << format_gauss(x);
}

TEST(ModelIo, TinyModelParses) {
  const ManifoldModel m = parse_model_json(tiny().dump());
  EXPECT_EQ(m.dimension, 4);
  EXPECT_EQ(m.w->positive.size() + m.w->negative.size(), 2u);
  EXPECT_TRUE(same_model(parse_model_json(serialize_model(m)), m));
  // Canonical form is a fixed point.
  EXPECT_EQ(serialize_model(parse_model_json(serialize_model(m))), serialize_model(m));
  // Generators may be given as a count.
  json j = tiny();
  j["generators"] = 1;
  EXPECT_NO_THROW(parse_model_json(j.dump()));
}

TEST(ModelIo, SuitesRoundTrip) {
  for (const auto* suite : {&theorem_suite(), &paired_suite()})
    for (const auto& s : *suite) {
      const std::string text = serialize_model(s.model);
      const ManifoldModel back = parse_model_json(text);
      EXPECT_TRUE(same_model(back, s.model)) << s.name;
      EXPECT_EQ(serialize_model(back), text) << s.name;
    }
}

TEST(ModelIo, SameModelSeesDifferences) {
  const ManifoldModel a = parse_model_json(tiny().dump());
  json j = tiny();
  j["functional"][0]["value"] = 2;
  EXPECT_FALSE(same_model(a, parse_model_json(j.dump())));
  j = tiny();
  j["functional"][0]["pi"] = 2;
  EXPECT_FALSE(same_model(a, parse_model_json(j.dump())));
}

TEST(ModelIo, Errors) {
  EXPECT_THROW(parse_model_json("{"), ParseError);
  EXPECT_THROW(parse_model_json("[]"), ParseError);
  auto expect = [](json j, auto tag) {
    using E = decltype(tag);
    EXPECT_THROW(parse_model_json(j.dump()), E) << j.dump();
  };
  json j = tiny();
  j["bundles"].erase("w");
  expect(j, MissingBundle("w"));
  j = tiny();
  j["bundles"]["w"] = json::array({{1, 0}});  // root has the wrong length
  expect(j, ParseError("w"));
  j = tiny();
  j["functional"][0]["monomial"] = {1};  // not a top-degree monomial
  expect(j, ParseError("f"));
  j = tiny();
  j["functional"][0]["monomial"] = {3};  // beyond the top degree
  expect(j, ParseError("f"));
  j = tiny();
  j["functional"][0]["value"] = "1/0";
  expect(j, ParseError("f"));
  j = tiny();
  j["functional"][0]["pi"] = -1;
  expect(j, ParseError("f"));
  j = tiny();
  j["meta"].erase("dimension");
  expect(j, ParseError("m"));
  j = tiny();
  j["bundles"]["tm"] = 7;
  expect(j, ParseError("t"));
  // Well-formed JSON, structurally invalid models: an even model of
  // dimension 4 needs two T^{1,0} roots and carries no transgression data.
  j = tiny();
  j["bundles"]["tm"] = json::array({{1}, {-1}, {0}});
  expect(j, InvalidModel("v"));
  j = tiny();
  j["bundles"]["e"] = json::parse(R"({"rank": 8})");
  expect(j, InvalidModel("v"));
}
