#include "aqft/corpus.hpp"
#include "aqft/errors.hpp"
#include "aqft/serialize.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace aqft;

namespace {

std::string schema_error(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) return e.what();
    return std::string("wrong kind: ") + e.what();
  }
  return "no error";
}

}  // namespace

class BundleRoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(BundleRoundTrip, WriteReadWrite) {
  auto entry = corpus_entry(GetParam());
  const Json once = write_bundle(entry.bundle);
  EXPECT_EQ(once.at("schema"), kSchema);
  const std::string text = once.dump(2);
  Bundle back = read_bundle(parse_json(text));
  EXPECT_EQ(write_bundle(back).dump(2), text);
}

TEST_P(BundleRoundTrip, OutcomesSurviveRoundTrip) {
  auto entry = corpus_entry(GetParam());
  CorpusEntry reread{read_bundle(parse_json(write_bundle(entry.bundle).dump())), entry.description, entry.expected};
  for (const auto& [op, expected] : entry.expected) {
    if (op.rfind("bar/", 0) == 0) continue;  // covered by the corpus suite, slow
    EXPECT_EQ(corpus_outcome(reread, op), expected) << op;
  }
}

INSTANTIATE_TEST_SUITE_P(All, BundleRoundTrip, ::testing::ValuesIn(corpus_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& c : s)
                             if (c == '-') c = '_';
                           return s;
                         });

TEST(Serialize, ComplexFormat) {
  auto doc = parse_json(R"({"degrees": {"0": 2, "1": 1}, "d": {"1": [["1"], ["-1"]]}})");
  auto x = read_complex(doc);
  EXPECT_EQ(x.dim(0), 2u);
  EXPECT_EQ(x.dim(1), 1u);
  EXPECT_EQ(x.differential(1).at(1, 0), Rational(-1));
  EXPECT_EQ(read_complex(write_complex(x)), x);
}

TEST(Serialize, RandomComplexesRoundTrip) {
  Rng rng(51);
  for (int t = 0; t < 50; ++t) {
    auto x = oracle::random_complex(rng).complex;
    EXPECT_EQ(read_complex(parse_json(write_complex(x).dump())), x);
  }
}

TEST(Serialize, AlgebraRoundTrip) {
  for (const auto& a : {dual_numbers(), acyclic_extension(), dual_acyclic_extension(), matrix_algebra()}) {
    auto back = read_algebra(parse_json(write_algebra(*a).dump()));
    EXPECT_EQ(*back, *a);
  }
}

TEST(Serialize, RationalsAsStringsOrIntegers) {
  auto m = read_matrix(parse_json(R"([["1/2", 3], ["-4/6", "0"]])"), 2, 2);
  EXPECT_EQ(m.at(0, 0), Rational(1, 2));
  EXPECT_EQ(m.at(0, 1), Rational(3));
  EXPECT_EQ(m.at(1, 0), Rational(-2, 3));
}

TEST(Serialize, SyntaxErrorHasLineAndColumn) {
  auto msg = schema_error([] { parse_json("{\n  \"a\": ,\n}", "in.json"); });
  EXPECT_NE(msg.find("in.json:2:"), std::string::npos) << msg;
}

TEST(Serialize, SchemaErrorsCarryPaths) {
  EXPECT_NE(schema_error([] { read_bundle(parse_json(R"({"schema": "other/9"})")); }).find("schema"),
            std::string::npos);
  auto doc = write_bundle(corpus_entry("toy-homotopy").bundle);
  doc["models"][0]["actions"]["f"]["0"] = Json::array({Json::array({"x"})});
  auto msg = schema_error([&] { read_bundle(doc); });
  EXPECT_NE(msg.find("$.models[0].actions.f"), std::string::npos) << msg;

  auto cat_doc = write_bundle(corpus_entry("cospan").bundle);
  cat_doc["category"]["morphisms"][0]["tgt"] = "nowhere";
  msg = schema_error([&] { read_bundle(cat_doc); });
  EXPECT_NE(msg.find("$.category"), std::string::npos) << msg;

  EXPECT_NE(schema_error([] { read_matrix(parse_json("[[1, 2]]"), 2, 2, "$.m"); }).find("$.m"), std::string::npos);
}

TEST(Serialize, ReportShape) {
  Report r;
  r.add(Verdict{"a", true, {}, std::nullopt, {}});
  r.add(Verdict{"b", false, Coverage{false, 12}, std::string("(x, y)"), "detail"});
  auto j = write_report(r);
  EXPECT_EQ(j.at("passed"), false);
  EXPECT_EQ(j.at("verdicts").size(), 2u);
  EXPECT_EQ(j.at("verdicts")[1].at("coverage"), "sampled, 12");
  EXPECT_EQ(j.at("verdicts")[1].at("witness"), "(x, y)");
  auto text = render_text(j);
  EXPECT_NE(text.find("FAIL b"), std::string::npos) << text;
}
