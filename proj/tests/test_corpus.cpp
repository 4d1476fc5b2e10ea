#include "aqft/corpus.hpp"
#include "aqft/errors.hpp"
#include "aqft/localize.hpp"
#include "aqft/parametric.hpp"

#include <gtest/gtest.h>

using namespace aqft;

class CorpusEntryTest : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusEntryTest, ReproducesExpectedOutcomes) {
  auto entry = corpus_entry(GetParam());
  EXPECT_FALSE(entry.expected.empty());
  for (const auto& [op, expected] : entry.expected) EXPECT_EQ(corpus_outcome(entry, op), expected) << op;
}

TEST_P(CorpusEntryTest, ModelsLiveOnTheBase) {
  auto b = corpus_entry(GetParam()).bundle;
  EXPECT_EQ(b.name, GetParam());
  for (const auto& m : b.models) EXPECT_TRUE(same_category(m.base.cat, b.base.cat)) << m.name;
}

INSTANTIATE_TEST_SUITE_P(All, CorpusEntryTest, ::testing::ValuesIn(corpus_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& c : s)
                             if (c == '-') c = '_';
                           return s;
                         });

TEST(Corpus, RceShape) {
  auto b = corpus_entry("rce").bundle;
  EXPECT_EQ(b.base.cat->morphisms().size(), 8u);
  const auto& l = b.localization->functor;
  EXPECT_EQ(l(b.base.cat->parse_morphism("i_-")), bz_element(1));
  EXPECT_EQ(l(b.base.cat->parse_morphism("i_+")), bz_element(0));
  EXPECT_EQ(l(b.base.cat->parse_morphism("j_+")), bz_element(0));
  EXPECT_EQ(l(b.base.cat->parse_morphism("j_-")), bz_element(0));
  auto w = derive_w(l);
  EXPECT_EQ(w.elements->size(), 8u);
  // no nonidentity composites
  auto cat = as_enumerated(b.base.cat, "test");
  for (std::size_t g = 0; g < 8; ++g)
    for (std::size_t f = 0; f < 8; ++f)
      if (!cat->is_identity(f) && !cat->is_identity(g)) EXPECT_FALSE(cat->compose_index(g, f));
}

TEST(Corpus, DiskSizes) {
  auto b = build_disk(1, 2).bundle;
  EXPECT_EQ(b.base.cat->objects().size(), 7u);
  // 7 identities, 6 one-step and 4 two-step inclusions
  EXPECT_EQ(b.base.cat->morphisms().size(), 17u);
  EXPECT_THROW(build_disk(0, 1), Error);
  EXPECT_THROW(build_disk(1, 0), Error);
}

TEST(Corpus, UnknownEntry) { EXPECT_THROW(corpus_entry("nope"), Error); }

TEST(Corpus, UnknownOperation) {
  auto e = corpus_entry("rce");
  EXPECT_THROW(corpus_outcome(e, "frobnicate"), Error);
}

TEST(Corpus, MatrixString) {
  EXPECT_EQ(matrix_string(Matrix::from_rows({{1, 0}, {0, Rational(1, 2)}}, 2)), "[[1,0],[0,1/2]]");
}
