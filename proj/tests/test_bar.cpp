#include "aqft/bar.hpp"
#include "aqft/corpus.hpp"
#include "aqft/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace aqft;

namespace {

// dense homology dimensions of tot and of the target agree in the trusted window
void expect_window_homology(const TotComponent& c) {
  auto ht = oracle::dense_homology(c.tot);
  auto ha = oracle::dense_homology(c.augmentation.target());
  for (int n = c.trusted_lo; n <= c.trusted_hi; ++n) EXPECT_EQ(ht[n], ha[n]) << c.object << " degree " << n;
}

}  // namespace

TEST(Bar, GroundFieldDepthOne) {
  auto b = corpus_entry("ground-field").bundle;
  auto res = bar_truncated(b.models[0], 1, 2);
  EXPECT_TRUE(check_simplicial(res).passed());
  auto tot = tot_normalized(res, 0, 0);
  EXPECT_TRUE(tot.quasi_iso());
  for (const auto& c : tot.components) {
    EXPECT_EQ(homology(c.tot)[0], 1u);
    expect_window_homology(c);
  }
}

TEST(Bar, TrustedWindowAtDepthThree) {
  for (const std::string name : {"ground-field", "free"}) {
    auto b = corpus_entry(name).bundle;
    auto res = bar_truncated(b.models[0], 3, 3);
    auto report = check_simplicial(res);
    EXPECT_TRUE(report.passed()) << name;
    const int top = res.objects.front().second->trusted_top();
    EXPECT_EQ(top, 2);
    auto tot = tot_normalized(res, 0, top);
    EXPECT_TRUE(tot.quasi_iso()) << name;
    for (const auto& c : tot.components) expect_window_homology(c);
  }
}

TEST(Bar, WindowAboveTruncation) {
  auto b = corpus_entry("ground-field").bundle;
  auto res = bar_truncated(b.models[0], 1, 1);
  try {
    tot_normalized(res, 5, 6);
    FAIL() << "expected WindowExceedsTruncation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowExceedsTruncation);
  }
  EXPECT_THROW(tot_normalized(res, 1, 0), Error);
}

TEST(Bar, RejectsBadInput) {
  auto b = corpus_entry("ground-field").bundle;
  try {
    bar_truncated(b.models[0], 0, 2);
    FAIL() << "expected TruncationTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationTooSmall);
  }
  auto causal = corpus_entry("toy-causality").bundle;
  try {
    bar_truncated(causal.models[0], 1, 1);
    FAIL() << "expected BackendUnsupported";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BackendUnsupported);
  }
}

TEST(Bar, LevelDimensions) {
  // ground field: X_0 = T(Q) truncated at weight 2 has words of length 0, 1, 2 on one letter
  BarObject x(ground_field(), 1, 2);
  EXPECT_EQ(x.level_dims(0).at(0), 3u);
  EXPECT_EQ(x.lowest_degree(), 0);
  EXPECT_EQ(x.trusted_top(), 0);
  EXPECT_TRUE(x.check().passed());
}

TEST(Bar, DualNumbersSimplicial) {
  BarObject x(dual_numbers(), 2, 2);
  auto r = x.check();
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.at("faces multiplicative").passed);
  EXPECT_TRUE(r.at("extra degeneracy").passed);
}
