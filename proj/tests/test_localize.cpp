#include "aqft/corpus.hpp"
#include "aqft/errors.hpp"
#include "aqft/localize.hpp"
#include "aqft/parametric.hpp"
#include "aqft/strictify.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace aqft;

namespace {

ZigZagStep fwd(const Category& c, const char* id) { return {c.parse_morphism(id), Direction::Forward}; }
ZigZagStep bwd(const Category& c, const char* id) { return {c.parse_morphism(id), Direction::Backward}; }

}  // namespace

TEST(Localize, Loc1Verified) {
  auto b = corpus_entry("loc1").bundle;
  auto cert = certify_reflective(*b.reflective, SampleConfig{128, 21});
  EXPECT_TRUE(cert.verified);
  EXPECT_TRUE(cert.report.passed());
  EXPECT_EQ(cert.status.rfind("reflective localization verified (sampled", 0), 0u) << cert.status;
}

TEST(Localize, DiskFailsOnlyAtInclusionOrthogonality) {
  auto b = corpus_entry("disk").bundle;
  auto cert = certify_reflective(*b.reflective);
  EXPECT_FALSE(cert.verified);
  for (const auto& v : cert.report.verdicts) {
    if (v.name == "(e) right adjoint orthogonal") {
      EXPECT_FALSE(v.passed);
      ASSERT_TRUE(v.witness);
      EXPECT_EQ(*v.witness, "(id_*, id_*)");
    } else {
      EXPECT_TRUE(v.passed) << v.name;
    }
  }
  EXPECT_TRUE(check_adjunction(b.reflective->adj).passed());
}

TEST(Localize, DiskInHigherDimension) {
  auto b = build_disk(2, 1).bundle;
  auto cert = certify_reflective(*b.reflective);
  EXPECT_FALSE(cert.report.at("(e) right adjoint orthogonal").passed);
  EXPECT_TRUE(cert.report.at("(a) adjunction").passed);
  EXPECT_EQ(b.base.cat->objects().size(), 5u);
}

TEST(Localize, RceCandidateNotFullyFaithful) {
  auto b = corpus_entry("rce").bundle;
  auto cert = certify_reflective(*b.reflective);
  EXPECT_FALSE(cert.verified);
  EXPECT_FALSE(cert.report.at("(b) right adjoint fully faithful").passed);
  EXPECT_TRUE(cert.report.at("(c) counit invertible").passed);
  // the unit has no component M -> M_h, so the adjunction itself fails too
  EXPECT_FALSE(cert.report.at("(a) adjunction").passed);
}

TEST(Localize, DeriveW) {
  auto uv = EnumeratedCategory::Builder("UV").object("U").object("V").morphism("f", "U", "V").build();
  auto w_id = derive_w(identity_functor(uv));
  ASSERT_TRUE(w_id.elements);
  EXPECT_EQ(w_id.elements->size(), 2u);  // identities only
  EXPECT_FALSE(w_id.contains(uv->parse_morphism("f")));

  auto rce = corpus_entry("rce").bundle;
  auto w = derive_w(rce.localization->functor);
  ASSERT_TRUE(w.elements);
  EXPECT_EQ(w.elements->size(), 8u);

  auto loc1 = corpus_entry("loc1").bundle;
  auto wl = derive_w(loc1.reflective->adj.left);
  Rng rng(4);
  for (int k = 0; k < 64; ++k) EXPECT_TRUE(wl.contains(loc1.base.cat->sample_morphism(rng)));
}

TEST(Localize, DeriveWClosedUnderIsomorphisms) {
  Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    auto cat = oracle::some_category(rng);
    auto sub = oracle::random_full_subcategory(cat, rng);
    auto w = derive_w(oracle::collapse_functor(cat));
    EXPECT_EQ(w.elements->size(), cat->morphisms().size());
    // identity functor on a subcategory: W = isomorphisms, closed under composition with them
    auto wi = derive_w(identity_functor(sub.sub));
    const auto& c = *sub.sub;
    for (std::size_t f = 0; f < c.morphisms().size(); ++f) {
      EXPECT_EQ(wi.contains(c.morphism(f)), is_isomorphism(c, c.morphism(f)).is_iso);
      if (c.is_identity(f)) EXPECT_TRUE(wi.contains(c.morphism(f)));
    }
  }
}

TEST(Localize, LocalizedOrthogonality) {
  auto rce = corpus_entry("rce").bundle;
  EXPECT_TRUE(localized_orthogonality(rce.localization->functor, rce.base.rel).is_empty_relation());
  auto disk = corpus_entry("disk").bundle;
  auto pushed = localized_orthogonality(disk.reflective->adj.left, disk.base.rel);
  EXPECT_EQ(pushed.pairs(), (std::set<OrthoRel::Pair>{{0, 0}}));

  // cospan pushed along the quotient identifying M1 and M2
  auto cospan = corpus_entry("cospan").bundle;
  auto src = as_enumerated(cospan.base.cat, "test");
  auto quotient = EnumeratedCategory::Builder("quotient").object("M").object("N").morphism("f", "M", "N").build();
  auto q = functor_from_tables("q", src, quotient, {{"M1", "M"}, {"M2", "M"}, {"N", "N"}},
                               {{"f1", "f"}, {"f2", "f"}});
  auto rel = localized_orthogonality(q, cospan.base.rel);
  auto f = quotient->morphism_index("f");
  EXPECT_EQ(oracle::ordered(rel), oracle::saturate(*quotient, {{f, f}}));
}

TEST(Localize, ZigZagExamples) {
  auto b = corpus_entry("rce").bundle;
  const auto& c = *b.base.cat;
  const auto& loc = *b.localization;
  ZigZag empty{c.parse_object("M"), {}};
  EXPECT_EQ(zigzag_normalize(empty, loc), bz_element(0));
  EXPECT_EQ(zigzag_normalize(rce_loop(c), loc), bz_element(1));
  ZigZag forward{c.parse_object("M_-"), {fwd(c, "i_-")}};
  EXPECT_EQ(zigzag_normalize(forward, loc), loc.functor(c.parse_morphism("i_-")));
}

TEST(Localize, BackwardStepOutsideW) {
  auto uv = EnumeratedCategory::Builder("UV").object("U").object("V").morphism("f", "U", "V").build();
  auto w = MorphismSet::of(uv, {});
  ZigZag z{uv->parse_object("V"), {bwd(*uv, "f")}};
  try {
    z.validate(w);
    FAIL() << "expected BackwardStepNotInW";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BackwardStepNotInW);
  }
}

TEST(Localize, ZigZagMovesInvariant) {
  auto b = corpus_entry("rce").bundle;
  const auto& c = *b.base.cat;
  const auto& loc = *b.localization;
  const auto& mors = c.morphisms();
  Rng rng(17);
  // random walks on the underlying graph of the RCE category
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<std::size_t> pick_obj(0, c.objects().size() - 1);
    ZigZag z{c.objects()[pick_obj(rng)], {}};
    std::uniform_int_distribution<int> len(0, 6);
    const int steps = len(rng);
    for (int s = 0; s < steps; ++s) {
      std::vector<ZigZagStep> options;
      for (const auto& m : mors) {
        if (m.src == z.target()) options.push_back({m, Direction::Forward});
        if (m.tgt == z.target()) options.push_back({m, Direction::Backward});
      }
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      z.steps.push_back(options[pick(rng)]);
    }
    const auto value = zigzag_normalize(z, loc);
    // insert (w, w^-1) or (w^-1, w) at a random position
    std::uniform_int_distribution<std::size_t> pos(0, z.steps.size());
    const std::size_t p = pos(rng);
    ZigZag prefix{z.source, {z.steps.begin(), z.steps.begin() + static_cast<std::ptrdiff_t>(p)}};
    const Object at = prefix.target();
    for (const auto& m : mors) {
      ZigZag inserted = z;
      if (m.src == at) {
        inserted.steps.insert(inserted.steps.begin() + static_cast<std::ptrdiff_t>(p),
                              {{m, Direction::Forward}, {m, Direction::Backward}});
        EXPECT_EQ(zigzag_normalize(inserted, loc), value);
      }
      inserted = z;
      if (m.tgt == at) {
        inserted.steps.insert(inserted.steps.begin() + static_cast<std::ptrdiff_t>(p),
                              {{m, Direction::Backward}, {m, Direction::Forward}});
        EXPECT_EQ(zigzag_normalize(inserted, loc), value);
      }
    }
    // split a forward step into (step, identity)
    for (std::size_t k = 0; k < z.steps.size(); ++k) {
      if (z.steps[k].direction != Direction::Forward) continue;
      ZigZag split = z;
      const auto& f = z.steps[k].morphism;
      split.steps.insert(split.steps.begin() + static_cast<std::ptrdiff_t>(k + 1),
                         {c.identity(f.tgt), Direction::Forward});
      EXPECT_EQ(zigzag_normalize(split, loc), value);
    }
  }
}

TEST(Localize, ZigZagCompositeMove) {
  // in a chain A -> B -> C the two forward steps equal their composite
  auto cat = EnumeratedCategory::Builder("chain")
                 .object("A")
                 .object("B")
                 .object("C")
                 .morphism("a", "A", "B")
                 .morphism("b", "B", "C")
                 .morphism("ba", "A", "C")
                 .composite("b", "a", "ba")
                 .build();
  auto l = oracle::collapse_functor(cat);
  Localization loc{l, derive_w(l)};
  ZigZag two{cat->parse_object("A"), {fwd(*cat, "a"), fwd(*cat, "b")}};
  ZigZag one{cat->parse_object("A"), {fwd(*cat, "ba")}};
  EXPECT_EQ(zigzag_normalize(two, loc), zigzag_normalize(one, loc));
}

TEST(Localize, CertifiedDataInvertsWAndUnitsInW) {
  for (const std::string name : {"loc1", "toy-strict", "toy-homotopy"}) {
    auto b = corpus_entry(name).bundle;
    const auto& data = *b.reflective;
    ASSERT_TRUE(certify_reflective(data, SampleConfig{64, 2}).verified) << name;
    Rng rng(2);
    Coverage cov;
    for (const auto& w : morphisms_to_check(*data.base.cat, rng, SampleConfig{64, 2}, cov)) {
      if (!data.w.contains(w)) continue;
      EXPECT_TRUE(is_isomorphism(*data.localized.cat, data.adj.left(w)).is_iso) << name << " " << w.id;
    }
    for (const auto& x : objects_to_check(*data.base.cat, rng, SampleConfig{64, 2}, cov)) {
      auto eta = data.adj.unit.component(x);
      ASSERT_TRUE(eta);
      EXPECT_TRUE(data.w.contains(*eta)) << name << " " << x.id;
    }
  }
}
