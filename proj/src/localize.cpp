#include "aqft/localize.hpp"

#include "aqft/errors.hpp"

#include <algorithm>

namespace aqft {

MorphismSet MorphismSet::all(const CategoryPtr& cat) {
  MorphismSet w;
  w.description = "all morphisms of " + cat->name();
  w.contains = [](const Morphism&) { return true; };
  if (cat->enumerated()) w.elements = cat->morphisms();
  return w;
}

MorphismSet MorphismSet::of(const CategoryPtr& cat, std::vector<Morphism> elements) {
  MorphismSet w;
  w.description = std::to_string(elements.size()) + " listed morphisms of " + cat->name();
  auto sorted = std::make_shared<std::vector<Morphism>>(elements);
  std::sort(sorted->begin(), sorted->end());
  w.contains = [sorted](const Morphism& f) { return std::binary_search(sorted->begin(), sorted->end(), f); };
  w.elements = std::move(elements);
  return w;
}

Object ZigZag::target() const {
  Object at = source;
  for (const auto& s : steps) at = s.direction == Direction::Forward ? s.morphism.tgt : s.morphism.src;
  return at;
}

void ZigZag::validate(const MorphismSet& w) const {
  Object at = source;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    const Object& from = s.direction == Direction::Forward ? s.morphism.src : s.morphism.tgt;
    if (!(from == at))
      throw Error(ErrorKind::InvalidArgument, "zig-zag step " + std::to_string(i + 1) + " (" + s.morphism.id +
                                                  ") starts at " + from.id + ", chain is at " + at.id);
    if (s.direction == Direction::Backward && !w.contains(s.morphism))
      throw Error(ErrorKind::BackwardStepNotInW, "backward step " + std::to_string(i + 1) + " (" +
                                                     s.morphism.describe() + ") is not in W");
    at = s.direction == Direction::Forward ? s.morphism.tgt : s.morphism.src;
  }
}

Morphism zigzag_normalize(const ZigZag& z, const Localization& loc) {
  z.validate(loc.w);
  const Category& d = *loc.functor.target;
  Morphism acc = d.identity(loc.functor(z.source));
  for (const auto& s : z.steps) {
    Morphism image = loc.functor(s.morphism);
    if (s.direction == Direction::Backward) {
      auto inv = d.inverse(image);
      if (!inv)
        throw Error(ErrorKind::InvalidArgument,
                    "L(" + s.morphism.id + ") = " + image.id + " is not invertible; the functor does not invert W");
      image = *inv;
    }
    acc = d.compose(image, acc);
  }
  return acc;
}

Morphism zigzag_normalize(const ZigZag& z, const ReflectiveData& data) {
  return zigzag_normalize(z, data.localization());
}

MorphismSet derive_w(const Functor& l) {
  const CategoryPtr target = l.target;
  if (l.source->enumerated()) {
    std::vector<Morphism> w;
    for (const auto& f : l.source->morphisms())
      if (target->inverse(l(f))) w.push_back(f);
    MorphismSet out = MorphismSet::of(l.source, std::move(w));
    out.description = "L^-1(Iso " + target->name() + ")";
    return out;
  }
  MorphismSet out;
  out.description = "L^-1(Iso " + target->name() + ")";
  out.contains = [l, target](const Morphism& f) { return target->inverse(l(f)).has_value(); };
  return out;
}

OrthoRel localized_orthogonality(const Functor& l, const OrthoRel& rel) { return pushforward(l, rel); }

namespace {

Verdict right_adjoint_fully_faithful(const ReflectiveData& data, const SampleConfig& cfg) {
  const Functor& iota = data.adj.right;
  if (iota.source->enumerated() && iota.target->enumerated()) {
    Verdict v = is_fully_faithful(iota);
    v.name = "(b) right adjoint fully faithful";
    return v;
  }
  Verdict v{"(b) right adjoint fully faithful", true, {false, 0}, std::nullopt, {}};
  const Category& d = *iota.source;
  const Category& c = *iota.target;
  Rng rng(cfg.seed ^ 0xffULL);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    ++v.coverage.checked;
    Object a = d.sample_object(rng);
    Object b = d.sample_object(rng);
    // faithful: two parallel morphisms with the same image
    auto g1 = d.sample_morphism_between(a, b, rng);
    auto g2 = d.sample_morphism_between(a, b, rng);
    if (g1 && g2 && !(*g1 == *g2) && iota(*g1) == iota(*g2)) {
      v.passed = false;
      v.witness = "ι(" + g1->id + ") = ι(" + g2->id + ") = " + iota(*g1).id;
      v.detail = "not faithful on hom(" + a.id + ", " + b.id + ")";
      return v;
    }
    // full: h : ιa -> ιb must be ι of ε_b ∘ L(h) ∘ ε_a^{-1}
    auto h = c.sample_morphism_between(iota(a), iota(b), rng);
    if (!h) continue;
    auto ea = data.adj.counit.component(a);
    auto eb = data.adj.counit.component(b);
    if (!ea || !eb) continue;
    auto ea_inv = d.inverse(*ea);
    if (!ea_inv) continue;  // reported by (c)
    Morphism pre = d.compose(*eb, d.compose(data.adj.left(*h), *ea_inv));
    if (!(iota(pre) == *h)) {
      v.passed = false;
      v.witness = h->describe();
      v.detail = "not in the image of ι";
      return v;
    }
  }
  return v;
}

}  // namespace

Certificate certify_reflective(const ReflectiveData& data, const SampleConfig& cfg) {
  const auto& adj = data.adj;
  const Category& c = *data.base.cat;
  const Category& d = *data.localized.cat;
  if (!same_category(adj.left.source, data.base.cat) || !same_category(adj.left.target, data.localized.cat))
    throw Error(ErrorKind::ShapeMismatch, "L does not go from the base to the localized category");

  Certificate cert;
  Report& report = cert.report;

  Report adjunction = check_adjunction(adj, cfg);
  Verdict a{"(a) adjunction", adjunction.passed(), adjunction.coverage(), std::nullopt, {}};
  for (const auto& v : adjunction.verdicts)
    if (!v.passed) {
      a.witness = v.name + ": " + v.witness.value_or("?");
      break;
    }
  report.add(a);

  report.add(right_adjoint_fully_faithful(data, cfg));

  Rng rng(cfg.seed ^ 0xc0ULL);
  Verdict cv{"(c) counit invertible", true, {}, std::nullopt, {}};
  for (const auto& y : objects_to_check(d, rng, cfg, cv.coverage)) {
    auto eps = adj.counit.component(y);
    if (!eps || !d.inverse(*eps)) {
      cv.passed = false;
      cv.witness = y.id;
      break;
    }
  }
  report.add(cv);

  Verdict dv = is_orthogonal_functor(adj.left, data.base.rel, data.localized.rel, cfg);
  dv.name = "(d) L orthogonal";
  report.add(dv);
  Verdict ev = is_orthogonal_functor(adj.right, data.localized.rel, data.base.rel, cfg);
  ev.name = "(e) right adjoint orthogonal";
  report.add(ev);

  Verdict fv{"(f) W = L^-1(Iso)", true, {}, std::nullopt, {}};
  for (const auto& f : morphisms_to_check(c, rng, cfg, fv.coverage)) {
    bool in_w = data.w.contains(f);
    bool iso = d.inverse(adj.left(f)).has_value();
    if (in_w != iso) {
      fv.passed = false;
      fv.witness = f.describe();
      fv.detail = in_w ? "in W but L(f) is not invertible" : "L(f) invertible but f not in W";
      break;
    }
  }
  report.add(fv);

  Verdict gv{"(g) pullback orthogonality contained", true, {}, std::nullopt, {}};
  auto check_pair = [&](const Morphism& g1, const Morphism& g2) {
    if (data.base.rel.contains(adj.right(g1), adj.right(g2)) && !data.localized.rel.contains(g1, g2)) {
      gv.passed = false;
      gv.witness = "(" + g1.id + ", " + g2.id + ")";
    }
  };
  if (d.enumerated()) {
    for (const auto& g1 : d.morphisms())
      for (const auto& g2 : d.morphisms()) {
        if (!(g1.tgt == g2.tgt)) continue;
        ++gv.coverage.checked;
        check_pair(g1, g2);
        if (!gv.passed) break;
      }
  } else if (!data.base.rel.is_empty_relation()) {
    gv.coverage.exhaustive = false;
    for (std::size_t i = 0; i < cfg.samples && gv.passed; ++i) {
      Object n = d.sample_object(rng);
      ++gv.coverage.checked;
      check_pair(d.sample_morphism_into(n, rng), d.sample_morphism_into(n, rng));
    }
  }
  report.add(gv);

  cert.verified = report.passed();
  Coverage cov = report.coverage();
  if (cert.verified)
    cert.status = cov.exhaustive ? "reflective localization verified (exhaustive)"
                                 : "reflective localization verified (sampled, " + std::to_string(cfg.samples) + ")";
  else
    cert.status = "reflective localization NOT verified";
  return cert;
}

}  // namespace aqft
