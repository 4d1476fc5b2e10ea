#include "aqft/aqft.hpp"

#include "aqft/errors.hpp"

#include <algorithm>
#include <set>

namespace aqft {

namespace {

bool same_algebra(const DgAlgebraPtr& a, const DgAlgebraPtr& b) { return a == b || (a && b && *a == *b); }

std::string first_failure(const Report& r) {
  for (const auto& v : r.verdicts)
    if (!v.passed) return v.name + (v.witness ? " at " + *v.witness : std::string());
  return {};
}

}  // namespace

AqftModel model_from_tables(std::string name, OrthoCat base, std::map<std::string, DgAlgebraPtr> algebras,
                            std::map<std::string, DgAlgebraMap> actions) {
  auto cat = as_enumerated(base.cat, "table-backed model");
  for (const auto& x : cat->objects())
    if (!algebras.count(x.id))
      throw Error(ErrorKind::InvalidArgument, "model '" + name + "' has no algebra for object " + x.id);
  for (const auto& f : cat->morphisms()) {
    if (actions.count(f.id)) continue;
    if (f == cat->identity(f.src)) {
      actions.emplace(f.id, identity_map(algebras.at(f.src.id)));
      continue;
    }
    throw Error(ErrorKind::InvalidArgument, "model '" + name + "' has no action for morphism " + f.id);
  }
  auto algs = std::make_shared<const std::map<std::string, DgAlgebraPtr>>(std::move(algebras));
  auto acts = std::make_shared<const std::map<std::string, DgAlgebraMap>>(std::move(actions));
  AqftModel m;
  m.name = std::move(name);
  m.base = std::move(base);
  m.algebra = [algs](const Object& x) {
    auto it = algs->find(x.id);
    if (it == algs->end()) throw Error(ErrorKind::InvalidArgument, "no algebra for object " + x.id);
    return it->second;
  };
  m.action = [acts](const Morphism& f) {
    auto it = acts->find(f.id);
    if (it == acts->end()) throw Error(ErrorKind::InvalidArgument, "no action for morphism " + f.id);
    return it->second;
  };
  return m;
}

namespace {

/// Graded commutator test for one pair; returns a witness on failure.
std::optional<std::string> commutation_failure(const AqftModel& model, const Morphism& f1, const Morphism& f2) {
  DgAlgebraMap a1 = model.action(f1), a2 = model.action(f2);
  const DgAlgebra& target = *a1.target;
  for (const auto& x : a1.source->basis()) {
    GradedVector fx = a1.apply(basis_vector(x));
    for (const auto& y : a2.source->basis()) {
      GradedVector fy = a2.apply(basis_vector(y));
      GradedVector lhs = target.multiply(fx, fy);
      const Rational sign = (x.degree * y.degree) % 2 == 0 ? 1 : -1;
      axpy(lhs, -sign, target.multiply(fy, fx));
      if (!lhs.empty())
        return "(" + f1.id + ", " + f2.id + ") on (" + a1.source->label(x) + ", " + a2.source->label(y) + ")";
    }
  }
  return std::nullopt;
}

}  // namespace

Report check_aqft(const AqftModel& model, const SampleConfig& cfg) {
  Report report;
  const Category& cat = *model.base.cat;
  Rng rng(cfg.seed);

  Verdict alg{"algebras", true, {}, std::nullopt, {}};
  std::set<const DgAlgebra*> seen;
  for (const auto& x : objects_to_check(cat, rng, cfg, alg.coverage)) {
    DgAlgebraPtr a = model.algebra(x);
    if (!seen.insert(a.get()).second) continue;
    Report r = check_dga(*a);
    if (!r.passed()) {
      alg.passed = false;
      alg.witness = x.id + ": " + first_failure(r);
      break;
    }
  }
  report.add(alg);

  std::vector<Morphism> morphisms;
  Coverage morphism_coverage;
  morphisms = morphisms_to_check(cat, rng, cfg, morphism_coverage);

  Verdict ends{"endpoints", true, morphism_coverage, std::nullopt, {}};
  for (const auto& f : morphisms) {
    DgAlgebraMap a = model.action(f);
    if (!same_algebra(a.source, model.algebra(f.src)) || !same_algebra(a.target, model.algebra(f.tgt))) {
      ends.passed = false;
      ends.witness = f.describe();
      break;
    }
  }
  report.add(ends);

  Verdict ids{"identities", true, {}, std::nullopt, {}};
  for (const auto& x : objects_to_check(cat, rng, cfg, ids.coverage)) {
    if (!(model.action(cat.identity(x)).map == ChainMap::identity(model.algebra(x)->complex()))) {
      ids.passed = false;
      ids.witness = x.id;
      break;
    }
  }
  report.add(ids);

  Verdict comp{"composition", true, {}, std::nullopt, {}};
  if (ends.passed) {
    for (const auto& [g, f] : composable_pairs(cat, rng, cfg, comp.coverage)) {
      if (!(model.action(cat.compose(g, f)).map == compose(model.action(g).map, model.action(f).map))) {
        comp.passed = false;
        comp.witness = "(" + g.id + ", " + f.id + ")";
        break;
      }
    }
  } else {
    comp.passed = false;
    comp.detail = "skipped: endpoints do not match";
  }
  report.add(comp);

  Verdict maps{"dg-algebra maps", true, morphism_coverage, std::nullopt, {}};
  for (const auto& f : morphisms) {
    Report r = check_dga_map(model.action(f));
    if (!r.passed()) {
      maps.passed = false;
      maps.witness = f.id + ": " + first_failure(r);
      break;
    }
  }
  report.add(maps);

  Verdict causal{"Einstein causality", true, {}, std::nullopt, {}};
  const OrthoRel& rel = model.base.rel;
  if (rel.is_explicit()) {
    for (const auto& [f1, f2] : rel.ordered_pairs()) {
      ++causal.coverage.checked;
      if (auto w = commutation_failure(model, f1, f2)) {
        causal.passed = false;
        causal.witness = *w;
        break;
      }
    }
  } else if (!rel.is_empty_relation()) {
    causal.coverage.exhaustive = false;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      Object n = cat.sample_object(rng);
      Morphism f1 = cat.sample_morphism_into(n, rng), f2 = cat.sample_morphism_into(n, rng);
      ++causal.coverage.checked;
      if (!rel.contains(f1, f2)) continue;
      if (auto w = commutation_failure(model, f1, f2)) {
        causal.passed = false;
        causal.witness = *w;
        break;
      }
    }
  }
  report.add(causal);
  return report;
}

const char* to_string(TimeSlice t) {
  switch (t) {
    case TimeSlice::Strict:
      return "strict";
    case TimeSlice::HomotopyOnly:
      return "homotopy-only";
    case TimeSlice::Neither:
      return "neither";
  }
  return "?";
}

TimeSliceResult time_slice_verdict(const AqftModel& model, const MorphismSet& w, const SampleConfig& cfg) {
  TimeSliceResult out;
  std::vector<Morphism> candidates;
  if (w.elements) {
    candidates = *w.elements;
    out.coverage.checked = candidates.size();
  } else {
    Rng rng(cfg.seed ^ 0x75ULL);
    for (const auto& f : morphisms_to_check(*model.base.cat, rng, cfg, out.coverage))
      if (w.contains(f)) candidates.push_back(f);
  }
  std::optional<Morphism> first_non_iso;
  std::string non_iso_detail;
  for (const auto& f : candidates) {
    ChainMap m = model.action(f).map;
    QuasiIsoResult iso = is_iso_chainmap(m);
    if (iso) continue;
    QuasiIsoResult qi = is_quasi_iso(m);
    if (!qi) {
      out.kind = TimeSlice::Neither;
      out.witness = f;
      out.detail = f.describe() + ": " + qi.detail;
      return out;
    }
    if (!first_non_iso) {
      first_non_iso = f;
      non_iso_detail = f.describe() + ": " + iso.detail;
    }
  }
  if (first_non_iso) {
    out.kind = TimeSlice::HomotopyOnly;
    out.witness = first_non_iso;
    out.detail = non_iso_detail;
  }
  return out;
}

AqftModel pullback_aqft(const Functor& f, const OrthoRel& src_rel, const AqftModel& model) {
  if (!same_category(f.target, model.base.cat))
    throw Error(ErrorKind::ShapeMismatch, "functor " + f.name + " does not land in the base of " + model.name);
  AqftModel out;
  out.name = f.name + "*(" + model.name + ")";
  out.base = OrthoCat{f.source, src_rel};
  out.algebra = [f, alg = model.algebra](const Object& x) { return alg(f(x)); };
  out.action = [f, act = model.action](const Morphism& m) { return act(f(m)); };
  return out;
}

namespace {

std::optional<ChainMap> inverse_chain_map(const ChainMap& m) {
  if (!is_iso_chainmap(m)) return std::nullopt;
  std::map<int, Matrix> c;
  for (int n : m.support()) c.emplace(n, *inverse(m.component(n)));
  return ChainMap(m.target(), m.source(), std::move(c));
}

}  // namespace

ChainMap zigzag_action(const AqftModel& model, const ZigZag& z, const MorphismSet& w) {
  z.validate(w);
  ChainMap acc = ChainMap::identity(model.algebra(z.source)->complex());
  for (const auto& s : z.steps) {
    ChainMap m = model.action(s.morphism).map;
    if (s.direction == Direction::Backward) {
      auto inv = inverse_chain_map(m);
      if (!inv) throw Error(ErrorKind::TimeSliceViolated, "A(" + s.morphism.id + ") is not invertible");
      m = std::move(*inv);
    }
    acc = compose(m, acc);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Generators of the local weak equivalences

std::string WGenerator::describe() const {
  return "i_!(y(" + f.id + ")[" + std::to_string(r) + "]) : i_!(y(" + f.tgt.id + ")[" + std::to_string(r) +
         "]) -> i_!(y(" + f.src.id + ")[" + std::to_string(r) + "]), weight <= " + std::to_string(max_weight);
}

namespace {

LetterNames hom_names(const Category& cat, const Object& a, const Object& b, int r) {
  LetterNames names;
  auto& list = names[r];
  for (const auto& h : cat.hom(a, b)) list.push_back(h.id);
  return names;
}

/// i_!(y(m)[r]) applied to g : X -> X'.
DgAlgebraMap free_yoneda_action(const Category& cat, const Object& m, const Morphism& g, int r, std::size_t w) {
  return free_extension(shift(yoneda_postcompose(cat, m, g), r), w, hom_names(cat, m, g.src, r),
                        hom_names(cat, m, g.tgt, r));
}

}  // namespace

std::vector<WGenerator> what_generators(const OrthoCat& base, const MorphismSet& w, int r_lo, int r_hi,
                                        std::size_t max_weight) {
  if (!base.rel.is_empty_relation())
    throw Error(ErrorKind::BackendUnsupported,
                "generators are only constructed for empty orthogonality (object-wise free algebras)");
  auto cat = as_enumerated(base.cat, "what_generators");
  if (r_lo > r_hi) throw Error(ErrorKind::InvalidArgument, "empty shift range");
  std::vector<Morphism> list;
  if (w.elements) {
    list = *w.elements;
  } else {
    for (const auto& f : cat->morphisms())
      if (w.contains(f)) list.push_back(f);
  }
  std::vector<WGenerator> out;
  for (const auto& f : list)
    for (int r = r_lo; r <= r_hi; ++r) {
      WGenerator g{f, r, max_weight, {}};
      for (const auto& x : cat->objects()) {
        ChainMap pre = shift(yoneda_precompose(*cat, f, x), r);
        g.components.emplace(x.id, free_extension(pre, max_weight, hom_names(*cat, f.tgt, x, r),
                                                   hom_names(*cat, f.src, x, r)));
      }
      out.push_back(std::move(g));
    }
  return out;
}

Report check_generator(const Category& cat, const WGenerator& g) {
  Report report;
  Verdict maps{"dg-algebra maps", true, {}, std::nullopt, {}};
  for (const auto& [x, comp] : g.components) {
    ++maps.coverage.checked;
    Report r = check_dga(*comp.source);
    r.append(check_dga(*comp.target));
    r.append(check_dga_map(comp));
    if (!r.passed()) {
      maps.passed = false;
      maps.witness = x + ": " + first_failure(r);
      break;
    }
  }
  report.add(maps);

  Verdict nat{"naturality", true, {}, std::nullopt, {}};
  for (const auto& h : cat.morphisms()) {
    ++nat.coverage.checked;
    DgAlgebraMap fn = free_yoneda_action(cat, g.f.tgt, h, g.r, g.max_weight);
    DgAlgebraMap fm = free_yoneda_action(cat, g.f.src, h, g.r, g.max_weight);
    const ChainMap& at_src = g.components.at(h.src.id).map;
    const ChainMap& at_tgt = g.components.at(h.tgt.id).map;
    if (!(compose(at_tgt, fn.map) == compose(fm.map, at_src))) {
      nat.passed = false;
      nat.witness = h.describe();
      break;
    }
  }
  report.add(nat);
  return report;
}

namespace {

std::vector<std::size_t> weight_block(const DgAlgebra& a, int degree, std::size_t k) {
  std::vector<std::size_t> out;
  auto it = a.weights.find(degree);
  if (it == a.weights.end()) return out;
  for (std::size_t i = 0; i < it->second.size(); ++i)
    if (it->second[i] == k) out.push_back(i);
  return out;
}

}  // namespace

Verdict shift_consistency(const WGenerator& lower, const WGenerator& upper) {
  Verdict v{"r-shift consistency", true, {}, std::nullopt, {}};
  if (!(lower.f == upper.f) || upper.r != lower.r + 1 || lower.max_weight != upper.max_weight ||
      lower.components.size() != upper.components.size()) {
    v.passed = false;
    v.witness = "generators are not consecutive shifts of the same morphism";
    return v;
  }
  for (const auto& [x, a] : lower.components) {
    const DgAlgebraMap& b = upper.components.at(x);
    for (std::size_t k = 0; k <= lower.max_weight; ++k) {
      ++v.coverage.checked;
      const int da = lower.r * static_cast<int>(k), db = upper.r * static_cast<int>(k);
      auto ca = weight_block(*a.source, da, k), cb = weight_block(*b.source, db, k);
      auto ra = weight_block(*a.target, da, k), rb = weight_block(*b.target, db, k);
      bool ok = ca.size() == cb.size() && ra.size() == rb.size();
      if (ok) {
        Matrix ma = a.map.component(da), mb = b.map.component(db);
        for (std::size_t i = 0; ok && i < ra.size(); ++i)
          for (std::size_t j = 0; ok && j < ca.size(); ++j) ok = ma.at(ra[i], ca[j]) == mb.at(rb[i], cb[j]);
        // nothing of weight k may leak into other weights
        const Matrix cols = ma.transpose();
        for (std::size_t j = 0; ok && j < ca.size(); ++j)
          for (const auto& [row, val] : cols.row(ca[j]))
            ok = a.target->weights.at(da)[row] == k;
      }
      if (!ok) {
        v.passed = false;
        v.witness = x + ", weight " + std::to_string(k);
        return v;
      }
    }
  }
  return v;
}

}  // namespace aqft
