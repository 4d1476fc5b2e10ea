#include "aqft/ortho.hpp"

#include "aqft/errors.hpp"

#include <deque>

namespace aqft {
namespace {

OrthoRel::Pair ordered(std::size_t a, std::size_t b) { return a <= b ? OrthoRel::Pair{a, b} : OrthoRel::Pair{b, a}; }

std::string pair_string(const Morphism& a, const Morphism& b) { return "(" + a.id + ", " + b.id + ")"; }

}  // namespace

OrthoRel OrthoRel::empty(CategoryPtr carrier) {
  OrthoRel r;
  r.carrier_ = std::move(carrier);
  if (r.carrier_->enumerated()) {
    r.explicit_ = true;
  } else {
    r.explicit_ = false;
    r.name_ = "empty";
    r.predicate_ = [](const Morphism&, const Morphism&) { return false; };
  }
  return r;
}

OrthoRel OrthoRel::from_pairs(EnumeratedPtr carrier, const std::set<Pair>& pairs) {
  OrthoRel r;
  for (const auto& [a, b] : pairs) {
    if (carrier->target_index(a) != carrier->target_index(b))
      throw Error(ErrorKind::BadSeedPair,
                  pair_string(carrier->morphism(a), carrier->morphism(b)) + " has no common target");
    r.pairs_.insert(ordered(a, b));
  }
  r.carrier_ = std::move(carrier);
  return r;
}

OrthoRel OrthoRel::from_predicate(CategoryPtr carrier, std::string name,
                                  std::function<bool(const Morphism&, const Morphism&)> pred) {
  if (auto e = std::dynamic_pointer_cast<const EnumeratedCategory>(carrier)) {
    std::set<Pair> pairs;
    const auto& mor = e->morphisms();
    for (std::size_t a = 0; a < mor.size(); ++a)
      for (std::size_t b = a; b < mor.size(); ++b)
        if (mor[a].tgt == mor[b].tgt && pred(mor[a], mor[b])) pairs.insert({a, b});
    OrthoRel r = from_pairs(e, pairs);
    r.name_ = std::move(name);
    return r;
  }
  OrthoRel r;
  r.carrier_ = std::move(carrier);
  r.explicit_ = false;
  r.name_ = std::move(name);
  r.predicate_ = std::move(pred);
  return r;
}

bool OrthoRel::is_empty_relation() const { return explicit_ ? pairs_.empty() : name_ == "empty"; }

bool OrthoRel::contains(const Morphism& f1, const Morphism& f2) const {
  if (!(f1.tgt == f2.tgt)) return false;
  if (!explicit_) return predicate_(f1, f2);
  const auto& e = static_cast<const EnumeratedCategory&>(*carrier_);
  return contains_indices(e.morphism_index(f1), e.morphism_index(f2));
}

bool OrthoRel::contains_indices(std::size_t f1, std::size_t f2) const {
  if (!explicit_) throw Error(ErrorKind::BackendUnsupported, "index lookup on a symbolic relation");
  return pairs_.count(ordered(f1, f2)) > 0;
}

const std::set<OrthoRel::Pair>& OrthoRel::pairs() const {
  if (!explicit_) throw Error(ErrorKind::BackendUnsupported, "relation '" + name_ + "' is symbolic");
  return pairs_;
}

std::vector<std::pair<Morphism, Morphism>> OrthoRel::ordered_pairs() const {
  std::vector<std::pair<Morphism, Morphism>> out;
  const auto& e = static_cast<const EnumeratedCategory&>(*carrier_);
  for (const auto& [a, b] : pairs()) out.emplace_back(e.morphism(a), e.morphism(b));
  return out;
}

bool operator==(const OrthoRel& a, const OrthoRel& b) {
  if (!same_category(a.carrier_, b.carrier_)) return false;
  if (a.explicit_ && b.explicit_) return a.pairs_ == b.pairs_;
  if (a.is_empty_relation() && b.is_empty_relation()) return true;
  return !a.explicit_ && !b.explicit_ && a.name_ == b.name_;
}

OrthoRel closure(const EnumeratedPtr& cat, const std::set<OrthoRel::Pair>& seed) {
  // from_pairs validates the seed
  OrthoRel start = OrthoRel::from_pairs(cat, seed);
  std::set<OrthoRel::Pair> done = start.pairs();
  std::deque<OrthoRel::Pair> work(done.begin(), done.end());
  auto push = [&](std::size_t a, std::size_t b) {
    if (done.insert(ordered(a, b)).second) work.push_back(ordered(a, b));
  };
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    for (std::size_t h : cat->morphisms_into(cat->source_index(a))) push(*cat->compose_index(a, h), b);
    for (std::size_t h : cat->morphisms_into(cat->source_index(b))) push(a, *cat->compose_index(b, h));
    for (std::size_t g : cat->morphisms_from(cat->target_index(a)))
      push(*cat->compose_index(g, a), *cat->compose_index(g, b));
  }
  return OrthoRel::from_pairs(cat, done);
}

OrthoRel closure(const OrthoRel& rel) {
  if (!rel.is_explicit())
    throw Error(ErrorKind::BackendUnsupported, "closure of symbolic relation '" + rel.name() + "'");
  return closure(as_enumerated(rel.carrier(), "closure"), rel.pairs());
}

Report validate(const OrthoRel& rel, const SampleConfig& cfg) {
  Report report;
  Verdict common{"common target", true, {}, std::nullopt, {}};
  Verdict stable{"composition stable", true, {}, std::nullopt, {}};
  if (rel.is_explicit()) {
    auto cat = as_enumerated(rel.carrier(), "validate");
    for (const auto& [a, b] : rel.pairs()) {
      ++common.coverage.checked;
      ++stable.coverage.checked;
      if (cat->target_index(a) != cat->target_index(b)) {
        common.passed = false;
        common.witness = pair_string(cat->morphism(a), cat->morphism(b));
        continue;
      }
      auto check = [&](std::size_t x, std::size_t y) {
        if (stable.passed && !rel.contains_indices(x, y)) {
          stable.passed = false;
          stable.witness = pair_string(cat->morphism(a), cat->morphism(b)) + " generates " +
                           pair_string(cat->morphism(x), cat->morphism(y));
        }
      };
      for (std::size_t h : cat->morphisms_into(cat->source_index(a))) check(*cat->compose_index(a, h), b);
      for (std::size_t h : cat->morphisms_into(cat->source_index(b))) check(a, *cat->compose_index(b, h));
      for (std::size_t g : cat->morphisms_from(cat->target_index(a)))
        check(*cat->compose_index(g, a), *cat->compose_index(g, b));
    }
  } else if (!rel.is_empty_relation()) {
    Rng rng(cfg.seed);
    const Category& cat = *rel.carrier();
    common.coverage.exhaustive = stable.coverage.exhaustive = false;
    for (std::size_t i = 0; i < cfg.samples && stable.passed; ++i) {
      Object n = cat.sample_object(rng);
      Morphism f1 = cat.sample_morphism_into(n, rng);
      Morphism f2 = cat.sample_morphism_into(n, rng);
      ++common.coverage.checked;
      ++stable.coverage.checked;
      if (!rel.contains(f1, f2)) continue;
      Morphism g = cat.sample_morphism_from(n, rng);
      Morphism h1 = cat.sample_morphism_into(f1.src, rng);
      Morphism h2 = cat.sample_morphism_into(f2.src, rng);
      Morphism x = cat.compose(g, cat.compose(f1, h1));
      Morphism y = cat.compose(g, cat.compose(f2, h2));
      if (!rel.contains(x, y) || !rel.contains(f2, f1)) {
        stable.passed = false;
        stable.witness = pair_string(f1, f2) + " generates " + pair_string(x, y);
      }
    }
  }
  report.add(common);
  report.add(stable);
  return report;
}

Verdict is_orthogonal_functor(const Functor& f, const OrthoRel& src, const OrthoRel& tgt, const SampleConfig& cfg) {
  Verdict v{"orthogonal functor", true, {}, std::nullopt, {}};
  if (src.is_explicit()) {
    for (const auto& [a, b] : src.ordered_pairs()) {
      ++v.coverage.checked;
      if (!tgt.contains(f(a), f(b))) {
        v.passed = false;
        v.witness = pair_string(a, b);
        v.detail = "image " + pair_string(f(a), f(b)) + " is not orthogonal";
        return v;
      }
    }
    return v;
  }
  if (src.is_empty_relation()) return v;
  Rng rng(cfg.seed);
  const Category& cat = *src.carrier();
  v.coverage.exhaustive = false;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    Object n = cat.sample_object(rng);
    Morphism a = cat.sample_morphism_into(n, rng);
    Morphism b = cat.sample_morphism_into(n, rng);
    ++v.coverage.checked;
    if (src.contains(a, b) && !tgt.contains(f(a), f(b))) {
      v.passed = false;
      v.witness = pair_string(a, b);
      return v;
    }
  }
  return v;
}

OrthoRel pushforward(const Functor& f, const OrthoRel& rel) {
  if (rel.is_empty_relation()) return OrthoRel::empty(f.target);
  if (!rel.is_explicit())
    throw Error(ErrorKind::BackendUnsupported, "pushforward of symbolic relation '" + rel.name() + "'");
  auto tgt = as_enumerated(f.target, "pushforward");
  std::set<OrthoRel::Pair> images;
  for (const auto& [a, b] : rel.ordered_pairs())
    images.insert(ordered(tgt->morphism_index(f(a)), tgt->morphism_index(f(b))));
  return closure(tgt, images);
}

OrthoRel pullback(const Functor& f, const OrthoRel& rel) {
  if (rel.is_empty_relation()) return OrthoRel::empty(f.source);
  auto pred = [f, rel](const Morphism& a, const Morphism& b) { return rel.contains(f(a), f(b)); };
  return OrthoRel::from_predicate(f.source, "pullback(" + f.name + ", " + rel.name() + ")", pred);
}

Verdict is_fully_faithful(const Functor& f) {
  auto c = as_enumerated(f.source, "fully faithful check");
  auto d = as_enumerated(f.target, "fully faithful check");
  Verdict v{"fully faithful", true, {}, std::nullopt, {}};
  for (const auto& a : c->objects())
    for (const auto& b : c->objects()) {
      ++v.coverage.checked;
      auto src_hom = c->hom(a, b);
      auto tgt_hom = d->hom(f(a), f(b));
      std::set<std::string> images;
      for (const auto& m : src_hom) {
        if (!images.insert(f(m).id).second) {
          v.passed = false;
          v.witness = "hom(" + a.id + ", " + b.id + ") not injective at " + m.id;
          return v;
        }
      }
      if (images.size() != tgt_hom.size()) {
        v.passed = false;
        v.witness = "hom(" + a.id + ", " + b.id + ") has " + std::to_string(src_hom.size()) + " elements, hom(" +
                    f(a).id + ", " + f(b).id + ") has " + std::to_string(tgt_hom.size());
        return v;
      }
    }
  return v;
}

Report is_ortho_equivalence(const Functor& f, const OrthoRel& src, const OrthoRel& tgt) {
  auto c = as_enumerated(f.source, "orthogonal equivalence check");
  auto d = as_enumerated(f.target, "orthogonal equivalence check");
  Report report;
  report.add(is_fully_faithful(f));

  Verdict es{"essentially surjective", true, {}, std::nullopt, {}};
  for (const auto& y : d->objects()) {
    ++es.coverage.checked;
    bool hit = false;
    for (const auto& x : c->objects()) {
      for (const auto& m : d->hom(f(x), y)) {
        if (d->inverse(m)) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (!hit) {
      es.passed = false;
      es.witness = y.id;
      break;
    }
  }
  report.add(es);

  Verdict pb{"orthogonality is pullback", true, {}, std::nullopt, {}};
  OrthoRel pulled = pullback(f, tgt);
  pb.coverage.checked = c->morphisms().size() * c->morphisms().size();
  if (!(pulled == src)) {
    pb.passed = false;
    for (std::size_t a = 0; a < c->morphisms().size() && !pb.witness; ++a)
      for (std::size_t b = a; b < c->morphisms().size(); ++b) {
        const auto& ma = c->morphism(a);
        const auto& mb = c->morphism(b);
        if (!(ma.tgt == mb.tgt)) continue;
        if (src.contains(ma, mb) != pulled.contains(ma, mb)) {
          pb.witness = pair_string(ma, mb);
          pb.detail = src.contains(ma, mb) ? "orthogonal in source but not after pullback"
                                           : "orthogonal after pullback but not in source";
          break;
        }
      }
  }
  report.add(pb);
  return report;
}

}  // namespace aqft
