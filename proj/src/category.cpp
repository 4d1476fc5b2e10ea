#include "aqft/category.hpp"

#include "aqft/errors.hpp"

#include <algorithm>
#include <set>

namespace aqft {

// ---------------------------------------------------------------------------
// Reports

std::string Coverage::describe() const {
  if (exhaustive) return "exhaustive";
  return "sampled, " + std::to_string(checked);
}

void Coverage::merge(const Coverage& other) {
  exhaustive = exhaustive && other.exhaustive;
  checked += other.checked;
}

bool Report::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

const Verdict* Report::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

const Verdict& Report::at(const std::string& name) const {
  if (const auto* v = find(name)) return *v;
  throw Error(ErrorKind::InvalidArgument, "no verdict named '" + name + "'");
}

Coverage Report::coverage() const {
  Coverage c;
  for (const auto& v : verdicts) c.merge(v.coverage);
  return c;
}

void Report::append(const Report& other, const std::string& prefix) {
  for (auto v : other.verdicts) {
    if (!prefix.empty()) v.name = prefix + v.name;
    verdicts.push_back(std::move(v));
  }
}

// ---------------------------------------------------------------------------
// Category

std::string Morphism::describe() const { return id + ": " + src.id + " -> " + tgt.id; }

Morphism Category::compose(const Morphism& g, const Morphism& f) const {
  if (!(f.tgt == g.src)) {
    throw Error(ErrorKind::NonComposable,
                "cannot form " + g.id + " ∘ " + f.id + " (target " + f.tgt.id + " != source " + g.src.id + ")");
  }
  return compose_unchecked(g, f);
}

const std::vector<Object>& Category::objects() const {
  throw Error(ErrorKind::BackendUnsupported, "category '" + name() + "' cannot enumerate objects");
}

const std::vector<Morphism>& Category::morphisms() const {
  throw Error(ErrorKind::BackendUnsupported, "category '" + name() + "' cannot enumerate morphisms");
}

std::vector<Morphism> Category::hom(const Object&, const Object&) const {
  throw Error(ErrorKind::BackendUnsupported, "category '" + name() + "' cannot enumerate hom-sets");
}

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->backend() == b->backend() && a->name() == b->name();
}

// ---------------------------------------------------------------------------
// EnumeratedCategory

using Builder = EnumeratedCategory::Builder;

Builder& Builder::object(std::string id) {
  objects_.push_back(std::move(id));
  return *this;
}

Builder& Builder::morphism(std::string id, std::string src, std::string tgt) {
  morphisms_.push_back({std::move(id), std::move(src), std::move(tgt)});
  return *this;
}

Builder& Builder::identity(std::string object, std::string morphism_id) {
  identities_[std::move(object)] = std::move(morphism_id);
  return *this;
}

Builder& Builder::composite(std::string g, std::string f, std::string gf) {
  composites_.push_back({std::move(g), std::move(f), std::move(gf)});
  return *this;
}

std::shared_ptr<const EnumeratedCategory> Builder::build() const {
  auto invalid = [this](const std::string& msg) { return Error(ErrorKind::InvalidCategory, name_ + ": " + msg); };
  std::shared_ptr<EnumeratedCategory> cat(new EnumeratedCategory());
  cat->name_ = name_;
  for (const auto& id : objects_) {
    if (cat->object_lookup_.count(id)) throw invalid("duplicate object '" + id + "'");
    cat->object_lookup_.emplace(id, cat->objects_.size());
    cat->objects_.push_back(Object{id, {}});
  }
  auto add_morphism = [&](const std::string& id, const std::string& s, const std::string& t) {
    if (cat->morphism_lookup_.count(id)) throw invalid("duplicate morphism '" + id + "'");
    auto si = cat->object_lookup_.find(s);
    auto ti = cat->object_lookup_.find(t);
    if (si == cat->object_lookup_.end() || ti == cat->object_lookup_.end())
      throw invalid("morphism '" + id + "' has unknown endpoint");
    cat->morphism_lookup_.emplace(id, cat->morphisms_.size());
    cat->morphisms_.push_back(Morphism{id, cat->objects_[si->second], cat->objects_[ti->second], {}});
    cat->src_.push_back(si->second);
    cat->tgt_.push_back(ti->second);
  };
  // identities first so that listing order of the rest is preserved
  cat->identity_.assign(objects_.size(), 0);
  std::set<std::string> identity_ids;
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    auto it = identities_.find(objects_[o]);
    std::string id = it != identities_.end() ? it->second : "id_" + objects_[o];
    identity_ids.insert(id);
    add_morphism(id, objects_[o], objects_[o]);
    cat->identity_[o] = cat->morphisms_.size() - 1;
  }
  for (const auto& [obj, _] : identities_)
    if (!cat->object_lookup_.count(obj)) throw invalid("identity for unknown object '" + obj + "'");
  for (const auto& m : morphisms_) {
    if (identity_ids.count(m[0])) {
      auto idx = cat->morphism_lookup_.at(m[0]);
      if (cat->morphisms_[idx].src.id != m[1] || cat->morphisms_[idx].tgt.id != m[2])
        throw invalid("identity '" + m[0] + "' listed with wrong endpoints");
      continue;
    }
    add_morphism(m[0], m[1], m[2]);
  }

  const std::size_t n = cat->morphisms_.size();
  cat->table_.assign(n * n, -1);
  for (std::size_t f = 0; f < n; ++f) {
    cat->table_[cat->identity_[cat->tgt_[f]] * n + f] = static_cast<std::ptrdiff_t>(f);
    cat->table_[f * n + cat->identity_[cat->src_[f]]] = static_cast<std::ptrdiff_t>(f);
  }
  for (const auto& [g, f, gf] : composites_) {
    auto lookup = [&](const std::string& id) {
      auto it = cat->morphism_lookup_.find(id);
      if (it == cat->morphism_lookup_.end()) throw invalid("composite mentions unknown morphism '" + id + "'");
      return it->second;
    };
    std::size_t gi = lookup(g), fi = lookup(f), gfi = lookup(gf);
    if (cat->tgt_[fi] != cat->src_[gi]) throw invalid("composite " + g + " ∘ " + f + " is not composable");
    if (cat->src_[gfi] != cat->src_[fi] || cat->tgt_[gfi] != cat->tgt_[gi])
      throw invalid("composite " + g + " ∘ " + f + " = " + gf + " has wrong endpoints");
    auto& slot = cat->table_[gi * n + fi];
    if (slot >= 0 && static_cast<std::size_t>(slot) != gfi)
      throw invalid("conflicting composites for " + g + " ∘ " + f);
    slot = static_cast<std::ptrdiff_t>(gfi);
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (cat->tgt_[f] == cat->src_[g] && cat->table_[g * n + f] < 0)
        throw invalid("missing composite " + cat->morphisms_[g].id + " ∘ " + cat->morphisms_[f].id);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t g = 0; g < n; ++g) {
      if (cat->tgt_[g] != cat->src_[h]) continue;
      for (std::size_t f = 0; f < n; ++f) {
        if (cat->tgt_[f] != cat->src_[g]) continue;
        auto hg = static_cast<std::size_t>(cat->table_[h * n + g]);
        auto gf = static_cast<std::size_t>(cat->table_[g * n + f]);
        if (cat->table_[hg * n + f] != cat->table_[h * n + gf])
          throw invalid("associativity fails on (" + cat->morphisms_[h].id + ", " + cat->morphisms_[g].id + ", " +
                        cat->morphisms_[f].id + ")");
      }
    }
  return cat;
}

bool EnumeratedCategory::has_object(const Object& x) const { return object_lookup_.count(x.id) > 0; }

bool EnumeratedCategory::has_morphism(const Morphism& f) const {
  auto it = morphism_lookup_.find(f.id);
  return it != morphism_lookup_.end() && morphisms_[it->second] == f;
}

Morphism EnumeratedCategory::identity(const Object& x) const { return morphisms_[identity_[object_index(x)]]; }

std::optional<Morphism> EnumeratedCategory::inverse(const Morphism& f) const {
  std::size_t fi = morphism_index(f);
  const std::size_t n = morphisms_.size();
  for (std::size_t g = 0; g < n; ++g) {
    if (src_[g] != tgt_[fi] || tgt_[g] != src_[fi]) continue;
    if (static_cast<std::size_t>(table_[g * n + fi]) == identity_[src_[fi]] &&
        static_cast<std::size_t>(table_[fi * n + g]) == identity_[tgt_[fi]])
      return morphisms_[g];
  }
  return std::nullopt;
}

Object EnumeratedCategory::parse_object(std::string_view text) const {
  auto it = object_lookup_.find(text);
  if (it == object_lookup_.end())
    throw Error(ErrorKind::InvalidArgument, name_ + ": unknown object '" + std::string(text) + "'");
  return objects_[it->second];
}

Morphism EnumeratedCategory::parse_morphism(std::string_view text) const {
  return morphisms_[morphism_index(text)];
}

std::vector<Morphism> EnumeratedCategory::hom(const Object& a, const Object& b) const {
  std::size_t ai = object_index(a), bi = object_index(b);
  std::vector<Morphism> out;
  for (std::size_t m = 0; m < morphisms_.size(); ++m)
    if (src_[m] == ai && tgt_[m] == bi) out.push_back(morphisms_[m]);
  return out;
}

Object EnumeratedCategory::sample_object(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, objects_.size() - 1);
  return objects_[pick(rng)];
}

Morphism EnumeratedCategory::sample_morphism_from(const Object& a, Rng& rng) const {
  auto from = morphisms_from(object_index(a));
  std::uniform_int_distribution<std::size_t> pick(0, from.size() - 1);
  return morphisms_[from[pick(rng)]];
}

Morphism EnumeratedCategory::sample_morphism_into(const Object& b, Rng& rng) const {
  auto into = morphisms_into(object_index(b));
  std::uniform_int_distribution<std::size_t> pick(0, into.size() - 1);
  return morphisms_[into[pick(rng)]];
}

std::optional<Morphism> EnumeratedCategory::sample_morphism_between(const Object& a, const Object& b,
                                                                    Rng& rng) const {
  auto h = hom(a, b);
  if (h.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, h.size() - 1);
  return h[pick(rng)];
}

std::size_t EnumeratedCategory::object_index(const Object& x) const {
  auto it = object_lookup_.find(x.id);
  if (it == object_lookup_.end())
    throw Error(ErrorKind::InvalidArgument, name_ + ": unknown object '" + x.id + "'");
  return it->second;
}

std::size_t EnumeratedCategory::morphism_index(const Morphism& f) const {
  std::size_t i = morphism_index(f.id);
  if (!(morphisms_[i] == f))
    throw Error(ErrorKind::InvalidArgument, name_ + ": morphism '" + f.describe() + "' has wrong endpoints");
  return i;
}

std::size_t EnumeratedCategory::morphism_index(std::string_view id) const {
  auto it = morphism_lookup_.find(id);
  if (it == morphism_lookup_.end())
    throw Error(ErrorKind::InvalidArgument, name_ + ": unknown morphism '" + std::string(id) + "'");
  return it->second;
}

std::optional<std::size_t> EnumeratedCategory::compose_index(std::size_t g, std::size_t f) const {
  auto v = table_[g * morphisms_.size() + f];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> EnumeratedCategory::morphisms_into(std::size_t object) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < morphisms_.size(); ++m)
    if (tgt_[m] == object) out.push_back(m);
  return out;
}

std::vector<std::size_t> EnumeratedCategory::morphisms_from(std::size_t object) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < morphisms_.size(); ++m)
    if (src_[m] == object) out.push_back(m);
  return out;
}

Morphism EnumeratedCategory::compose_unchecked(const Morphism& g, const Morphism& f) const {
  return morphisms_[*compose_index(morphism_index(g), morphism_index(f))];
}

EnumeratedPtr as_enumerated(const CategoryPtr& cat, std::string_view what) {
  auto e = std::dynamic_pointer_cast<const EnumeratedCategory>(cat);
  if (!e)
    throw Error(ErrorKind::BackendUnsupported,
                std::string(what) + " requires an enumerated category, got '" + cat->name() + "'");
  return e;
}

EnumeratedPtr make_terminal_category(std::string name) {
  return EnumeratedCategory::Builder(std::move(name)).object("*").build();
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

Functor identity_functor(CategoryPtr cat) {
  Functor f;
  f.name = "id_" + cat->name();
  f.source = cat;
  f.target = cat;
  f.object_map = [](const Object& x) { return x; };
  f.morphism_map = [](const Morphism& m) { return m; };
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (!same_category(f.target, g.source))
    throw Error(ErrorKind::ShapeMismatch, "cannot compose functors " + g.name + " ∘ " + f.name);
  Functor h;
  h.name = g.name + "∘" + f.name;
  h.source = f.source;
  h.target = g.target;
  h.object_map = [g, f](const Object& x) { return g(f(x)); };
  h.morphism_map = [g, f](const Morphism& m) { return g(f(m)); };
  return h;
}

Functor functor_from_tables(std::string name, EnumeratedPtr source, CategoryPtr target,
                            const std::map<std::string, std::string>& objects,
                            const std::map<std::string, std::string>& morphisms) {
  std::map<std::string, Object> obj_image;
  for (const auto& x : source->objects()) {
    auto it = objects.find(x.id);
    if (it == objects.end())
      throw Error(ErrorKind::InvalidArgument, name + ": object '" + x.id + "' has no image");
    obj_image[x.id] = target->parse_object(it->second);
  }
  std::map<std::string, Morphism> mor_image;
  for (std::size_t m = 0; m < source->morphisms().size(); ++m) {
    const auto& f = source->morphism(m);
    auto it = morphisms.find(f.id);
    if (it != morphisms.end()) {
      mor_image[f.id] = target->parse_morphism(it->second);
    } else if (source->is_identity(m)) {
      mor_image[f.id] = target->identity(obj_image.at(f.src.id));
    } else {
      throw Error(ErrorKind::InvalidArgument, name + ": morphism '" + f.id + "' has no image");
    }
  }
  Functor out;
  out.name = std::move(name);
  out.source = source;
  out.target = target;
  out.object_map = [obj_image, fname = out.name](const Object& x) {
    auto it = obj_image.find(x.id);
    if (it == obj_image.end()) throw Error(ErrorKind::InvalidArgument, fname + ": unknown object '" + x.id + "'");
    return it->second;
  };
  out.morphism_map = [mor_image, fname = out.name](const Morphism& f) {
    auto it = mor_image.find(f.id);
    if (it == mor_image.end()) throw Error(ErrorKind::InvalidArgument, fname + ": unknown morphism '" + f.id + "'");
    return it->second;
  };
  return out;
}

std::vector<Object> objects_to_check(const Category& cat, Rng& rng, const SampleConfig& cfg, Coverage& coverage) {
  if (cat.enumerated()) {
    coverage.checked += cat.objects().size();
    return cat.objects();
  }
  coverage.exhaustive = false;
  coverage.checked += cfg.samples;
  std::vector<Object> out;
  out.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) out.push_back(cat.sample_object(rng));
  return out;
}

std::vector<Morphism> morphisms_to_check(const Category& cat, Rng& rng, const SampleConfig& cfg,
                                         Coverage& coverage) {
  if (cat.enumerated()) {
    coverage.checked += cat.morphisms().size();
    return cat.morphisms();
  }
  coverage.exhaustive = false;
  coverage.checked += cfg.samples;
  std::vector<Morphism> out;
  out.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) out.push_back(cat.sample_morphism(rng));
  return out;
}

std::vector<std::pair<Morphism, Morphism>> composable_pairs(const Category& cat, Rng& rng, const SampleConfig& cfg,
                                                            Coverage& coverage) {
  std::vector<std::pair<Morphism, Morphism>> out;
  if (cat.enumerated()) {
    for (const auto& f : cat.morphisms())
      for (const auto& g : cat.morphisms())
        if (f.tgt == g.src) out.emplace_back(g, f);
    coverage.checked += out.size();
    return out;
  }
  coverage.exhaustive = false;
  coverage.checked += cfg.samples;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    Morphism f = cat.sample_morphism(rng);
    Morphism g = cat.sample_morphism_from(f.tgt, rng);
    out.emplace_back(std::move(g), std::move(f));
  }
  return out;
}

Report check_functor(const Functor& f, const SampleConfig& cfg) {
  Rng rng(cfg.seed);
  Report report;
  const Category& src = *f.source;
  const Category& tgt = *f.target;

  Verdict endpoints{"endpoints", true, {}, std::nullopt, {}};
  for (const auto& m : morphisms_to_check(src, rng, cfg, endpoints.coverage)) {
    Morphism fm = f(m);
    if (!(fm.src == f(m.src)) || !(fm.tgt == f(m.tgt)) || !tgt.has_morphism(fm)) {
      endpoints.passed = false;
      endpoints.witness = m.describe() + " |-> " + fm.describe();
      break;
    }
  }
  report.add(endpoints);

  Verdict ids{"identities", true, {}, std::nullopt, {}};
  for (const auto& x : objects_to_check(src, rng, cfg, ids.coverage)) {
    if (!(f(src.identity(x)) == tgt.identity(f(x)))) {
      ids.passed = false;
      ids.witness = x.id;
      break;
    }
  }
  report.add(ids);

  Verdict comp{"composition", true, {}, std::nullopt, {}};
  for (const auto& [g, h] : composable_pairs(src, rng, cfg, comp.coverage)) {
    if (!(f(src.compose(g, h)) == tgt.compose(f(g), f(h)))) {
      comp.passed = false;
      comp.witness = "(" + g.id + ", " + h.id + ")";
      break;
    }
  }
  report.add(comp);
  return report;
}

Verdict check_naturality(const NatTransf& alpha, const SampleConfig& cfg) {
  Rng rng(cfg.seed);
  Verdict v{alpha.name + " naturality", true, {}, std::nullopt, {}};
  const Category& src = *alpha.source.source;
  const Category& tgt = *alpha.source.target;
  for (const auto& f : morphisms_to_check(src, rng, cfg, v.coverage)) {
    auto a = alpha.component(f.src);
    auto b = alpha.component(f.tgt);
    if (!a || !b) {
      v.passed = false;
      v.witness = "missing component at " + (!a ? f.src.id : f.tgt.id);
      return v;
    }
    Morphism lhs = tgt.compose(alpha.target(f), *a);
    Morphism rhs = tgt.compose(*b, alpha.source(f));
    if (!(lhs == rhs)) {
      v.passed = false;
      v.witness = f.describe();
      v.detail = "G(f)∘α = " + lhs.id + " but α∘F(f) = " + rhs.id;
      return v;
    }
  }
  return v;
}

Report check_adjunction(const AdjunctionData& adj, const SampleConfig& cfg) {
  const auto& c = adj.left.source;
  const auto& d = adj.left.target;
  if (!same_category(adj.right.source, d) || !same_category(adj.right.target, c) ||
      !same_category(adj.unit.source.source, c) || !same_category(adj.unit.source.target, c) ||
      !same_category(adj.counit.source.source, d) || !same_category(adj.counit.source.target, d))
    throw Error(ErrorKind::ShapeMismatch, "adjunction functors and transformations do not fit together");

  Report report;
  Verdict un = check_naturality(adj.unit, cfg);
  un.name = "unit naturality";
  report.add(un);
  Verdict cn = check_naturality(adj.counit, cfg);
  cn.name = "counit naturality";
  report.add(cn);

  Rng rng(cfg.seed ^ 0x7a11ULL);
  Verdict t1{"triangle identity 1", true, {}, std::nullopt, {}};
  for (const auto& x : objects_to_check(*c, rng, cfg, t1.coverage)) {
    auto eta = adj.unit.component(x);
    Object lx = adj.left(x);
    auto eps = adj.counit.component(lx);
    if (!eta || !eps) {
      t1.passed = false;
      t1.witness = "missing component at " + (!eta ? x.id : lx.id);
      break;
    }
    if (!(d->compose(*eps, adj.left(*eta)) == d->identity(lx))) {
      t1.passed = false;
      t1.witness = x.id;
      break;
    }
  }
  report.add(t1);

  Verdict t2{"triangle identity 2", true, {}, std::nullopt, {}};
  for (const auto& y : objects_to_check(*d, rng, cfg, t2.coverage)) {
    Object ry = adj.right(y);
    auto eta = adj.unit.component(ry);
    auto eps = adj.counit.component(y);
    if (!eta || !eps) {
      t2.passed = false;
      t2.witness = "missing component at " + (!eta ? ry.id : y.id);
      break;
    }
    if (!(c->compose(adj.right(*eps), *eta) == c->identity(ry))) {
      t2.passed = false;
      t2.witness = y.id;
      break;
    }
  }
  report.add(t2);
  return report;
}

IsoResult is_isomorphism(const Category& cat, const Morphism& f) {
  auto inv = cat.inverse(f);
  return IsoResult{inv.has_value(), inv};
}

}  // namespace aqft
