#include "aqft/corpus.hpp"

#include "aqft/bar.hpp"
#include "aqft/errors.hpp"
#include "aqft/parametric.hpp"
#include "aqft/strictify.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace aqft {

const AqftModel& Bundle::model(const std::string& model_name) const {
  for (const auto& m : models)
    if (m.name == model_name) return m;
  throw Error(ErrorKind::InvalidArgument, "bundle '" + name + "' has no model '" + model_name + "'");
}

namespace {

using Products = std::map<std::pair<Basis, Basis>, SparseVector>;

SparseVector e(std::size_t i, Rational c = 1) { return SparseVector{{i, std::move(c)}}; }

/// Algebra whose unit is basis element (0, 0); unit products are filled in.
DgAlgebraPtr unital_algebra(std::map<int, std::size_t> dims, std::map<int, Matrix> d, Products extra,
                            std::map<int, std::vector<std::string>> labels) {
  Products p = std::move(extra);
  const Basis one{0, 0};
  for (const auto& [deg, n] : dims)
    for (std::size_t i = 0; i < n; ++i) {
      p[{one, Basis{deg, i}}] = e(i);
      p[{Basis{deg, i}, one}] = e(i);
    }
  auto a = std::make_shared<DgAlgebra>(ChainComplex(std::move(dims), std::move(d)), e(0), std::move(p));
  a->labels = std::move(labels);
  return a;
}

Matrix rows(std::vector<std::vector<Rational>> r, std::size_t cols) { return Matrix::from_rows(r, cols); }

EnumeratedPtr poset_uv() {
  static const EnumeratedPtr cat = EnumeratedCategory::Builder("UV").object("U").object("V").morphism("f", "U", "V").build();
  return cat;
}

EnumeratedPtr rce_category() {
  static const EnumeratedPtr cat = EnumeratedCategory::Builder("RCE")
                                       .object("M")
                                       .object("M_+")
                                       .object("M_-")
                                       .object("M_h")
                                       .morphism("i_+", "M_+", "M")
                                       .morphism("j_+", "M_+", "M_h")
                                       .morphism("j_-", "M_-", "M_h")
                                       .morphism("i_-", "M_-", "M")
                                       .build();
  return cat;
}

Localization rce_localization() {
  auto cat = rce_category();
  std::map<std::string, std::string> objects, morphisms{{"i_+", "0"}, {"j_+", "0"}, {"j_-", "0"}, {"i_-", "1"}};
  for (const auto& x : cat->objects()) objects[x.id] = "*";
  Functor l = functor_from_tables("L", cat, make_bz(), objects, morphisms);
  return Localization{l, MorphismSet::all(cat)};
}

/// L : C -> terminal, ι(*) = ambient, η_x named by `unit`, ε = id.
ReflectiveData collapse_reflection(const EnumeratedPtr& base, const OrthoRel& rel, const std::string& ambient,
                                   const std::function<std::string(const Object&)>& unit) {
  auto pt = make_terminal_category("terminal");
  std::map<std::string, std::string> objects, morphisms;
  for (const auto& x : base->objects()) objects[x.id] = "*";
  for (const auto& f : base->morphisms()) morphisms[f.id] = "id_*";
  Functor l = functor_from_tables("L", base, pt, objects, morphisms);
  Functor iota = functor_from_tables("ι", pt, base, {{"*", ambient}}, {});

  ReflectiveData data;
  data.base = OrthoCat{base, rel};
  data.localized = OrthoCat{pt, localized_orthogonality(l, rel)};
  data.adj.left = l;
  data.adj.right = iota;
  data.adj.unit.name = "η";
  data.adj.unit.source = identity_functor(base);
  data.adj.unit.target = compose(iota, l);
  data.adj.unit.component = [base, unit](const Object& x) -> std::optional<Morphism> {
    return base->parse_morphism(unit(x));
  };
  data.adj.counit.name = "ε";
  data.adj.counit.source = compose(l, iota);
  data.adj.counit.target = identity_functor(pt);
  data.adj.counit.component = [pt](const Object& x) -> std::optional<Morphism> { return pt->identity(x); };
  data.w = derive_w(l);
  return data;
}

ReflectiveData uv_reflection() {
  auto cat = poset_uv();
  return collapse_reflection(cat, OrthoRel::empty(cat), "V",
                             [](const Object& x) { return x.id == "U" ? std::string("f") : std::string("id_V"); });
}

DgAlgebraMap projection(DgAlgebraPtr src, DgAlgebraPtr tgt) {
  // first dim(tgt_n) coordinates of each degree
  std::map<int, Matrix> comps;
  for (const auto& [n, dim] : tgt->complex().dims()) {
    Matrix m(dim, src->complex().dim(n));
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1);
    comps.emplace(n, m);
  }
  return make_dga_map(std::move(src), std::move(tgt), std::move(comps));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string report_outcome(const Report& r) {
  if (r.passed()) return "pass";
  std::string out = "fails:";
  bool first = true;
  for (const auto& v : r.verdicts) {
    if (v.passed) continue;
    out += first ? " " : "; ";
    first = false;
    out += v.name;
    // sampled witnesses depend on the seed
    if (v.witness && v.coverage.exhaustive) out += " [" + *v.witness + "]";
  }
  return out;
}

std::string verdict_outcome(const Verdict& v) {
  if (v.passed) return "pass";
  return "fails: " + v.name + (v.witness ? " [" + *v.witness + "]" : std::string());
}

std::string generator_string(const std::map<int, Matrix>& g, bool homology) {
  std::string out;
  for (const auto& [n, m] : g) {
    if (!out.empty()) out += "; ";
    out += (homology ? "H_" : "A_") + std::to_string(n) + ": " + matrix_string(m);
  }
  return out.empty() ? "trivial" : out;
}

using Path = std::vector<std::size_t>;

std::string box_name(const Path& p) {
  std::string s = "B";
  for (auto c : p) s += "." + std::to_string(c);
  return s;
}

bool box_inside(const Path& p, const Path& q) {
  return p.size() >= q.size() && std::equal(q.begin(), q.end(), p.begin());
}

std::string box_inclusion(const Path& p, const Path& q) {
  return p == q ? "id_" + box_name(p) : box_name(p) + "<" + box_name(q);
}

}  // namespace

std::string matrix_string(const Matrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? "," : "") + to_string(m.at(i, j));
    out += "]";
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Algebras

DgAlgebraPtr dual_numbers() {
  static const DgAlgebraPtr a = unital_algebra({{0, 2}}, {}, {{{Basis{0, 1}, Basis{0, 1}}, {}}}, {{0, {"1", "x"}}});
  return a;
}

DgAlgebraPtr acyclic_extension() {
  static const DgAlgebraPtr a =
      unital_algebra({{0, 2}, {1, 1}}, {{1, rows({{0}, {1}}, 1)}}, {}, {{0, {"1", "v"}}, {1, {"u"}}});
  return a;
}

DgAlgebraPtr dual_acyclic_extension() {
  static const DgAlgebraPtr a = unital_algebra({{0, 3}, {1, 1}}, {{1, rows({{0}, {0}, {1}}, 1)}}, {},
                                               {{0, {"1", "x", "v"}}, {1, {"u"}}});
  return a;
}

DgAlgebraPtr matrix_algebra() {
  static const DgAlgebraPtr a = [] {
    // E_ij has index 2i + j; E_ij E_kl = δ_jk E_il
    Products p;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l)
            if (j == k) p[{Basis{0, 2 * i + j}, Basis{0, 2 * k + l}}] = e(2 * i + l);
    auto m = std::make_shared<DgAlgebra>(ChainComplex::concentrated(0, 4), SparseVector{{0, 1}, {3, 1}}, p);
    m->labels[0] = {"E11", "E12", "E21", "E22"};
    return DgAlgebraPtr(m);
  }();
  return a;
}

// ---------------------------------------------------------------------------
// Entries

CorpusEntry build_rce() {
  auto cat = rce_category();
  CorpusEntry entry;
  Bundle& b = entry.bundle;
  b.name = b.origin = "rce";
  b.base = OrthoCat{cat, OrthoRel::empty(cat)};
  b.localization = rce_localization();
  b.w = MorphismSet::all(cat);

  // right-adjoint candidate ι : BZ -> RCE, * -> M_h, n -> id
  auto bz = make_bz();
  const Functor& l = b.localization->functor;
  Functor iota;
  iota.name = "ι";
  iota.source = bz;
  iota.target = cat;
  iota.object_map = [cat](const Object&) { return cat->parse_object("M_h"); };
  iota.morphism_map = [cat](const Morphism&) { return cat->parse_morphism("id_M_h"); };
  ReflectiveData data;
  data.base = b.base;
  data.localized = OrthoCat{bz, OrthoRel::empty(bz)};
  data.adj.left = l;
  data.adj.right = iota;
  data.adj.unit.name = "η";
  data.adj.unit.source = identity_functor(cat);
  data.adj.unit.target = compose(iota, l);
  data.adj.unit.component = [cat](const Object& x) -> std::optional<Morphism> {
    auto h = cat->hom(x, cat->parse_object("M_h"));
    if (h.empty()) return std::nullopt;
    return h.front();
  };
  data.adj.counit.name = "ε";
  data.adj.counit.source = compose(l, iota);
  data.adj.counit.target = identity_functor(bz);
  data.adj.counit.component = [](const Object&) -> std::optional<Morphism> { return bz_element(0); };
  data.w = MorphismSet::all(cat);
  b.reflective = data;

  std::map<std::string, DgAlgebraPtr> algebras;
  std::map<std::string, DgAlgebraMap> actions;
  for (const auto& x : cat->objects()) algebras[x.id] = ground_field();
  for (const auto& f : cat->morphisms()) actions.emplace(f.id, identity_map(ground_field()));
  b.models.push_back(model_from_tables("constant", b.base, algebras, actions));

  entry.description = "relative Cauchy evolution category, localized at all morphisms onto BZ";
  entry.expected = {
      {"morphisms", "8"},
      {"derive-w", "all (8)"},
      {"rce-normalize", "1"},
      {"certify-reflective",
       "fails: (a) adjunction; (b) right adjoint fully faithful"},
      {"time-slice/constant", "strict"},
      {"rce/constant/strict", "A_0: [[1]]"},
      {"rce/constant/homology", "H_0: [[1]]"},
  };
  return entry;
}

CorpusEntry build_loc1() {
  auto loc1 = make_loc1_skeletal();
  auto brd = make_brdelta();
  CorpusEntry entry;
  Bundle& b = entry.bundle;
  b.name = b.origin = "loc1";
  b.base = OrthoCat{loc1, OrthoRel::empty(loc1)};

  Functor l;
  l.name = "L";
  l.source = loc1;
  l.target = brd;
  l.object_map = [brd](const Object&) { return brd->parse_object("*"); };
  l.morphism_map = [](const Morphism& f) { return brdelta_element(f.params.at(0)); };
  Functor j;
  j.name = "j";
  j.source = brd;
  j.target = loc1;
  j.object_map = [](const Object&) { return real_line(); };
  j.morphism_map = [](const Morphism& xi) { return *translation(real_line(), real_line(), xi.params.at(0)); };

  ReflectiveData data;
  data.base = b.base;
  data.localized = OrthoCat{brd, OrthoRel::empty(brd)};
  data.adj.left = l;
  data.adj.right = j;
  data.adj.unit.name = "η";
  data.adj.unit.source = identity_functor(loc1);
  data.adj.unit.target = compose(j, l);
  data.adj.unit.component = [](const Object& x) { return translation(x, real_line(), 0); };
  data.adj.counit.name = "ε";
  data.adj.counit.source = compose(l, j);
  data.adj.counit.target = identity_functor(brd);
  data.adj.counit.component = [](const Object&) -> std::optional<Morphism> { return brdelta_element(0); };
  data.w = MorphismSet::all(loc1);
  b.reflective = data;
  b.w = MorphismSet::all(loc1);

  AqftModel model;
  model.name = "interval";
  model.base = b.base;
  auto bounded = [](const Object& x) { return x.coords.at(0).finite() && x.coords.at(1).finite(); };
  model.algebra = [bounded](const Object& x) { return bounded(x) ? acyclic_extension() : ground_field(); };
  model.action = [bounded](const Morphism& f) {
    if (!bounded(f.src)) return identity_map(ground_field());
    if (bounded(f.tgt)) return identity_map(acyclic_extension());
    return projection(acyclic_extension(), ground_field());
  };
  b.models.push_back(model);

  entry.description = "intervals of the rational line with translations, reflected onto BRdelta";
  entry.expected = {
      {"certify-reflective", "verified"},
      {"adjunction", "pass"},
      {"check-aqft/interval", "pass"},
      {"time-slice/interval", "homotopy-only"},
      {"strictify/interval", "strict; units quasi-iso"},
      {"idempotence/interval", "pass"},
  };
  return entry;
}

CorpusEntry build_disk(int m, int levels) {
  if (m < 1 || levels < 1) throw Error(ErrorKind::InvalidArgument, "disk needs m >= 1 and levels >= 1");
  const std::size_t children = std::size_t{1} << m;
  // boxes are paths of child digits below the ambient box "B"
  std::vector<std::vector<std::size_t>> boxes{{}};
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (boxes[i].size() < static_cast<std::size_t>(levels))
      for (std::size_t c = 0; c < children; ++c) {
        auto p = boxes[i];
        p.push_back(c);
        boxes.push_back(p);
      }
  const auto& name = box_name;
  const auto& incl = box_inclusion;
  const auto& inside = box_inside;

  EnumeratedCategory::Builder builder("Disk" + std::to_string(m) + "." + std::to_string(levels));
  for (const auto& p : boxes) builder.object(name(p));
  for (const auto& p : boxes)
    for (const auto& q : boxes)
      if (p != q && inside(p, q)) builder.morphism(incl(p, q), name(p), name(q));
  for (const auto& p : boxes)
    for (const auto& q : boxes)
      for (const auto& r : boxes)
        if (p != q && q != r && inside(p, q) && inside(q, r)) builder.composite(incl(q, r), incl(p, q), incl(p, r));
  auto cat = builder.build();

  std::set<OrthoRel::Pair> disjoint;
  for (std::size_t a = 0; a < cat->morphisms().size(); ++a)
    for (std::size_t c = a; c < cat->morphisms().size(); ++c) {
      if (cat->target_index(a) != cat->target_index(c)) continue;
      const auto& p = boxes[cat->source_index(a)];
      const auto& q = boxes[cat->source_index(c)];
      if (!inside(p, q) && !inside(q, p)) disjoint.insert({a, c});
    }
  OrthoRel rel = OrthoRel::from_pairs(cat, disjoint);

  CorpusEntry entry;
  Bundle& b = entry.bundle;
  b.name = b.origin = "disk";
  b.base = OrthoCat{cat, rel};
  b.reflective = collapse_reflection(cat, rel, "B", [boxes](const Object& x) {
    for (const auto& p : boxes)
      if (box_name(p) == x.id) return box_inclusion(p, {});
    throw Error(ErrorKind::InvalidArgument, "not a box: " + x.id);
  });
  b.w = b.reflective->w;
  std::map<std::string, DgAlgebraPtr> algebras;
  std::map<std::string, DgAlgebraMap> actions;
  for (const auto& x : cat->objects()) algebras[x.id] = ground_field();
  for (const auto& f : cat->morphisms()) actions.emplace(f.id, identity_map(ground_field()));
  b.models.push_back(model_from_tables("constant", b.base, algebras, actions));

  entry.description = "nested and disjoint dyadic boxes, collapsed onto the ambient box";
  entry.expected = {
      {"morphisms", std::to_string(cat->morphisms().size())},
      {"derive-w", "all (" + std::to_string(cat->morphisms().size()) + ")"},
      {"localized-orthogonality", "{(id_*, id_*)}"},
      {"adjunction", "pass"},
      {"certify-reflective", "fails: (e) right adjoint orthogonal [(id_*, id_*)]"},
      {"check-aqft/constant", "pass"},
  };
  return entry;
}

std::vector<CorpusEntry> build_toy_theories() {
  std::vector<CorpusEntry> out;
  auto uv = poset_uv();
  const OrthoCat base{uv, OrthoRel::empty(uv)};
  auto uv_entry = [&](std::string name, std::string description, std::string model, DgAlgebraPtr at_u,
                      DgAlgebraMap f) {
    CorpusEntry entry;
    Bundle& b = entry.bundle;
    b.name = b.origin = std::move(name);
    b.base = base;
    b.reflective = uv_reflection();
    b.w = b.reflective->w;
    b.models.push_back(model_from_tables(std::move(model), base, {{"U", std::move(at_u)}, {"V", ground_field()}},
                                         {{"f", std::move(f)}}));
    entry.description = std::move(description);
    return entry;
  };

  {
    auto entry = uv_entry("toy-strict", "ground field on both objects of U -> V", "A", ground_field(),
                          identity_map(ground_field()));
    entry.expected = {{"certify-reflective", "verified"},
                      {"check-aqft/A", "pass"},
                      {"time-slice/A", "strict"},
                      {"strictify/A", "strict; units quasi-iso"},
                      {"idempotence/A", "pass"}};
    out.push_back(std::move(entry));
  }
  {
    auto entry = uv_entry("toy-homotopy", "square-zero acyclic extension projecting onto the ground field", "A",
                          acyclic_extension(), projection(acyclic_extension(), ground_field()));
    entry.expected = {{"certify-reflective", "verified"},
                      {"check-aqft/A", "pass"},
                      {"time-slice/A", "homotopy-only"},
                      {"strictify/A", "strict; units quasi-iso"},
                      {"idempotence/A", "pass"}};
    out.push_back(std::move(entry));
  }
  {
    auto entry = uv_entry("toy-failing", "dual numbers projecting onto the ground field", "A", dual_numbers(),
                          projection(dual_numbers(), ground_field()));
    entry.expected = {{"check-aqft/A", "pass"},
                      {"time-slice/A", "neither"},
                      {"strictify/A", "strict; non-quasi-iso at: U"},
                      {"idempotence/A", "pass"}};
    out.push_back(std::move(entry));
  }
  {
    auto pt = make_terminal_category("point");
    CorpusEntry entry;
    Bundle& b = entry.bundle;
    b.name = b.origin = "toy-causality";
    b.base = OrthoCat{pt, OrthoRel::from_pairs(pt, {{0, 0}})};
    b.w = MorphismSet::all(pt);
    b.models.push_back(model_from_tables("M2", b.base, {{"*", matrix_algebra()}}, {}));
    entry.description = "2x2 matrices on a point whose identity is orthogonal to itself";
    entry.expected = {{"check-aqft/M2", "fails: Einstein causality [(id_*, id_*) on (E11, E12)]"},
                      {"time-slice/M2", "strict"}};
    out.push_back(std::move(entry));
  }
  {
    auto cat = rce_category();
    CorpusEntry entry;
    Bundle& b = entry.bundle;
    b.name = b.origin = "toy-rce";
    b.base = OrthoCat{cat, OrthoRel::empty(cat)};
    b.localization = rce_localization();
    b.w = MorphismSet::all(cat);
    Matrix two = rows({{1, 0}, {0, 2}}, 2);
    auto d = dual_numbers(), di = dual_acyclic_extension();
    b.models.push_back(model_from_tables("rce-homotopy", b.base,
                                         {{"M", d}, {"M_+", di}, {"M_-", d}, {"M_h", d}},
                                         {{"i_+", projection(di, d)},
                                          {"j_+", projection(di, d)},
                                          {"j_-", identity_map(d)},
                                          {"i_-", make_dga_map(d, d, {{0, two}})}}));
    b.models.push_back(model_from_tables(
        "rce-strict", b.base, {{"M", d}, {"M_+", d}, {"M_-", d}, {"M_h", d}},
        {{"i_+", identity_map(d)}, {"j_+", identity_map(d)}, {"j_-", identity_map(d)},
         {"i_-", make_dga_map(d, d, {{0, two}})}}));
    entry.description = "dual numbers on the RCE category with i_- acting by x -> 2x";
    entry.expected = {{"rce-normalize", "1"},
                      {"check-aqft/rce-homotopy", "pass"},
                      {"check-aqft/rce-strict", "pass"},
                      {"time-slice/rce-homotopy", "homotopy-only"},
                      {"time-slice/rce-strict", "strict"},
                      {"rce/rce-homotopy/homology", "H_0: [[1,0],[0,2]]"},
                      {"rce/rce-strict/strict", "A_0: [[1,0],[0,2]]"},
                      {"rce/rce-strict/homology", "H_0: [[1,0],[0,2]]"}};
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<CorpusEntry> build_bar_theories() {
  auto uv = poset_uv();
  const OrthoCat base{uv, OrthoRel::empty(uv)};
  auto entry_for = [&](std::string name, std::string description, DgAlgebraPtr a) {
    CorpusEntry entry;
    Bundle& b = entry.bundle;
    b.name = b.origin = name;
    b.base = base;
    b.w = MorphismSet::all(uv);
    b.models.push_back(model_from_tables(name, base, {{"U", a}, {"V", a}}, {{"f", identity_map(a)}}));
    entry.description = std::move(description);
    entry.expected = {{"check-aqft/" + name, "pass"}, {"time-slice/" + name, "strict"}};
    return entry;
  };
  std::vector<CorpusEntry> out;
  out.push_back(entry_for("ground-field", "the ground field on U -> V", ground_field()));
  auto v = ChainComplex({{0, 1}, {1, 1}}, {});
  auto free = std::make_shared<const DgAlgebra>(free_dga(v, 1, {{0, {"x"}}, {1, {"y"}}}));
  out.push_back(entry_for("free", "free dg-algebra on x (degree 0) and y (degree 1), weight 1, on U -> V", free));
  out[0].expected.push_back({"bar/ground-field/3/3", "simplicial pass; quasi-iso on [0, 2]"});
  out[1].expected.push_back({"bar/free/3/3", "simplicial pass; quasi-iso on [0, 2]"});
  return out;
}

CorpusEntry build_cospan() {
  auto cat = EnumeratedCategory::Builder("cospan")
                 .object("M1")
                 .object("M2")
                 .object("N")
                 .morphism("f1", "M1", "N")
                 .morphism("f2", "M2", "N")
                 .build();
  CorpusEntry entry;
  Bundle& b = entry.bundle;
  b.name = b.origin = "cospan";
  b.base = OrthoCat{cat, closure(cat, {{cat->morphism_index("f1"), cat->morphism_index("f2")}})};
  entry.description = "cospan M1 -> N <- M2 with orthogonal legs";
  entry.expected = {{"morphisms", "5"}};
  return entry;
}

std::vector<std::string> corpus_names() {
  return {"rce", "loc1", "disk", "toy-strict", "toy-homotopy", "toy-failing", "toy-causality", "toy-rce",
          "ground-field", "free", "cospan"};
}

CorpusEntry corpus_entry(const std::string& name) {
  if (name == "rce") return build_rce();
  if (name == "loc1") return build_loc1();
  if (name == "disk") return build_disk();
  if (name == "cospan") return build_cospan();
  for (auto& e : build_toy_theories())
    if (e.bundle.name == name) return e;
  for (auto& e : build_bar_theories())
    if (e.bundle.name == name) return e;
  throw Error(ErrorKind::InvalidArgument, "unknown corpus entry '" + name + "'");
}

// ---------------------------------------------------------------------------
// Outcomes

std::string corpus_outcome(const CorpusEntry& entry, const std::string& operation, const SampleConfig& cfg) {
  const Bundle& b = entry.bundle;
  const auto parts = split(operation, '/');
  const std::string& op = parts[0];
  auto need_reflective = [&]() -> const ReflectiveData& {
    if (!b.reflective) throw Error(ErrorKind::InvalidArgument, b.name + " has no reflective data");
    return *b.reflective;
  };
  auto localization_functor = [&]() -> const Functor& {
    if (b.localization) return b.localization->functor;
    return need_reflective().adj.left;
  };
  auto model = [&]() -> const AqftModel& {
    if (parts.size() < 2) throw Error(ErrorKind::InvalidArgument, "operation '" + operation + "' needs a model");
    return b.model(parts[1]);
  };
  auto w = [&]() {
    if (b.w) return *b.w;
    if (b.reflective) return b.reflective->w;
    return MorphismSet::all(b.base.cat);
  };

  if (op == "morphisms") return std::to_string(b.base.cat->morphisms().size());
  if (op == "derive-w") {
    MorphismSet derived = derive_w(localization_functor());
    if (!derived.elements) return "predicate";
    const std::size_t n = derived.elements->size(), total = b.base.cat->morphisms().size();
    return n == total ? "all (" + std::to_string(n) + ")" : std::to_string(n) + " of " + std::to_string(total);
  }
  if (op == "certify-reflective") {
    Certificate cert = certify_reflective(need_reflective(), cfg);
    return cert.verified ? "verified" : report_outcome(cert.report);
  }
  if (op == "adjunction") return report_outcome(check_adjunction(need_reflective().adj, cfg));
  if (op == "localized-orthogonality") {
    OrthoRel rel = localized_orthogonality(localization_functor(), b.base.rel);
    std::string out = "{";
    for (const auto& [f1, f2] : rel.ordered_pairs()) out += (out.size() > 1 ? ", (" : "(") + f1.id + ", " + f2.id + ")";
    return out + "}";
  }
  if (op == "rce-normalize") {
    if (!b.localization) throw Error(ErrorKind::InvalidArgument, b.name + " has no localization");
    return zigzag_normalize(rce_loop(*b.base.cat), *b.localization).id;
  }
  if (op == "check-aqft") return report_outcome(check_aqft(model(), cfg));
  if (op == "time-slice") return to_string(time_slice_verdict(model(), w(), cfg).kind);
  if (op == "strictify" || op == "idempotence") {
    StrictificationResult res = strictify_reflective(model(), need_reflective(), cfg);
    if (op == "idempotence") return verdict_outcome(check_idempotence(res, need_reflective(), cfg));
    const Verdict& units = res.certificate.at("unit components quasi-iso");
    return std::string(to_string(res.output_verdict.kind)) + "; " + (units.passed ? "units quasi-iso" : units.detail);
  }
  if (op == "rce") {
    if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "expected rce/<model>/<mode>");
    const bool homology = parts[2] == "homology";
    RceAction act = rce_action(model(), homology ? RceMode::Homology : RceMode::Strict);
    return generator_string(act.generator, homology);
  }
  if (op == "bar") {
    if (parts.size() != 4) throw Error(ErrorKind::InvalidArgument, "expected bar/<model>/<depth>/<weight>");
    BarResolution res = bar_truncated(model(), std::stoul(parts[2]), std::stoul(parts[3]));
    Report simplicial = check_simplicial(res);
    const BarObject& first = *res.objects.front().second;
    TotResult tot = tot_normalized(res, first.lowest_degree(), first.trusted_top());
    std::ostringstream out;
    out << "simplicial " << (simplicial.passed() ? "pass" : "fail") << "; "
        << (tot.quasi_iso() ? "quasi-iso" : "not quasi-iso") << " on [" << tot.lo << ", " << tot.hi << "]";
    return out.str();
  }
  throw Error(ErrorKind::InvalidArgument, "unknown corpus operation '" + operation + "'");
}

}  // namespace aqft
