#include "aqft/serialize.hpp"

#include "aqft/errors.hpp"
#include "aqft/parametric.hpp"

#include <algorithm>
#include <sstream>

namespace aqft {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw Error(ErrorKind::Schema, path + ": " + msg); }

std::string sub(const std::string& path, const std::string& key) { return path + "." + key; }
std::string sub(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing '" + key + "'");
  return *it;
}

const Json* optional_member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

const Json& object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

Rational rational(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(j.dump());
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path, "expected a rational as a string \"p/q\" or an integer");
}

std::size_t natural(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

int degree_key(const std::string& key, const std::string& path) {
  try {
    std::size_t used = 0;
    int n = std::stoi(key, &used);
    if (used == key.size()) return n;
  } catch (const std::exception&) {
  }
  fail(path, "degree key '" + key + "' is not an integer");
}

/// Runs `body`, turning toolkit errors into schema errors at `path`.
template <class F>
auto at_path(const std::string& path, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    fail(path, e.what());
  }
}

Json rational_json(const Rational& q) { return to_string(q); }

/// A textual reference that `cat.parse_morphism` maps back to f.
std::string morphism_ref(const Category& cat, const Morphism& f) {
  if (cat.enumerated()) return f.id;
  try {
    if (cat.parse_morphism(f.id) == f) return f.id;
  } catch (const Error&) {
  }
  return f.id + ":" + f.src.id + "->" + f.tgt.id;
}

// ---------------------------------------------------------------------------
// Builtin references

std::vector<std::string> split_ref(const std::string& ref) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : ref) {
    if (c == '/') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Bundle builtin_bundle(const std::string& ref, const std::string& path) {
  return at_path(path, [&] { return corpus_entry(split_ref(ref).front()).bundle; });
}

std::string builtin_ref(const Bundle& b, const std::string& part) {
  if (b.origin.empty())
    throw Error(ErrorKind::Schema, "bundle '" + b.name + "': " + part + " has no table form and no corpus origin");
  return b.origin + "/" + part;
}

// ---------------------------------------------------------------------------
// Categories

CategoryPtr builtin_category(const std::string& name, const std::string& path) {
  if (name == "BZ") return make_bz();
  if (name == "BRdelta") return make_brdelta();
  if (name == "Loc1Skeletal") return make_loc1_skeletal();
  fail(path, "unknown builtin category '" + name + "'");
}

Json write_category(const CategoryPtr& cat) {
  if (!cat->enumerated()) return Json{{"builtin", cat->name()}};
  auto e = as_enumerated(cat, "category output");
  Json j;
  j["name"] = e->name();
  j["objects"] = Json::array();
  Json identities = Json::object();
  for (const auto& x : e->objects()) {
    j["objects"].push_back(x.id);
    identities[x.id] = e->identity(x).id;
  }
  j["identities"] = identities;
  j["morphisms"] = Json::array();
  for (std::size_t m = 0; m < e->morphisms().size(); ++m)
    if (!e->is_identity(m)) {
      const auto& f = e->morphism(m);
      j["morphisms"].push_back(Json{{"id", f.id}, {"src", f.src.id}, {"tgt", f.tgt.id}});
    }
  j["composites"] = Json::array();
  for (std::size_t g = 0; g < e->morphisms().size(); ++g)
    for (std::size_t f = 0; f < e->morphisms().size(); ++f) {
      if (e->is_identity(g) || e->is_identity(f)) continue;
      if (auto gf = e->compose_index(g, f))
        j["composites"].push_back(Json::array({e->morphism(g).id, e->morphism(f).id, e->morphism(*gf).id}));
    }
  return j;
}

CategoryPtr read_category(const Json& doc, const std::string& path) {
  if (const Json* b = optional_member(doc, "builtin", path)) return builtin_category(str(*b, sub(path, "builtin")), path);
  EnumeratedCategory::Builder builder(str(member(doc, "name", path), sub(path, "name")));
  const std::string op = sub(path, "objects");
  const Json& objs = array(member(doc, "objects", path), op);
  for (std::size_t i = 0; i < objs.size(); ++i) builder.object(str(objs[i], sub(op, i)));
  if (const Json* ids = optional_member(doc, "identities", path))
    for (const auto& [x, id] : object(*ids, sub(path, "identities")).items())
      builder.identity(x, str(id, sub(sub(path, "identities"), x)));
  if (const Json* ms = optional_member(doc, "morphisms", path)) {
    const std::string mp = sub(path, "morphisms");
    for (std::size_t i = 0; i < array(*ms, mp).size(); ++i) {
      const std::string p = sub(mp, i);
      const Json& m = (*ms)[i];
      builder.morphism(str(member(m, "id", p), sub(p, "id")), str(member(m, "src", p), sub(p, "src")),
                       str(member(m, "tgt", p), sub(p, "tgt")));
    }
  }
  if (const Json* cs = optional_member(doc, "composites", path)) {
    const std::string cp = sub(path, "composites");
    for (std::size_t i = 0; i < array(*cs, cp).size(); ++i) {
      const std::string p = sub(cp, i);
      const Json& c = array((*cs)[i], p);
      if (c.size() != 3) fail(p, "expected [g, f, g∘f]");
      builder.composite(str(c[0], sub(p, 0)), str(c[1], sub(p, 1)), str(c[2], sub(p, 2)));
    }
  }
  return at_path(path, [&] { return CategoryPtr(builder.build()); });
}

// ---------------------------------------------------------------------------
// Orthogonality, morphism sets, functors

Json write_orthogonality(const OrthoRel& rel, const Bundle& b, const std::string& part) {
  if (rel.is_empty_relation()) return Json{{"pairs", Json::array()}};
  if (!rel.is_explicit()) return Json{{"builtin", builtin_ref(b, part)}};
  Json pairs = Json::array();
  for (const auto& [f1, f2] : rel.ordered_pairs()) pairs.push_back(Json::array({f1.id, f2.id}));
  return Json{{"pairs", pairs}};
}

OrthoRel read_orthogonality(const Json* doc, const CategoryPtr& cat, const std::string& path) {
  if (!doc) return OrthoRel::empty(cat);
  if (const Json* b = optional_member(*doc, "builtin", path)) {
    const std::string ref = str(*b, sub(path, "builtin"));
    Bundle src = builtin_bundle(ref, path);
    if (split_ref(ref).size() == 2 && split_ref(ref)[1] == "localized-orthogonality" && src.reflective)
      return src.reflective->localized.rel;
    return src.base.rel;
  }
  const std::string pp = sub(path, "pairs");
  const Json& pairs = array(member(*doc, "pairs", path), pp);
  if (pairs.empty()) return OrthoRel::empty(cat);
  auto e = at_path(path, [&] { return as_enumerated(cat, "explicit orthogonality"); });
  std::set<OrthoRel::Pair> seed;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string p = sub(pp, i);
    const Json& pr = array(pairs[i], p);
    if (pr.size() != 2) fail(p, "expected a pair [f1, f2]");
    std::size_t a = at_path(sub(p, 0), [&] { return e->morphism_index(str(pr[0], sub(p, 0))); });
    std::size_t c = at_path(sub(p, 1), [&] { return e->morphism_index(str(pr[1], sub(p, 1))); });
    seed.insert(a <= c ? OrthoRel::Pair{a, c} : OrthoRel::Pair{c, a});
  }
  bool close = false;
  if (const Json* c = optional_member(*doc, "close", path)) {
    if (!c->is_boolean()) fail(sub(path, "close"), "expected a boolean");
    close = c->get<bool>();
  }
  return at_path(path, [&] { return close ? closure(e, seed) : OrthoRel::from_pairs(e, seed); });
}

Json write_w(const MorphismSet& w, const CategoryPtr& cat, const Bundle& b, const std::string& part) {
  if (w.elements) {
    if (cat->enumerated() && w.elements->size() == cat->morphisms().size()) return "all";
    Json list = Json::array();
    for (const auto& f : *w.elements) list.push_back(morphism_ref(*cat, f));
    return list;
  }
  if (w.description.rfind("all morphisms", 0) == 0) return "all";
  return Json{{"builtin", builtin_ref(b, part)}};
}

MorphismSet read_w(const Json& doc, const CategoryPtr& cat, const std::string& path) {
  if (doc.is_string()) {
    if (doc.get<std::string>() != "all") fail(path, "expected \"all\" or a list of morphisms");
    return MorphismSet::all(cat);
  }
  if (doc.is_object()) {
    const std::string ref = str(member(doc, "builtin", path), sub(path, "builtin"));
    Bundle src = builtin_bundle(ref, path);
    if (src.w) return *src.w;
    if (src.reflective) return src.reflective->w;
    fail(path, "builtin '" + ref + "' has no W");
  }
  std::vector<Morphism> list;
  for (std::size_t i = 0; i < array(doc, path).size(); ++i)
    list.push_back(at_path(sub(path, i), [&] { return cat->parse_morphism(str(doc[i], sub(path, i))); }));
  return MorphismSet::of(cat, std::move(list));
}

Json write_functor(const Functor& f) {
  auto src = as_enumerated(f.source, "functor output");
  Json objects = Json::object(), morphisms = Json::object();
  for (const auto& x : src->objects()) objects[x.id] = f(x).id;
  for (std::size_t m = 0; m < src->morphisms().size(); ++m)
    if (!src->is_identity(m)) morphisms[src->morphism(m).id] = morphism_ref(*f.target, f(src->morphism(m)));
  return Json{{"objects", objects}, {"morphisms", morphisms}};
}

std::map<std::string, std::string> string_table(const Json* doc, const std::string& path) {
  std::map<std::string, std::string> out;
  if (!doc) return out;
  for (const auto& [k, v] : object(*doc, path).items()) out[k] = str(v, sub(path, k));
  return out;
}

Functor read_functor(const Json& doc, std::string name, const CategoryPtr& source, const CategoryPtr& target,
                     const std::string& path) {
  auto src = at_path(path, [&] { return as_enumerated(source, "table functor source"); });
  auto objects = string_table(&member(doc, "objects", path), sub(path, "objects"));
  auto morphisms = string_table(optional_member(doc, "morphisms", path), sub(path, "morphisms"));
  return at_path(path, [&] { return functor_from_tables(std::move(name), src, target, objects, morphisms); });
}

Json write_components(const NatTransf& t, const CategoryPtr& over, const CategoryPtr& in) {
  Json j = Json::object();
  for (const auto& x : over->objects())
    if (auto c = t.component(x)) j[x.id] = morphism_ref(*in, *c);
  return j;
}

std::function<std::optional<Morphism>(const Object&)> read_components(const Json& doc, const CategoryPtr& in,
                                                                      const std::string& path) {
  auto table = std::make_shared<std::map<std::string, Morphism>>();
  for (const auto& [x, ref] : object(doc, path).items())
    table->emplace(x, at_path(sub(path, x), [&] { return in->parse_morphism(str(ref, sub(path, x))); }));
  return [table](const Object& x) -> std::optional<Morphism> {
    auto it = table->find(x.id);
    if (it == table->end()) return std::nullopt;
    return it->second;
  };
}

// ---------------------------------------------------------------------------
// Models

Json write_model(const AqftModel& m, const Bundle& b, std::map<const DgAlgebra*, std::string>& names, Json& algebras) {
  if (!m.base.cat->enumerated()) return Json{{"builtin", builtin_ref(b, "model/" + m.name)}};
  auto cat = as_enumerated(m.base.cat, "model output");
  auto name_of = [&](const DgAlgebraPtr& a, const std::string& suggestion) {
    auto it = names.find(a.get());
    if (it != names.end()) return it->second;
    std::string n = suggestion;
    while (algebras.contains(n)) n += "'";
    names.emplace(a.get(), n);
    algebras[n] = write_algebra(*a);
    return n;
  };
  Json objects = Json::object(), actions = Json::object();
  for (const auto& x : cat->objects()) objects[x.id] = name_of(m.algebra(x), m.name + "(" + x.id + ")");
  for (std::size_t i = 0; i < cat->morphisms().size(); ++i) {
    if (cat->is_identity(i)) continue;
    const auto& f = cat->morphism(i);
    actions[f.id] = write_chain_map(m.action(f).map);
  }
  return Json{{"name", m.name}, {"objects", objects}, {"actions", actions}};
}

AqftModel read_model(const Json& doc, const OrthoCat& base, const std::map<std::string, DgAlgebraPtr>& algebras,
                     const std::string& path) {
  if (const Json* b = optional_member(doc, "builtin", path)) {
    const std::string ref = str(*b, sub(path, "builtin"));
    auto parts = split_ref(ref);
    if (parts.size() != 3 || parts[1] != "model") fail(path, "expected builtin '<entry>/model/<name>'");
    Bundle src = builtin_bundle(ref, path);
    return at_path(path, [&] { return src.model(parts[2]); });
  }
  const std::string name = str(member(doc, "name", path), sub(path, "name"));
  auto cat = at_path(path, [&] { return as_enumerated(base.cat, "table model"); });
  std::map<std::string, DgAlgebraPtr> assigned;
  const std::string op = sub(path, "objects");
  for (const auto& [x, a] : object(member(doc, "objects", path), op).items()) {
    const std::string an = str(a, sub(op, x));
    auto it = algebras.find(an);
    if (it == algebras.end()) fail(sub(op, x), "unknown algebra '" + an + "'");
    assigned[x] = it->second;
  }
  for (const auto& x : cat->objects())
    if (!assigned.count(x.id)) fail(op, "no algebra for object '" + x.id + "'");
  std::map<std::string, DgAlgebraMap> actions;
  const std::string ap = sub(path, "actions");
  if (const Json* acts = optional_member(doc, "actions", path))
    for (const auto& [fid, comps] : object(*acts, ap).items()) {
      const std::string p = sub(ap, fid);
      const Morphism f = at_path(p, [&] { return cat->parse_morphism(fid); });
      DgAlgebraPtr s = assigned.at(f.src.id), t = assigned.at(f.tgt.id);
      std::map<int, Matrix> m;
      for (const auto& [key, rows] : object(comps, p).items()) {
        const int n = degree_key(key, sub(p, key));
        m.emplace(n, read_matrix(rows, t->complex().dim(n), s->complex().dim(n), sub(p, key)));
      }
      actions.emplace(fid, at_path(p, [&] { return make_dga_map(s, t, m); }));
    }
  return at_path(path, [&] { return model_from_tables(name, base, assigned, actions); });
}

// ---------------------------------------------------------------------------
// Reflective data

Json write_reflective(const ReflectiveData& r, const Bundle& b) {
  if (!r.base.cat->enumerated() || !r.localized.cat->enumerated())
    return Json{{"builtin", builtin_ref(b, "reflective")}};
  Json j;
  j["localized"] = Json{{"category", write_category(r.localized.cat)},
                        {"orthogonality", write_orthogonality(r.localized.rel, b, "localized-orthogonality")}};
  j["left"] = write_functor(r.adj.left);
  j["right"] = write_functor(r.adj.right);
  j["unit"] = write_components(r.adj.unit, r.base.cat, r.base.cat);
  j["counit"] = write_components(r.adj.counit, r.localized.cat, r.localized.cat);
  j["w"] = write_w(r.w, r.base.cat, b, "reflective-w");
  return j;
}

ReflectiveData read_reflective_doc(const Json& doc, const OrthoCat& base, const std::string& path) {
  if (const Json* b = optional_member(doc, "builtin", path)) {
    const std::string ref = str(*b, sub(path, "builtin"));
    Bundle src = builtin_bundle(ref, path);
    if (!src.reflective) fail(path, "builtin '" + ref + "' has no reflective data");
    if (!same_category(src.reflective->base.cat, base.cat))
      fail(path, "builtin reflective data lives on '" + src.reflective->base.cat->name() + "', not on '" +
                     base.cat->name() + "'");
    return *src.reflective;
  }
  const std::string lp = sub(path, "localized");
  const Json& loc = member(doc, "localized", path);
  CategoryPtr d = read_category(member(loc, "category", lp), sub(lp, "category"));
  ReflectiveData r;
  r.base = base;
  r.adj.left = read_functor(member(doc, "left", path), "L", base.cat, d, sub(path, "left"));
  r.adj.right = read_functor(member(doc, "right", path), "ι", d, base.cat, sub(path, "right"));
  const Json* lrel = optional_member(loc, "orthogonality", lp);
  r.localized = OrthoCat{d, lrel ? read_orthogonality(lrel, d, sub(lp, "orthogonality"))
                                 : at_path(lp, [&] { return localized_orthogonality(r.adj.left, base.rel); })};
  r.adj.unit.name = "η";
  r.adj.unit.source = identity_functor(base.cat);
  r.adj.unit.target = compose(r.adj.right, r.adj.left);
  r.adj.unit.component = read_components(member(doc, "unit", path), base.cat, sub(path, "unit"));
  r.adj.counit.name = "ε";
  r.adj.counit.source = compose(r.adj.left, r.adj.right);
  r.adj.counit.target = identity_functor(d);
  r.adj.counit.component = read_components(member(doc, "counit", path), d, sub(path, "counit"));
  if (const Json* w = optional_member(doc, "w", path))
    r.w = read_w(*w, base.cat, sub(path, "w"));
  else
    r.w = at_path(path, [&] { return derive_w(r.adj.left); });
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public interface

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::Schema, source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                       ": invalid JSON");
  }
}

Json write_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix read_matrix(const Json& doc, std::size_t rows, std::size_t cols, const std::string& path) {
  const Json& r = array(doc, path);
  if (r.size() != rows) fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(r.size()));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string p = sub(path, i);
    const Json& row = array(r[i], p);
    if (row.size() != cols)
      fail(p, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rational(row[j], sub(p, j)));
  }
  return m;
}

Json write_complex(const ChainComplex& x) {
  Json degrees = Json::object(), d = Json::object();
  for (const auto& [n, dim] : x.dims()) degrees[std::to_string(n)] = dim;
  for (const auto& [n, dim] : x.dims()) {
    (void)dim;
    Matrix dn = x.differential(n);
    if (!dn.is_zero()) d[std::to_string(n)] = write_matrix(dn);
  }
  return Json{{"degrees", degrees}, {"d", d}};
}

ChainComplex read_complex(const Json& doc, const std::string& path) {
  std::map<int, std::size_t> dims;
  const std::string dp = sub(path, "degrees");
  for (const auto& [k, v] : object(member(doc, "degrees", path), dp).items())
    dims[degree_key(k, sub(dp, k))] = natural(v, sub(dp, k));
  auto dim = [&](int n) {
    auto it = dims.find(n);
    return it == dims.end() ? std::size_t{0} : it->second;
  };
  std::map<int, Matrix> d;
  if (const Json* dj = optional_member(doc, "d", path)) {
    const std::string p = sub(path, "d");
    for (const auto& [k, v] : object(*dj, p).items()) {
      const int n = degree_key(k, sub(p, k));
      d.emplace(n, read_matrix(v, dim(n - 1), dim(n), sub(p, k)));
    }
  }
  return at_path(path, [&] { return ChainComplex(dims, d); });
}

Json write_chain_map(const ChainMap& f) {
  Json j = Json::object();
  for (int n : f.support()) {
    Matrix c = f.component(n);
    if (!c.is_zero()) j[std::to_string(n)] = write_matrix(c);
  }
  return j;
}

Json write_algebra(const DgAlgebra& a) {
  Json j = write_complex(a.complex());
  Json unit = Json::array();
  for (std::size_t i = 0; i < a.complex().dim(0); ++i) {
    auto it = a.unit().find(i);
    unit.push_back(rational_json(it == a.unit().end() ? Rational(0) : it->second));
  }
  j["unit"] = unit;
  Json products = Json::array();
  for (const auto& [pair, v] : a.products()) {
    const int deg = pair.first.degree + pair.second.degree;
    Json value = Json::array();
    for (std::size_t i = 0; i < a.complex().dim(deg); ++i) {
      auto it = v.find(i);
      value.push_back(rational_json(it == v.end() ? Rational(0) : it->second));
    }
    products.push_back(Json{{"a", Json::array({pair.first.degree, pair.first.index})},
                            {"b", Json::array({pair.second.degree, pair.second.index})},
                            {"value", value}});
  }
  j["products"] = products;
  if (!a.labels.empty()) {
    Json labels = Json::object();
    for (const auto& [n, names] : a.labels) labels[std::to_string(n)] = names;
    j["labels"] = labels;
  }
  return j;
}

DgAlgebraPtr read_algebra(const Json& doc, const std::string& path) {
  ChainComplex x = read_complex(doc, path);
  SparseVector unit;
  const std::string up = sub(path, "unit");
  const Json& u = array(member(doc, "unit", path), up);
  if (u.size() != x.dim(0)) fail(up, "expected " + std::to_string(x.dim(0)) + " entries");
  for (std::size_t i = 0; i < u.size(); ++i) {
    Rational c = rational(u[i], sub(up, i));
    if (c != 0) unit[i] = c;
  }
  std::map<std::pair<Basis, Basis>, SparseVector> products;
  auto basis = [&](const Json& j, const std::string& p) {
    const Json& b = array(j, p);
    if (b.size() != 2 || !b[0].is_number_integer()) fail(p, "expected a basis element [degree, index]");
    Basis out{b[0].get<int>(), natural(b[1], sub(p, 1))};
    if (out.index >= x.dim(out.degree)) fail(p, "basis element out of range");
    return out;
  };
  if (const Json* ps = optional_member(doc, "products", path)) {
    const std::string pp = sub(path, "products");
    for (std::size_t i = 0; i < array(*ps, pp).size(); ++i) {
      const std::string p = sub(pp, i);
      const Json& e = (*ps)[i];
      Basis a = basis(member(e, "a", p), sub(p, "a"));
      Basis b = basis(member(e, "b", p), sub(p, "b"));
      const int deg = a.degree + b.degree;
      const std::string vp = sub(p, "value");
      const Json& v = array(member(e, "value", p), vp);
      if (v.size() != x.dim(deg)) fail(vp, "expected " + std::to_string(x.dim(deg)) + " entries");
      SparseVector sv;
      for (std::size_t k = 0; k < v.size(); ++k) {
        Rational c = rational(v[k], sub(vp, k));
        if (c != 0) sv[k] = c;
      }
      products[{a, b}] = sv;
    }
  }
  auto alg = at_path(path, [&] { return std::make_shared<DgAlgebra>(x, unit, products); });
  if (const Json* ls = optional_member(doc, "labels", path))
    for (const auto& [k, names] : object(*ls, sub(path, "labels")).items()) {
      const std::string p = sub(sub(path, "labels"), k);
      std::vector<std::string> v;
      for (std::size_t i = 0; i < array(names, p).size(); ++i) v.push_back(str(names[i], sub(p, i)));
      alg->labels[degree_key(k, p)] = v;
    }
  Report laws = check_dga(*alg);
  for (const auto& v : laws.verdicts)
    if (!v.passed) fail(path, "not a dg-algebra: " + v.name + (v.witness ? " (" + *v.witness + ")" : ""));
  return alg;
}

Json write_bundle(const Bundle& b) {
  Json j;
  j["schema"] = kSchema;
  j["name"] = b.name;
  if (!b.origin.empty()) j["origin"] = b.origin;
  j["category"] = write_category(b.base.cat);
  j["orthogonality"] = write_orthogonality(b.base.rel, b, "orthogonality");
  if (b.w) j["w"] = write_w(*b.w, b.base.cat, b, "w");
  if (b.localization) {
    const Functor& l = b.localization->functor;
    Json loc = write_functor(l);
    Json out;
    out["target"] = write_category(l.target);
    out["objects"] = loc["objects"];
    out["morphisms"] = loc["morphisms"];
    out["w"] = write_w(b.localization->w, b.base.cat, b, "localization-w");
    j["localization"] = out;
  }
  if (b.reflective) j["reflective"] = write_reflective(*b.reflective, b);
  if (!b.models.empty()) {
    std::map<const DgAlgebra*, std::string> names;
    Json algebras = Json::object();
    Json models = Json::array();
    for (const auto& m : b.models) models.push_back(write_model(m, b, names, algebras));
    j["algebras"] = algebras;
    j["models"] = models;
  }
  return j;
}

Bundle read_bundle(const Json& doc) {
  const std::string path = "$";
  const std::string schema = str(member(doc, "schema", path), "$.schema");
  if (schema != kSchema) fail("$.schema", "unsupported schema '" + schema + "', expected '" + kSchema + "'");
  Bundle b;
  b.name = str(member(doc, "name", path), "$.name");
  if (const Json* o = optional_member(doc, "origin", path)) b.origin = str(*o, "$.origin");
  CategoryPtr cat = read_category(member(doc, "category", path), "$.category");
  b.base = OrthoCat{cat, read_orthogonality(optional_member(doc, "orthogonality", path), cat, "$.orthogonality")};
  if (const Json* w = optional_member(doc, "w", path)) b.w = read_w(*w, cat, "$.w");
  if (const Json* loc = optional_member(doc, "localization", path)) {
    const std::string lp = "$.localization";
    CategoryPtr target = read_category(member(*loc, "target", lp), lp + ".target");
    Functor l = read_functor(*loc, "L", cat, target, lp);
    MorphismSet w = MorphismSet::all(cat);
    if (const Json* lw = optional_member(*loc, "w", lp)) w = read_w(*lw, cat, lp + ".w");
    b.localization = Localization{l, w};
  }
  if (const Json* r = optional_member(doc, "reflective", path))
    b.reflective = read_reflective_doc(*r, b.base, "$.reflective");
  std::map<std::string, DgAlgebraPtr> algebras;
  if (const Json* as = optional_member(doc, "algebras", path))
    for (const auto& [name, a] : object(*as, "$.algebras").items()) algebras[name] = read_algebra(a, "$.algebras." + name);
  if (const Json* ms = optional_member(doc, "models", path)) {
    for (std::size_t i = 0; i < array(*ms, "$.models").size(); ++i)
      b.models.push_back(read_model((*ms)[i], b.base, algebras, sub("$.models", i)));
  }
  return b;
}

ReflectiveData read_reflective(const Json& doc, const Bundle& bundle) {
  if (doc.is_object() && doc.contains("schema")) {
    if (!doc.contains("reflective")) fail("$", "bundle has no 'reflective' part");
    return read_reflective_doc(doc["reflective"], bundle.base, "$.reflective");
  }
  return read_reflective_doc(doc, bundle.base, "$");
}

Json write_verdict(const Verdict& v) {
  Json j;
  j["name"] = v.name;
  j["passed"] = v.passed;
  j["coverage"] = v.coverage.describe();
  if (v.witness) j["witness"] = *v.witness;
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

Json write_report(const Report& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(write_verdict(v));
  return Json{{"passed", r.passed()}, {"coverage", r.coverage().describe()}, {"verdicts", verdicts}};
}

namespace {

void render(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    // verdict objects read best on one line
    if (j.contains("name") && j.contains("passed") && j["passed"].is_boolean()) {
      out << prefix << (prefix.empty() ? "" : ": ") << (j["passed"].get<bool>() ? "PASS " : "FAIL ")
          << j["name"].get<std::string>();
      if (j.contains("coverage")) out << " (" << j["coverage"].get<std::string>() << ")";
      if (j.contains("witness")) out << " witness " << j["witness"].get<std::string>();
      if (j.contains("detail")) out << " - " << j["detail"].get<std::string>();
      out << "\n";
      return;
    }
    for (const auto& [k, v] : j.items()) render(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array()) {
    bool scalar = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (scalar) {
      out << prefix << ": [";
      bool first = true;
      for (const auto& x : j) {
        out << (first ? "" : ", ") << (x.is_string() ? x.get<std::string>() : x.dump());
        first = false;
      }
      out << "]\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream out;
  render(doc, "", out);
  return out.str();
}

}  // namespace aqft
