// aqft-kit: command-line front end over JSON bundles.
//
// Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 input error.

#include "aqft/aqft.hpp"
#include "aqft/bar.hpp"
#include "aqft/corpus.hpp"
#include "aqft/errors.hpp"
#include "aqft/localize.hpp"
#include "aqft/operad.hpp"
#include "aqft/ortho.hpp"
#include "aqft/serialize.hpp"
#include "aqft/strictify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace aqft;

namespace {

struct Options {
  std::string format = "json";
  std::uint64_t seed = SampleConfig{}.seed;
  std::size_t samples = SampleConfig{}.samples;
  std::string out;
  std::string input = "-";
  std::string model;

  SampleConfig cfg() const { return SampleConfig{samples, seed}; }
};

struct Outcome {
  Json doc;
  bool passed = true;
};

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Bundle load_bundle(const std::string& path) {
  return read_bundle(parse_json(read_text(path), path == "-" ? "<stdin>" : path));
}

std::vector<const AqftModel*> selected_models(const Bundle& b, const std::string& name) {
  std::vector<const AqftModel*> out;
  if (!name.empty()) {
    out.push_back(&b.model(name));
    return out;
  }
  for (const auto& m : b.models) out.push_back(&m);
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "bundle '" + b.name + "' has no models");
  return out;
}

std::pair<int, int> parse_range(const std::string& text, const std::string& what) {
  auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, what + " expects a:b, got '" + text + "'");
  }
}

Json morphism_json(const Morphism& f) { return f.describe(); }

Json header(const std::string& command, const Bundle& b) { return Json{{"command", command}, {"bundle", b.name}}; }

const Functor& localization_functor(const Bundle& b) {
  if (b.localization) return b.localization->functor;
  if (b.reflective) return b.reflective->adj.left;
  throw Error(ErrorKind::InvalidArgument, "bundle '" + b.name + "' has no localization or reflective data");
}

MorphismSet bundle_w(const Bundle& b, const std::string& spec) {
  if (spec == "all") return MorphismSet::all(b.base.cat);
  if (!spec.empty()) {
    std::vector<Morphism> list;
    std::stringstream ss(spec);
    std::string id;
    while (std::getline(ss, id, ','))
      if (!id.empty()) list.push_back(b.base.cat->parse_morphism(id));
    return MorphismSet::of(b.base.cat, list);
  }
  if (b.w) return *b.w;
  if (b.reflective) return b.reflective->w;
  if (b.localization) return b.localization->w;
  return MorphismSet::all(b.base.cat);
}

Json matrices_json(const std::map<int, Matrix>& m) {
  Json j = Json::object();
  for (const auto& [n, mat] : m) j[std::to_string(n)] = write_matrix(mat);
  return j;
}

// ---------------------------------------------------------------------------
// Commands

Outcome check_ortho(const Options& o) {
  Bundle b = load_bundle(o.input);
  Report r = validate(b.base.rel, o.cfg());
  if (b.base.rel.is_explicit() && b.base.cat->enumerated()) {
    Verdict closed{"closed under closure", closure(b.base.rel) == b.base.rel, {}, std::nullopt, {}};
    closed.coverage.checked = b.base.rel.pairs().size();
    r.add(closed);
  }
  Json doc = header("check-ortho", b);
  doc["pairs"] = b.base.rel.is_explicit() ? b.base.rel.pairs().size() : 0;
  doc["report"] = write_report(r);
  return {doc, r.passed()};
}

Outcome operad_equal(const Options& o, const std::string& lhs, const std::string& rhs, bool ignore_rel) {
  Bundle b = load_bundle(o.input);
  const Category& cat = *b.base.cat;
  OperadOp a = parse_operation(cat, lhs), c = parse_operation(cat, rhs);
  OrthoRel rel = ignore_rel ? OrthoRel::empty(b.base.cat) : b.base.rel;
  const bool eq = op_equal(a, c, rel);
  Json doc = header("operad-equal", b);
  doc["orthogonality"] = ignore_rel ? "ignored" : "bundle";
  doc["lhs"] = a.to_string();
  doc["rhs"] = c.to_string();
  doc["equal"] = eq;
  doc["canonical_lhs"] = canonical_form(a, rel).to_string();
  doc["canonical_rhs"] = canonical_form(c, rel).to_string();
  return {doc, eq};
}

Outcome operad_compose(const Options& o, const std::string& outer, const std::vector<std::string>& inners) {
  Bundle b = load_bundle(o.input);
  const Category& cat = *b.base.cat;
  OperadOp out = parse_operation(cat, outer);
  std::vector<OperadOp> in;
  for (const auto& s : inners) in.push_back(parse_operation(cat, s));
  OperadOp composite = op_compose(cat, out, in);
  Json doc = header("operad-compose", b);
  doc["composite"] = composite.to_string();
  doc["canonical"] = canonical_form(composite, b.base.rel).to_string();
  return {doc, true};
}

ReflectiveData reflective_for(const Bundle& b, const std::string& path) {
  if (!path.empty()) return read_reflective(parse_json(read_text(path), path), b);
  if (!b.reflective) throw Error(ErrorKind::InvalidArgument, "bundle '" + b.name + "' has no reflective data");
  return *b.reflective;
}

Outcome check_reflective(const Options& o, const std::string& reflective) {
  Bundle b = load_bundle(o.input);
  Certificate cert = certify_reflective(reflective_for(b, reflective), o.cfg());
  Json doc = header("check-reflective", b);
  doc["verified"] = cert.verified;
  doc["status"] = cert.status;
  doc["report"] = write_report(cert.report);
  return {doc, cert.verified};
}

Outcome derive_w_cmd(const Options& o) {
  Bundle b = load_bundle(o.input);
  MorphismSet w = derive_w(localization_functor(b));
  Json doc = header("derive-w", b);
  doc["description"] = w.description;
  if (w.elements) {
    Json list = Json::array();
    for (const auto& f : *w.elements) list.push_back(morphism_json(f));
    doc["count"] = w.elements->size();
    doc["morphisms"] = list;
  }
  return {doc, true};
}

Outcome check_aqft_cmd(const Options& o) {
  Bundle b = load_bundle(o.input);
  Json doc = header("check-aqft", b);
  Json models = Json::array();
  bool ok = true;
  for (const auto* m : selected_models(b, o.model)) {
    Report r = check_aqft(*m, o.cfg());
    ok = ok && r.passed();
    models.push_back(Json{{"model", m->name}, {"report", write_report(r)}});
  }
  doc["models"] = models;
  return {doc, ok};
}

Json time_slice_json(const TimeSliceResult& t) {
  Json j{{"verdict", to_string(t.kind)}, {"coverage", t.coverage.describe()}};
  if (t.witness) j["witness"] = morphism_json(*t.witness);
  if (!t.detail.empty()) j["detail"] = t.detail;
  return j;
}

Outcome time_slice_cmd(const Options& o, const std::string& w_spec) {
  Bundle b = load_bundle(o.input);
  MorphismSet w = bundle_w(b, w_spec);
  Json doc = header("time-slice", b);
  doc["w"] = w.description;
  Json models = Json::array();
  bool ok = true;
  for (const auto* m : selected_models(b, o.model)) {
    TimeSliceResult t = time_slice_verdict(*m, w, o.cfg());
    ok = ok && t.kind != TimeSlice::Neither;
    Json j = time_slice_json(t);
    j["model"] = m->name;
    models.push_back(j);
  }
  doc["models"] = models;
  return {doc, ok};
}

Outcome strictify_cmd(const Options& o, const std::string& reflective) {
  Bundle b = load_bundle(o.input);
  ReflectiveData data = reflective_for(b, reflective);
  Json doc = header("strictify", b);
  Json results = Json::array();
  bool ok = true;
  for (const auto* m : selected_models(b, o.model)) {
    StrictificationResult res = strictify_reflective(*m, data, o.cfg());
    Verdict idem = check_idempotence(res, data, o.cfg());
    res.certificate.add(idem);
    ok = ok && res.certificate.passed();
    Json units = Json::array();
    for (const auto& u : res.units) {
      Json uj{{"object", u.object.id},
              {"eta", morphism_json(u.eta)},
              {"quasi_iso", u.quasi_iso.quasi_iso},
              {"iso", u.iso},
              {"components", write_chain_map(u.map.map)}};
      if (!u.quasi_iso.detail.empty()) uj["detail"] = u.quasi_iso.detail;
      units.push_back(uj);
    }
    Json r{{"input", m->name},
           {"output", res.output.name},
           {"input_time_slice", time_slice_json(res.input_verdict)},
           {"output_time_slice", time_slice_json(res.output_verdict)},
           {"unit_coverage", res.unit_coverage.describe()},
           {"units", units},
           {"certificate", write_report(res.certificate)}};
    if (b.base.cat->enumerated()) {
      Bundle out;
      out.name = res.output.name;
      out.base = b.base;
      out.models.push_back(res.output);
      r["output_bundle"] = write_bundle(out);
    }
    results.push_back(r);
  }
  doc["results"] = results;
  return {doc, ok};
}

Outcome rce_cmd(const Options& o, const std::string& mode_text, long bound) {
  if (mode_text != "strict" && mode_text != "homology")
    throw Error(ErrorKind::InvalidArgument, "--mode must be strict or homology");
  const RceMode mode = mode_text == "strict" ? RceMode::Strict : RceMode::Homology;
  Bundle b = load_bundle(o.input);
  Json doc = header("rce", b);
  doc["mode"] = mode_text;
  if (b.localization) doc["loop_normalizes_to"] = zigzag_normalize(rce_loop(*b.base.cat), *b.localization).id;
  Json models = Json::array();
  bool ok = true;
  for (const auto* m : selected_models(b, o.model)) {
    RceAction act = rce_action(*m, mode);
    Report r;
    r.add(act.group_law(bound));
    if (mode == RceMode::Homology && time_slice_verdict(*m, MorphismSet::all(b.base.cat)).kind == TimeSlice::Strict)
      r.add(rce_modes_agree(*m));
    ok = ok && r.passed();
    Json powers = Json::object();
    for (long n = -2; n <= 2; ++n) powers[std::to_string(n)] = matrices_json(act.power(n));
    models.push_back(Json{{"model", m->name},
                          {"generator", matrices_json(act.generator)},
                          {"powers", powers},
                          {"report", write_report(r)}});
  }
  doc["models"] = models;
  return {doc, ok};
}

Outcome bar_cmd(const Options& o, std::size_t depth, std::size_t weight, const std::string& window) {
  Bundle b = load_bundle(o.input);
  Json doc = header("bar", b);
  doc["depth"] = depth;
  doc["weight"] = weight;
  Json models = Json::array();
  bool ok = true;
  for (const auto* m : selected_models(b, o.model)) {
    BarResolution res = bar_truncated(*m, depth, weight);
    const BarObject& first = *res.objects.front().second;
    auto [lo, hi] = window.empty() ? std::pair<int, int>{first.lowest_degree(), first.trusted_top()}
                                   : parse_range(window, "--window");
    Report simplicial = check_simplicial(res);
    TotResult tot = tot_normalized(res, lo, hi);
    ok = ok && simplicial.passed() && tot.quasi_iso();
    Json comps = Json::array();
    for (const auto& c : tot.components) {
      Json dims = Json::object();
      for (const auto& [n, d] : c.tot.dims()) dims[std::to_string(n)] = d;
      Json hom = Json::object();
      for (const auto& [n, d] : homology(c.tot)) hom[std::to_string(n)] = d;
      Json cj{{"object", c.object},
              {"trusted_window", std::to_string(c.trusted_lo) + ":" + std::to_string(c.trusted_hi)},
              {"tot_dims", dims},
              {"tot_homology", hom},
              {"quasi_iso", c.verdict.quasi_iso}};
      if (!c.verdict.detail.empty()) cj["detail"] = c.verdict.detail;
      comps.push_back(cj);
    }
    models.push_back(Json{{"model", m->name},
                          {"window", std::to_string(tot.lo) + ":" + std::to_string(tot.hi)},
                          {"simplicial", write_report(simplicial)},
                          {"components", comps}});
  }
  doc["models"] = models;
  return {doc, ok};
}

Outcome what_generators_cmd(const Options& o, const std::string& r_range, std::size_t weight,
                            const std::string& w_spec) {
  Bundle b = load_bundle(o.input);
  auto [lo, hi] = parse_range(r_range, "--r");
  MorphismSet w = bundle_w(b, w_spec);
  auto gens = what_generators(b.base, w, lo, hi, weight);
  Json doc = header("what-generators", b);
  Json list = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    Report r = check_generator(*b.base.cat, g);
    if (i + 1 < gens.size() && gens[i + 1].f == g.f && gens[i + 1].r == g.r + 1)
      r.add(shift_consistency(g, gens[i + 1]));
    ok = ok && r.passed();
    Json comps = Json::object();
    for (const auto& [x, map] : g.components) {
      Json dims = Json::object();
      for (const auto& [n, d] : map.source->complex().dims()) dims[std::to_string(n)] = d;
      comps[x] = Json{{"source_dims", dims}, {"map", write_chain_map(map.map)}};
    }
    list.push_back(Json{{"generator", g.describe()}, {"components", comps}, {"report", write_report(r)}});
  }
  doc["generators"] = list;
  return {doc, ok};
}

Outcome corpus_list() {
  Json list = Json::array();
  for (const auto& name : corpus_names()) list.push_back(Json{{"name", name}, {"description", corpus_entry(name).description}});
  return {Json{{"command", "corpus list"}, {"entries", list}}, true};
}

Outcome corpus_check(const Options& o, const std::string& name) {
  CorpusEntry e = corpus_entry(name);
  Json checks = Json::array();
  bool ok = true;
  for (const auto& [op, expected] : e.expected) {
    std::string got = corpus_outcome(e, op, o.cfg());
    ok = ok && got == expected;
    checks.push_back(Json{{"operation", op}, {"expected", expected}, {"got", got}, {"passed", got == expected}});
  }
  return {Json{{"command", "corpus check"}, {"entry", name}, {"checks", checks}}, ok};
}

void emit(const Options& o, const Json& doc, bool raw_bundle) {
  std::string text;
  if (o.format == "text" && !raw_bundle)
    text = render_text(doc);
  else
    text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.out + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks and constructions for algebraic quantum field theories on orthogonal categories"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool with_input = true) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", o.seed, "Seed for sampled checks");
    sub->add_option("--samples", o.samples, "Sample count for parametric categories");
    sub->add_option("--out", o.out, "Write the report to this path instead of stdout");
    if (with_input) sub->add_option("bundle", o.input, "Bundle JSON path, '-' for stdin");
  };

  auto* ortho = app.add_subcommand("check-ortho", "Validate the orthogonality relation of a bundle");
  common(ortho);

  std::string lhs, rhs, outer;
  std::vector<std::string> inners;
  bool ignore_rel = false;
  auto* oeq = app.add_subcommand("operad-equal", "Decide equality of two operations");
  common(oeq);
  oeq->add_option("--lhs", lhs, "Operation, e.g. \"[perm=2 1; f1,f2 -> N]\"")->required();
  oeq->add_option("--rhs", rhs, "Operation")->required();
  oeq->add_flag("--no-orthogonality", ignore_rel, "Compare in the operad of the empty relation");

  auto* ocomp = app.add_subcommand("operad-compose", "Operadic composition");
  common(ocomp);
  ocomp->add_option("--outer", outer, "Outer operation")->required();
  ocomp->add_option("--inner", inners, "Inner operations, one per input of the outer one");

  std::string reflective;
  auto* crefl = app.add_subcommand("check-reflective", "Certify reflective localization data");
  common(crefl);
  crefl->add_option("--reflective", reflective, "Reflective data JSON (default: the bundle's)");

  auto* dw = app.add_subcommand("derive-w", "Morphisms inverted by the localization functor");
  common(dw);

  auto* caqft = app.add_subcommand("check-aqft", "Functoriality, dg-algebra maps and Einstein causality");
  common(caqft);
  caqft->add_option("--model", o.model, "Only this model");

  std::string w_spec;
  auto* ts = app.add_subcommand("time-slice", "Strict / homotopy-only / neither verdict per model");
  common(ts);
  ts->add_option("--w", w_spec, "\"all\" or comma-separated morphism ids (default: the bundle's W)");
  ts->add_option("--model", o.model, "Only this model");

  auto* st = app.add_subcommand("strictify", "Reflective strictification with certificate");
  common(st);
  st->add_option("--reflective", reflective, "Reflective data JSON (default: the bundle's)");
  st->add_option("--model", o.model, "Only this model");

  std::string mode = "homology";
  long bound = 5;
  auto* rce = app.add_subcommand("rce", "Relative Cauchy evolution as an action of the integers");
  common(rce);
  rce->add_option("--mode", mode, "strict or homology")->check(CLI::IsMember({"strict", "homology"}));
  rce->add_option("--bound", bound, "Group law checked for |m|, |n| <= bound");
  rce->add_option("--model", o.model, "Only this model");

  std::size_t depth = 3, weight = 3;
  std::string window;
  auto* bar = app.add_subcommand("bar", "Truncated cotriple resolution and its normalized totalization");
  common(bar);
  bar->add_option("--depth", depth, "Simplicial depth K");
  bar->add_option("--weight", weight, "Tensor weight truncation w");
  bar->add_option("--window", window, "Degree window a:b (default: the trusted window)");
  bar->add_option("--model", o.model, "Only this model");

  std::string r_range = "0:0";
  std::size_t gen_weight = 1;
  auto* wg = app.add_subcommand("what-generators", "Generators i_!(y(f)[r]) for f in W");
  common(wg);
  wg->add_option("--r", r_range, "Shift range a:b");
  wg->add_option("--weight", gen_weight, "Tensor weight truncation");
  wg->add_option("--w", w_spec, "\"all\" or comma-separated morphism ids (default: the bundle's W)");

  std::string entry;
  int disk_m = 1, disk_levels = 2;
  auto* corpus = app.add_subcommand("corpus", "Built-in examples");
  corpus->require_subcommand(1);
  auto* clist = corpus->add_subcommand("list", "List entries");
  common(clist, false);
  auto* cemit = corpus->add_subcommand("emit", "Write an entry as a bundle");
  common(cemit, false);
  cemit->add_option("name", entry, "Entry name")->required();
  cemit->add_option("--m", disk_m, "Disk: dimension");
  cemit->add_option("--levels", disk_levels, "Disk: subdivision levels");
  auto* ccheck = corpus->add_subcommand("check", "Recompute the expected outcomes of an entry");
  common(ccheck, false);
  ccheck->add_option("name", entry, "Entry name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Outcome r;
    bool raw = false;
    if (*ortho) r = check_ortho(o);
    else if (*oeq) r = operad_equal(o, lhs, rhs, ignore_rel);
    else if (*ocomp) r = operad_compose(o, outer, inners);
    else if (*crefl) r = check_reflective(o, reflective);
    else if (*dw) r = derive_w_cmd(o);
    else if (*caqft) r = check_aqft_cmd(o);
    else if (*ts) r = time_slice_cmd(o, w_spec);
    else if (*st) r = strictify_cmd(o, reflective);
    else if (*rce) r = rce_cmd(o, mode, bound);
    else if (*bar) r = bar_cmd(o, depth, weight, window);
    else if (*wg) r = what_generators_cmd(o, r_range, gen_weight, w_spec);
    else if (*clist) r = corpus_list();
    else if (*ccheck) r = corpus_check(o, entry);
    else if (*cemit) {
      CorpusEntry e = entry == "disk" ? build_disk(disk_m, disk_levels) : corpus_entry(entry);
      r = Outcome{write_bundle(e.bundle), true};
      raw = true;
    }
    emit(o, r.doc, raw);
    return r.passed ? 0 : 1;
  } catch (const Error& e) {
    // a failed precondition of the mathematics is a verdict, not an input error
    const bool verdict = e.kind() == ErrorKind::TimeSliceViolated || e.kind() == ErrorKind::UncertifiedReflectiveData;
    Json err{{"error", to_string(e.kind())}, {"message", e.what()}};
    if (verdict) {
      try {
        emit(o, err, false);
      } catch (const Error&) {
      }
      return 1;
    }
    std::cerr << "aqft-kit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "aqft-kit: " << e.what() << "\n";
    return 2;
  }
}
