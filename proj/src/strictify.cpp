#include "aqft/strictify.hpp"

#include "aqft/errors.hpp"

namespace aqft {

StrictificationResult strictify_reflective(const AqftModel& model, const ReflectiveData& data,
                                           const SampleConfig& cfg) {
  Certificate cert = certify_reflective(data, cfg);
  if (!cert.verified) {
    std::string why;
    for (const auto& v : cert.report.verdicts)
      if (!v.passed) {
        why = v.name + (v.witness ? " (witness " + *v.witness + ")" : std::string());
        break;
      }
    throw Error(ErrorKind::UncertifiedReflectiveData, cert.status + ": " + why);
  }
  if (!same_category(model.base.cat, data.base.cat))
    throw Error(ErrorKind::ShapeMismatch, "model " + model.name + " does not live on the base of the reflection");

  StrictificationResult res;
  res.input = model;
  res.output = pullback_aqft(data.adj.left, data.base.rel, pullback_aqft(data.adj.right, data.localized.rel, model));
  res.output.name = "L*ι*(" + model.name + ")";
  res.input_verdict = time_slice_verdict(model, data.w, cfg);
  res.output_verdict = time_slice_verdict(res.output, data.w, cfg);

  Rng rng(cfg.seed ^ 0x57ULL);
  for (const auto& m : objects_to_check(*data.base.cat, rng, cfg, res.unit_coverage)) {
    auto eta = data.adj.unit.component(m);
    if (!eta) throw Error(ErrorKind::UncertifiedReflectiveData, "unit has no component at " + m.id);
    DgAlgebraMap map = model.action(*eta);
    QuasiIsoResult qi = is_quasi_iso(map.map);
    bool iso = static_cast<bool>(is_iso_chainmap(map.map));
    res.units.push_back(UnitComponent{m, *eta, std::move(map), std::move(qi), iso});
  }

  Verdict strict{"output strict time-slice", res.output_verdict.kind == TimeSlice::Strict, res.output_verdict.coverage,
                 std::nullopt, res.output_verdict.detail};
  if (res.output_verdict.witness) strict.witness = res.output_verdict.witness->describe();
  res.certificate.add(strict);

  Verdict units{"unit components quasi-iso", true, res.unit_coverage, std::nullopt, {}};
  for (const auto& u : res.units)
    if (!u.quasi_iso) {
      if (units.passed) units.witness = u.object.id + " (" + u.quasi_iso.detail + ")";
      units.passed = false;
      units.detail += (units.detail.empty() ? "" : ", ") + u.object.id;
    }
  if (!units.passed) units.detail = "non-quasi-iso at: " + units.detail;
  res.certificate.add(units);

  const bool homotopy = res.input_verdict.kind != TimeSlice::Neither;
  Verdict cor{"homotopy time-slice implies quasi-iso units", !homotopy || units.passed, res.unit_coverage,
              std::nullopt, {}};
  cor.detail = std::string("input time-slice: ") + to_string(res.input_verdict.kind);
  res.certificate.add(cor);
  return res;
}

Verdict check_idempotence(const StrictificationResult& result, const ReflectiveData& data, const SampleConfig& cfg) {
  Verdict v{"idempotence up to isomorphism", true, {}, std::nullopt, {}};
  Rng rng(cfg.seed ^ 0x1dULL);
  const Functor& l = data.adj.left;
  const Functor& iota = data.adj.right;
  for (const auto& m : objects_to_check(*data.base.cat, rng, cfg, v.coverage)) {
    Object lm = l(m);
    auto eps = data.adj.counit.component(lm);  // ε_{LM} : LιLM -> LM
    if (!eps) {
      v.passed = false;
      v.witness = m.id + ": no counit component";
      return v;
    }
    DgAlgebraMap map = result.input.action(iota(*eps));
    const bool iso = static_cast<bool>(is_iso_chainmap(map.map));
    const bool ends = map.source->complex() == result.input.algebra(iota(l(iota(lm))))->complex() &&
                      map.target->complex() == result.output.algebra(m)->complex();
    if (!iso || !ends) {
      v.passed = false;
      v.witness = m.id;
      v.detail = iso ? "endpoints differ" : "A(ι ε) is not invertible";
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// RCE

ZigZag rce_loop(const Category& rce) {
  Morphism ip = rce.parse_morphism("i_+"), jp = rce.parse_morphism("j_+");
  Morphism jm = rce.parse_morphism("j_-"), im = rce.parse_morphism("i_-");
  return ZigZag{ip.tgt,
                {{ip, Direction::Backward}, {jp, Direction::Forward}, {jm, Direction::Backward}, {im, Direction::Forward}}};
}

namespace {

std::map<int, Matrix> multiply(const std::map<int, Matrix>& a, const std::map<int, Matrix>& b) {
  std::map<int, Matrix> c;
  for (const auto& [n, m] : a) c.emplace(n, m * b.at(n));
  return c;
}

}  // namespace

std::map<int, Matrix> RceAction::power(long n) const {
  std::map<int, Matrix> base;
  std::map<int, Matrix> acc;
  for (const auto& [d, g] : generator) {
    acc.emplace(d, Matrix::identity(g.rows()));
    if (n >= 0) {
      base.emplace(d, g);
    } else {
      auto inv = inverse(g);
      if (!inv) throw Error(ErrorKind::TimeSliceViolated, "RCE generator is not invertible in degree " + std::to_string(d));
      base.emplace(d, *inv);
    }
  }
  for (long i = 0; i < (n >= 0 ? n : -n); ++i) acc = multiply(acc, base);
  return acc;
}

Verdict RceAction::group_law(long bound) const {
  Verdict v{"group law", true, {false, 0}, std::nullopt, {}};
  std::map<long, std::map<int, Matrix>> powers;
  for (long n = -2 * bound; n <= 2 * bound; ++n) powers.emplace(n, power(n));
  for (const auto& [d, g] : generator)
    if (!(powers.at(0).at(d) == Matrix::identity(g.rows()))) {
      v.passed = false;
      v.witness = "action(0) != id in degree " + std::to_string(d);
      return v;
    }
  for (long m = -bound; m <= bound; ++m)
    for (long n = -bound; n <= bound; ++n) {
      ++v.coverage.checked;
      if (!(powers.at(m + n) == multiply(powers.at(m), powers.at(n)))) {
        v.passed = false;
        v.witness = "m = " + std::to_string(m) + ", n = " + std::to_string(n);
        return v;
      }
    }
  return v;
}

RceAction rce_action(const AqftModel& model, RceMode mode) {
  const Category& cat = *model.base.cat;
  MorphismSet w = MorphismSet::all(model.base.cat);
  TimeSliceResult ts = time_slice_verdict(model, w);
  if (mode == RceMode::Strict && ts.kind != TimeSlice::Strict)
    throw Error(ErrorKind::TimeSliceViolated, "strict RCE needs strict time-slice; " + ts.detail);
  if (ts.kind == TimeSlice::Neither)
    throw Error(ErrorKind::TimeSliceViolated, "homology RCE needs homotopy time-slice; " + ts.detail);

  ZigZag loop = rce_loop(cat);
  RceAction out;
  out.mode = mode;
  const ChainComplex am = model.algebra(loop.source)->complex();
  if (mode == RceMode::Strict) {
    ChainMap g = zigzag_action(model, loop, w);
    for (int n : am.support()) out.generator.emplace(n, g.component(n));
    return out;
  }
  auto h = [&](const Morphism& f, int n) { return induced_map(model.action(f).map, n); };
  auto h_inv = [&](const Morphism& f, int n) {
    auto inv = inverse(h(f, n));
    if (!inv) throw Error(ErrorKind::TimeSliceViolated, "H(A(" + f.id + ")) is not invertible");
    return *inv;
  };
  const Morphism& ip = loop.steps[0].morphism;
  const Morphism& jp = loop.steps[1].morphism;
  const Morphism& jm = loop.steps[2].morphism;
  const Morphism& im = loop.steps[3].morphism;
  for (const auto& [n, dim] : homology(am)) {
    if (dim == 0) continue;
    out.generator.emplace(n, h(im, n) * h_inv(jm, n) * h(jp, n) * h_inv(ip, n));
  }
  return out;
}

Verdict rce_modes_agree(const AqftModel& model) {
  Verdict v{"homology of strict action", true, {}, std::nullopt, {}};
  RceAction strict = rce_action(model, RceMode::Strict);
  RceAction hom = rce_action(model, RceMode::Homology);
  ZigZag loop = rce_loop(*model.base.cat);
  const ChainComplex am = model.algebra(loop.source)->complex();
  ChainMap g(am, am, strict.generator);
  for (const auto& [n, dim] : homology(am)) {
    if (dim == 0) continue;
    ++v.coverage.checked;
    auto it = hom.generator.find(n);
    if (it == hom.generator.end() || !(induced_map(g, n) == it->second)) {
      v.passed = false;
      v.witness = "degree " + std::to_string(n);
      return v;
    }
  }
  return v;
}

}  // namespace aqft
